#include "fpnp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fpnp/errors.hpp"

namespace fpnp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_double(std::string_view s, int line) {
  if (s == "inf") return INFINITY;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + std::string(s) + "'", line);
  }
  return v;
}

template <class Int>
Int to_integer(std::string_view s, int line) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("expected an integer, got '" + std::string(s) + "'", line);
  }
  return v;
}

void require(bool ok, const std::string& what, int line) {
  if (!ok) throw ConfigError(what, line);
}

std::vector<double> to_list(std::string_view s, int line) {
  std::vector<double> out;
  for (auto w : words(s)) out.push_back(to_double(w, line));
  require(!out.empty(), "empty list", line);
  return out;
}

std::vector<Bump> to_bumps(std::string_view s, int line) {
  std::vector<Bump> out;
  for (auto part : split(s, ';')) {
    const auto w = words(part);
    require(w.size() >= 2 && w.size() <= 5,
            "component needs 'amplitude width [center...]', got '" + std::string(part) + "'", line);
    Bump b;
    b.amplitude = to_double(w[0], line);
    b.width = to_double(w[1], line);
    require(b.amplitude > 0.0 && b.width > 0.0, "component amplitude and width must be positive",
            line);
    for (std::size_t i = 2; i < w.size(); ++i) b.center.push_back(to_double(w[i], line));
    out.push_back(std::move(b));
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : " ") + format_number(v);
  return out;
}

std::string bumps_text(const std::vector<Bump>& bumps) {
  std::string out;
  for (const auto& b : bumps) {
    if (!out.empty()) out += "; ";
    out += format_number(b.amplitude) + " " + format_number(b.width);
    for (double c : b.center) out += " " + format_number(c);
  }
  return out;
}

struct Key {
  const char* name;
  std::function<void(RunConfig&, std::string_view, int)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"grid.d",
       [](RunConfig& c, std::string_view v, int line) {
         c.grid.d = to_integer<int>(v, line);
         require(c.grid.d >= 1 && c.grid.d <= 3, "grid.d must be 1, 2 or 3", line);
       },
       [](const RunConfig& c) { return std::to_string(c.grid.d); }},
      {"grid.n",
       [](RunConfig& c, std::string_view v, int line) {
         c.grid.n = to_integer<int>(v, line);
         require(c.grid.n >= 8 && c.grid.n % 2 == 0, "grid.n must be even and >= 8", line);
       },
       [](const RunConfig& c) { return std::to_string(c.grid.n); }},
      {"grid.half_length",
       [](RunConfig& c, std::string_view v, int line) {
         c.grid.half_length = to_double(v, line);
         require(c.grid.half_length > 0.0, "grid.half_length must be positive", line);
       },
       [](const RunConfig& c) { return format_number(c.grid.half_length); }},
      {"exponents.alpha",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.exps.alpha = to_double(v, line);
         require(c.solver.exps.alpha > 0.0 && c.solver.exps.alpha < 2.0,
                 "fractional orders must satisfy 0<alpha,beta<2", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.exps.alpha); }},
      {"exponents.beta",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.exps.beta = to_double(v, line);
         require(c.solver.exps.beta > 0.0 && c.solver.exps.beta < 2.0,
                 "fractional orders must satisfy 0<alpha,beta<2", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.exps.beta); }},
      {"init.family",
       [](RunConfig& c, std::string_view v, int line) {
         if (v == "gaussian_mixture") {
           c.init.family = InitialFamily::GaussianMixture;
         } else if (v == "band_limited_positive") {
           c.init.family = InitialFamily::BandLimitedPositive;
         } else {
           throw ConfigError(
               "init.family must be gaussian_mixture or band_limited_positive, got '" +
                   std::string(v) + "'",
               line);
         }
       },
       [](const RunConfig& c) {
         return std::string(c.init.family == InitialFamily::GaussianMixture
                                ? "gaussian_mixture"
                                : "band_limited_positive");
       }},
      {"init.u", [](RunConfig& c, std::string_view v, int line) { c.init.u = to_bumps(v, line); },
       [](const RunConfig& c) { return bumps_text(c.init.u); }},
      {"init.v", [](RunConfig& c, std::string_view v, int line) { c.init.v = to_bumps(v, line); },
       [](const RunConfig& c) { return bumps_text(c.init.v); }},
      {"init.seed",
       [](RunConfig& c, std::string_view v, int line) {
         c.init.seed = to_integer<std::uint64_t>(v, line);
       },
       [](const RunConfig& c) { return std::to_string(c.init.seed); }},
      {"init.modes",
       [](RunConfig& c, std::string_view v, int line) {
         c.init.modes = to_integer<int>(v, line);
         require(c.init.modes >= 1, "init.modes must be >= 1", line);
       },
       [](const RunConfig& c) { return std::to_string(c.init.modes); }},
      {"init.ripple",
       [](RunConfig& c, std::string_view v, int line) {
         c.init.ripple = to_double(v, line);
         require(c.init.ripple >= 0.0 && c.init.ripple < 1.0, "init.ripple must lie in [0, 1)",
                 line);
       },
       [](const RunConfig& c) { return format_number(c.init.ripple); }},
      {"solver.dt",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.dt = to_double(v, line);
         require(c.solver.dt > 0.0, "solver.dt must be positive", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.dt); }},
      {"solver.t_end",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.t_end = to_double(v, line);
         require(c.solver.t_end >= 0.0, "solver.t_end must be >= 0", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.t_end); }},
      {"solver.dealias_fraction",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.dealias_fraction = to_double(v, line);
         require(c.solver.dealias_fraction > 0.0 && c.solver.dealias_fraction <= 1.0,
                 "solver.dealias_fraction must lie in (0, 1]", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.dealias_fraction); }},
      {"solver.output_stride",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.output_stride = to_integer<int>(v, line);
         require(c.solver.output_stride >= 1, "solver.output_stride must be >= 1", line);
       },
       [](const RunConfig& c) { return std::to_string(c.solver.output_stride); }},
      {"solver.pos_tol",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.pos_tol = to_double(v, line);
         require(c.solver.pos_tol > 0.0, "solver.pos_tol must be positive", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.pos_tol); }},
      {"solver.tail_tol",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.tail_tol = to_double(v, line);
         require(c.solver.tail_tol > 0.0, "solver.tail_tol must be positive", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.tail_tol); }},
      {"solver.boundary_tol",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.boundary_tol = to_double(v, line);
         require(c.solver.boundary_tol > 0.0, "solver.boundary_tol must be positive", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.boundary_tol); }},
      {"solver.cfl",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.cfl = to_double(v, line);
         require(c.solver.cfl > 0.0, "solver.cfl must be positive", line);
       },
       [](const RunConfig& c) { return format_number(c.solver.cfl); }},
      {"solver.checkpoint_stride",
       [](RunConfig& c, std::string_view v, int line) {
         c.solver.checkpoint_stride = to_integer<int>(v, line);
         require(c.solver.checkpoint_stride >= 0, "solver.checkpoint_stride must be >= 0", line);
       },
       [](const RunConfig& c) { return std::to_string(c.solver.checkpoint_stride); }},
      {"diagnostics.p_list",
       [](RunConfig& c, std::string_view v, int line) {
         c.diagnostics.p_list = to_list(v, line);
         for (double p : c.diagnostics.p_list) {
           require(p >= 1.0 && std::isfinite(p), "diagnostics.p_list entries must be finite and >= 1",
                   line);
         }
       },
       [](const RunConfig& c) { return join(c.diagnostics.p_list); }},
      {"diagnostics.s_list",
       [](RunConfig& c, std::string_view v, int line) {
         c.diagnostics.s_list = to_list(v, line);
         for (double s : c.diagnostics.s_list) {
           require(s >= 0.0 && std::isfinite(s), "diagnostics.s_list entries must be finite and >= 0",
                   line);
         }
       },
       [](const RunConfig& c) { return join(c.diagnostics.s_list); }},
      {"diagnostics.fit_window",
       [](RunConfig& c, std::string_view v, int line) {
         if (v == "auto") {
           c.fit_window.reset();
           return;
         }
         try {
           c.fit_window = parse_window(v);
         } catch (const ConfigError& e) {
           throw ConfigError(e.what(), line);
         }
       },
       [](const RunConfig& c) {
         return c.fit_window ? format_number(c.fit_window->t0) + ":" + format_number(c.fit_window->t1)
                             : std::string("auto");
       }},
      {"output.dir",
       [](RunConfig& c, std::string_view v, int line) {
         require(!v.empty(), "output.dir must not be empty", line);
         c.output_dir = std::string(v);
       },
       [](const RunConfig& c) { return c.output_dir; }},
  };
  return table;
}

}  // namespace

RunConfig::RunConfig() {
  solver.t_end = 1.0;
  init.u = {{0.5, 2.0, {0.0}}};
  init.v = {{0.5, 2.0, {0.0}}};
}

FitWindow parse_window(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError("fit window must be 't0:t1', got '" + std::string(text) + "'");
  FitWindow w{to_double(parts[0], 0), to_double(parts[1], 0)};
  if (!(w.t0 >= 0.0 && w.t1 > w.t0 && std::isfinite(w.t1))) {
    throw ConfigError("fit window needs 0 <= t0 < t1");
  }
  return w;
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);
    const auto& table = keys();
    auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return key == k.name; });
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'", line_no);
    if (!seen.emplace(key, line_no).second) {
      throw ConfigError("duplicate key '" + key + "'", line_no);
    }
    it->set(config, value, line_no);
  }

  // Omitted centers (and the default components) sit at the origin.
  const auto d = static_cast<std::size_t>(config.grid.d);
  for (auto [bumps, key] : {std::pair{&config.init.u, "init.u"}, std::pair{&config.init.v, "init.v"}}) {
    for (auto& b : *bumps) {
      if (b.center.empty() || !seen.count(key)) b.center.assign(d, 0.0);
    }
  }

  auto line_of = [&](std::initializer_list<const char*> candidates) {
    for (const char* k : candidates) {
      if (auto it = seen.find(k); it != seen.end()) return it->second;
    }
    return 0;
  };
  try {
    validate(config.grid);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what(), line_of({"grid.n", "grid.d"}));
  }
  try {
    validate(config.init, config.grid.d);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what(), line_of({"init.u", "init.v", "init.family"}));
  }
  validate(config);
  return config;
}

void validate(const RunConfig& config) {
  try {
    validate(config.grid);
    validate(config.solver.exps);
    validate(config.solver);
    validate(config.init, config.grid.d);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (config.output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& k : keys()) out += std::string(k.name) + " = " + k.get(config) + "\n";
  return out;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace fpnp
