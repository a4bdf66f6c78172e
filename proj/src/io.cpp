#include "fpnp/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fpnp/errors.hpp"

namespace fpnp {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

std::string checkpoint_stem(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "checkpoint_%04d", index);
  return buf;
}

std::uint64_t byteswap64(std::uint64_t x) {
  x = ((x & 0x00000000FFFFFFFFULL) << 32) | ((x & 0xFFFFFFFF00000000ULL) >> 32);
  x = ((x & 0x0000FFFF0000FFFFULL) << 16) | ((x & 0xFFFF0000FFFF0000ULL) >> 16);
  return ((x & 0x00FF00FF00FF00FFULL) << 8) | ((x & 0xFF00FF00FF00FF00ULL) >> 8);
}

std::string encode_le(const Eigen::ArrayXd& values) {
  std::string bytes(static_cast<std::size_t>(values.size()) * 8, '\0');
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(values[i]);
    if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
    std::memcpy(bytes.data() + 8 * i, &bits, 8);
  }
  return bytes;
}

Eigen::ArrayXd decode_le(const std::string& bytes, std::size_t expected, const fs::path& path) {
  if (bytes.size() != expected * 8) {
    throw ConfigError("array file '" + path.string() + "' has " + std::to_string(bytes.size()) +
                      " bytes, expected " + std::to_string(expected * 8));
  }
  Eigen::ArrayXd values(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, bytes.data() + 8 * i, 8);
    if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
    values[static_cast<Eigen::Index>(i)] = std::bit_cast<double>(bits);
  }
  return values;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string version_string() { return "fpnp 1.0.0"; }

void write_series_csv(const fs::path& path, const NormSeries& series) {
  std::string out;
  for (std::size_t j = 0; j < series.columns.size(); ++j) {
    out += (j ? "," : "") + series.columns[j];
  }
  out += "\n";
  for (const auto& row : series.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + format_number(row[j]);
    out += "\n";
  }
  write_file(path, out);
}

NormSeries read_series_csv(const fs::path& path) {
  const std::string text = read_file(path);
  NormSeries series;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (series.columns.empty()) {
      series.columns = cells;
      if (series.columns.empty() || series.columns.front() != "t") {
        throw ConfigError("series header must start with 't'", line_no);
      }
      continue;
    }
    if (cells.size() != series.columns.size()) {
      throw ConfigError("row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(series.columns.size()),
                        line_no);
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0.0;
      if (c == "inf") {
        v = INFINITY;
      } else if (c == "nan") {
        v = NAN;
      } else {
        auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
        if (ec != std::errc() || ptr != c.data() + c.size()) {
          throw ConfigError("bad number '" + c + "' in series", line_no);
        }
      }
      row.push_back(v);
    }
    series.rows.push_back(std::move(row));
  }
  if (series.columns.empty()) throw ConfigError("series file '" + path.string() + "' is empty");
  return series;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string file_checksum(const fs::path& path) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(read_file(path))));
  return buf;
}

std::vector<std::string> write_checkpoint(const fs::path& dir, const SimState& state,
                                          const FracExponents& exps, int index) {
  const std::string stem = checkpoint_stem(index);
  const std::string u_file = stem + "_u.f64";
  const std::string v_file = stem + "_v.f64";
  write_file(dir / u_file, encode_le(state.u.values));
  write_file(dir / v_file, encode_le(state.v.values));
  json sidecar = {
      {"schema_version", kSchemaVersion},
      {"index", index},
      {"t", state.t},
      {"grid", {{"d", state.u.grid.d}, {"n", state.u.grid.n}, {"half_length", state.u.grid.half_length}}},
      {"exponents", {{"alpha", exps.alpha}, {"beta", exps.beta}}},
      {"normalization", "point samples; Fourier coefficients are (1/n^d) sum f e^{-ikx}, coeff(0) = mean"},
      {"layout", "row-major, axis 0 slowest, x_i = -L + 2L i / n"},
      {"dtype", "float64 little-endian"},
      {"fields", {{"u", u_file}, {"v", v_file}}},
  };
  write_json(dir / (stem + ".json"), sidecar);
  return {stem + ".json", u_file, v_file};
}

SimState read_checkpoint(const fs::path& sidecar_path) {
  const json sidecar = read_json(sidecar_path);
  try {
    const GridSpec grid = make_grid(sidecar.at("grid").at("d").get<int>(),
                                    sidecar.at("grid").at("n").get<int>(),
                                    sidecar.at("grid").at("half_length").get<double>());
    const fs::path dir = sidecar_path.parent_path();
    const auto u_path = dir / sidecar.at("fields").at("u").get<std::string>();
    const auto v_path = dir / sidecar.at("fields").at("v").get<std::string>();
    RealField u{grid, decode_le(read_file(u_path), grid.size(), u_path)};
    RealField v{grid, decode_le(read_file(v_path), grid.size(), v_path)};
    return make_state(sidecar.at("t").get<double>(), std::move(u), std::move(v));
  } catch (const json::exception& e) {
    throw ConfigError("malformed checkpoint sidecar '" + sidecar_path.string() + "': " + e.what());
  }
}

std::vector<fs::path> list_checkpoints(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) throw ConfigError("run directory '" + dir.string() + "' not found");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("checkpoint_", 0) == 0 && entry.path().extension() == ".json") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

json to_json(const DecayFit& fit) {
  return {{"schema_version", kSchemaVersion},
          {"column", fit.column},
          {"window", {fit.window.t0, fit.window.t1}},
          {"exponent", fit.exponent},
          {"amplitude", fit.amplitude},
          {"r_squared", fit.r_squared},
          {"samples", fit.samples}};
}

json to_json(const ConditionReport& r) {
  return {{"schema_version", kSchemaVersion},
          {"d", r.d},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"cond_22", r.dimension_bound},
          {"cond_23", r.ratio_bound},
          {"cond_24", r.gamma_bound},
          {"cond_25", r.closeness},
          {"cond_26", r.ratio_floor},
          {"gamma_value", number_or_null(r.gamma)},
          {"eligible", r.eligible},
          {"notes", r.notes}};
}

json to_json(const MonitorSummary& m) {
  return {{"max_tail_fraction", m.max_tail_fraction},
          {"max_boundary_fraction", m.max_boundary_fraction},
          {"min_relative_density", m.min_relative_density},
          {"max_mass_drift", m.max_mass_drift},
          {"min_dt", m.min_dt},
          {"max_dt", m.max_dt}};
}

json to_json(const SuiteReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"id", r.id},
                       {"inequality", r.inequality},
                       {"inputs", r.inputs},
                       {"lhs", number_or_null(r.lhs)},
                       {"rhs", number_or_null(r.rhs)},
                       {"ratio", number_or_null(r.ratio)},
                       {"verdict", r.holds ? "holds" : "counterexample"}});
  }
  json calibrations = json::array();
  for (const auto& c : report.calibrations) {
    calibrations.push_back({{"d", c.d},
                            {"a", c.a},
                            {"calibrated", c.calibrated},
                            {"standard", c.standard},
                            {"printed_formula", number_or_null(c.printed)},
                            {"relative_mismatch", c.relative_mismatch}});
  }
  json metrics = json::object();
  for (const auto& [k, v] : report.metrics) metrics[k] = number_or_null(v);
  return {{"schema_version", kSchemaVersion},
          {"suite", report.suite},
          {"seed", report.seed},
          {"checks", report.records.size()},
          {"counterexamples", report.counterexamples()},
          {"metrics", metrics},
          {"kernel_constants", calibrations},
          {"records", records}};
}

json to_json(const std::vector<RatePrediction>& predictions) {
  json out = json::array();
  for (const auto& p : predictions) {
    out.push_back({{"tag", p.tag}, {"parameter", number_or_null(p.parameter)}, {"exponent", p.exponent}});
  }
  return out;
}

void write_json(const fs::path& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

json make_manifest(const fs::path& dir, const RunConfig& config, const SimulationResult& result,
                   const std::vector<std::string>& files) {
  json listed = json::array();
  for (const auto& f : files) {
    listed.push_back({{"path", f},
                      {"bytes", fs::file_size(dir / f)},
                      {"checksum", file_checksum(dir / f)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"version", version_string()},
          {"config", serialize_config(config)},
          {"steps", result.steps},
          {"final_time", result.final_state.t},
          {"saturation_time", number_or_null(result.series.saturation_time)},
          {"monitors", to_json(result.monitors)},
          {"files", listed}};
}

}  // namespace fpnp
