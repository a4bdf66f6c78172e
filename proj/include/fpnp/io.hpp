#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "fpnp/config.hpp"
#include "fpnp/diagnostics.hpp"
#include "fpnp/inequality_lab.hpp"
#include "fpnp/simulation.hpp"

namespace fpnp {

/// Version tag of every JSON document written by this library.
inline constexpr int kSchemaVersion = 1;

std::string version_string();

/// Header line, then one row per record; numbers use the shortest
/// round-trip form so the file reproduces the doubles exactly.
void write_series_csv(const std::filesystem::path& path, const NormSeries& series);

/// Throws ConfigError for unreadable files, ragged rows or bad numbers.
NormSeries read_series_csv(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
/// "fnv1a64:<16 hex digits>" of the file contents.
std::string file_checksum(const std::filesystem::path& path);

/// Writes checkpoint_<index>.json plus checkpoint_<index>_u.f64 and _v.f64
/// (raw little-endian doubles, row-major, axis 0 slowest) into `dir`.
/// Returns the file names written.
std::vector<std::string> write_checkpoint(const std::filesystem::path& dir, const SimState& state,
                                          const FracExponents& exps, int index);

/// Reads a sidecar and its arrays; the potential is recomputed.
SimState read_checkpoint(const std::filesystem::path& sidecar);

/// Sidecars in `dir`, ordered by index.
std::vector<std::filesystem::path> list_checkpoints(const std::filesystem::path& dir);

nlohmann::json to_json(const DecayFit& fit);
nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const MonitorSummary& monitors);
nlohmann::json to_json(const SuiteReport& report);
nlohmann::json to_json(const std::vector<RatePrediction>& predictions);

/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

/// Run manifest: config echo, version, worst monitor values, the saturation
/// cut and every listed file (relative to `dir`) with its checksum.
nlohmann::json make_manifest(const std::filesystem::path& dir, const RunConfig& config,
                             const SimulationResult& result,
                             const std::vector<std::string>& files);

}  // namespace fpnp
