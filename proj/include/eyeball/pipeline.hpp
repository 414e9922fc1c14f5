#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eyeball/coverage.hpp"
#include "eyeball/lpm.hpp"
#include "eyeball/model.hpp"
#include "eyeball/plan.hpp"
#include "eyeball/probe_selection.hpp"

namespace eyeball {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoMatchingTraceroutes = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Defaults are the conventional file names in the working directory.
struct InputPaths {
  std::filesystem::path population = "population.csv";
  std::filesystem::path countryUsers = "country_users.csv";
  std::filesystem::path probes = "probes.json";
  std::filesystem::path traceroutes = "traceroutes.ndjson";
  std::filesystem::path prefixTable = "prefix2as.csv";
  std::filesystem::path geoTable = "geo.csv";
  std::filesystem::path capitals = "capitals.csv";
};

struct RunConfig {
  InputPaths inputs;
  /// Raw --country value; validated when a command runs.
  std::string country;
  bool allCountries = false;
  SelectionThresholds thresholds;
  std::filesystem::path outputDirectory = ".";
  std::string httpBaseUrl;
  double rateLimit = 4.0;
  /// Name of the environment variable holding the API key.
  std::string credentialEnv;
  std::vector<std::uint64_t> measurementIds;
};

/// Reads a `key = value` file (`#` starts a comment). Relative paths are
/// resolved against the file's directory. Throws ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key = value` setting; `baseDir` anchors relative paths.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& baseDir = {});

struct CountryAnalysis {
  ProbeSelection selection;
  std::vector<PlanTask> plan;
  std::size_t matchedTraceroutes = 0;
  EyeballMatrix matrix;
  MetricsSummary metrics;
};

/// Selects probes, derives the measurement plan, keeps the traceroutes that
/// belong to it and turns them into the matrix and its metrics. `probes`
/// should already be restricted to the country. Returns nullopt when no
/// traceroute matches the plan.
std::optional<CountryAnalysis> analyze_country(const EyeballSet& eyeballs, std::span<const Probe> probes,
                                               std::span<const Traceroute> traceroutes, const PrefixTable& prefixes,
                                               const GeoTable& geo, std::ostream& diag, std::int64_t generatedAt = 0);

// Subcommands. Each returns a process exit code and writes diagnostics to
// `diag`. Inputs are read and validated before any output file is written.

int cmd_coverage(const RunConfig& config, std::ostream& diag);
int cmd_plan(const RunConfig& config, std::ostream& diag);
int cmd_analyze(const RunConfig& config, std::ostream& diag);
int cmd_render(const RunConfig& config, std::ostream& diag);
int cmd_fetch(const RunConfig& config, std::ostream& diag);

}  // namespace eyeball
