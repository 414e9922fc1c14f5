#include "eyeball/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "eyeball/http_client.hpp"
#include "eyeball/ingest.hpp"
#include "eyeball/matrix.hpp"
#include "eyeball/output.hpp"
#include "eyeball/path_analysis.hpp"
#include "eyeball/plan.hpp"
#include "eyeball/probe_selection.hpp"
#include "eyeball/render.hpp"

namespace eyeball {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_threshold(const std::string& key, const std::string& value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": not a number: '" + value + "'");
  }
  return v;
}

fs::path resolve(const fs::path& baseDir, const std::string& value) {
  fs::path p(value);
  return p.is_relative() && !baseDir.empty() ? baseDir / p : p;
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& value, const fs::path& baseDir) {
  if (key == "population") {
    c.inputs.population = resolve(baseDir, value);
  } else if (key == "country_users") {
    c.inputs.countryUsers = resolve(baseDir, value);
  } else if (key == "probes") {
    c.inputs.probes = resolve(baseDir, value);
  } else if (key == "traceroutes") {
    c.inputs.traceroutes = resolve(baseDir, value);
  } else if (key == "prefix2as") {
    c.inputs.prefixTable = resolve(baseDir, value);
  } else if (key == "geo") {
    c.inputs.geoTable = resolve(baseDir, value);
  } else if (key == "capitals") {
    c.inputs.capitals = resolve(baseDir, value);
  } else if (key == "out") {
    c.outputDirectory = resolve(baseDir, value);
  } else if (key == "country") {
    if (value == "all") {
      c.allCountries = true;
    } else {
      c.country = value;
    }
  } else if (key == "cap") {
    c.thresholds.cumulativeCap = parse_threshold(key, value);
  } else if (key == "floor") {
    c.thresholds.perAsFloor = parse_threshold(key, value);
  } else if (key == "http_base_url") {
    c.httpBaseUrl = value;
  } else if (key == "rate_limit") {
    c.rateLimit = parse_threshold(key, value);
  } else if (key == "credential_env") {
    c.credentialEnv = value;
  } else if (key == "measurement_ids") {
    c.measurementIds.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      std::uint64_t id = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), id);
      if (ec != std::errc{} || ptr != item.data() + item.size()) throw ConfigError("measurement_ids: bad id '" + item + "'");
      c.measurementIds.push_back(id);
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  RunConfig config;
  const fs::path baseDir = path.parent_path();
  for (auto* p : {&config.inputs.population, &config.inputs.countryUsers, &config.inputs.probes,
                  &config.inputs.traceroutes, &config.inputs.prefixTable, &config.inputs.geoTable,
                  &config.inputs.capitals}) {
    *p = resolve(baseDir, p->string());
  }
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key = value");
    }
    try {
      apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), baseDir);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

namespace {

/// Input problem that maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path, const char* role) {
  if (path.empty()) throw InputError(std::string("no ") + role + " file configured");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string("cannot read ") + role + " file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Parse>
auto parse_file(const fs::path& path, const char* role, std::ostream& diag, Parse&& parse) {
  const auto text = read_file(path, role);
  try {
    auto collected = parse(text);
    for (const auto& w : collected.warnings) diag << "warning: " << path.string() << ": " << w << "\n";
    if (!collected.errors.empty()) {
      for (const auto& e : collected.errors) diag << "error: " << path.string() << ": " << e.message() << "\n";
      throw InputError(std::to_string(collected.errors.size()) + " malformed record(s) in " + role + " file " +
                       path.string());
    }
    return std::move(collected.values);
  } catch (const IngestError& e) {
    throw InputError(std::string(role) + " file " + path.string() + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out) throw InputError("failed writing " + path.string());
}

void validate_config(const RunConfig& c) {
  const auto& t = c.thresholds;
  if (!(t.cumulativeCap > 0.0 && t.cumulativeCap <= 1.0)) throw InputError("cap must lie in (0,1]");
  if (!(t.perAsFloor > 0.0 && t.perAsFloor <= 1.0)) throw InputError("floor must lie in (0,1]");
  if (!c.allCountries && c.country.empty()) throw InputError("no country selected; pass --country CC or --all");
  if (!c.allCountries && !CountryCode::parse(c.country)) throw InputError("invalid country code '" + c.country + "'");
  if (fs::exists(c.outputDirectory) && !fs::is_directory(c.outputDirectory)) {
    throw InputError("output path " + c.outputDirectory.string() + " is not a directory");
  }
}

void prepare_output(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.outputDirectory, ec);
  if (ec || !fs::is_directory(c.outputDirectory)) {
    throw InputError("cannot create output directory " + c.outputDirectory.string());
  }
}

fs::path out_file(const RunConfig& c, const std::string& name) { return c.outputDirectory / name; }

struct CoverageInputs {
  std::vector<PopulationEstimateRow> population;
  CountryUsers users;
  Capitals capitals;
  std::vector<Probe> probes;
};

CoverageInputs load_coverage_inputs(const RunConfig& c, std::ostream& diag) {
  CoverageInputs in;
  in.population = parse_file(c.inputs.population, "population", diag, parse_population_estimates_collect);
  in.users = parse_file(c.inputs.countryUsers, "country users", diag, parse_country_users_collect);
  in.capitals = parse_file(c.inputs.capitals, "capitals", diag, [](std::string_view t) {
    return Collected<Capitals>{parse_capitals(t), {}, {}};
  });
  in.probes = parse_file(c.inputs.probes, "probes", diag, parse_probe_inventory_collect);
  return in;
}

/// Countries to process; an explicitly requested country must be fully
/// described by the inputs, while --all skips incomplete ones.
std::vector<CountryCode> resolve_countries(const RunConfig& c, const CoverageInputs& in, std::ostream& diag) {
  std::set<CountryCode> present;
  for (const auto& r : in.population) present.insert(r.country);
  if (!c.allCountries) {
    const CountryCode cc(c.country);
    if (!present.count(cc)) throw InputError("unknown country " + cc.str() + ": no population estimates");
    if (!in.users.count(cc)) throw InputError("no internet user count for " + cc.str());
    if (!in.capitals.count(cc)) throw InputError("no capital coordinates for " + cc.str());
    return {cc};
  }
  std::vector<CountryCode> out;
  for (const auto& cc : present) {
    if (!in.users.count(cc) || !in.capitals.count(cc)) {
      diag << "warning: skipping " << cc.str() << ": missing internet users or capital\n";
      continue;
    }
    out.push_back(cc);
  }
  return out;
}

struct CountryState {
  CountryCode country;
  EyeballSet eyeballs;
  std::vector<Probe> probes;
  CoverageReport coverage;
};

CountryState evaluate_country(const RunConfig& c, const CoverageInputs& in, const CountryCode& cc) {
  std::vector<PopulationEstimateRow> rows;
  for (const auto& r : in.population) {
    if (r.country == cc) rows.push_back(r);
  }
  CountryState st;
  st.country = cc;
  st.eyeballs = select_dominant_networks(rows, in.users.at(cc), in.capitals.at(cc), c.thresholds);
  st.probes = probes_in_country(in.probes, cc);
  st.coverage = compute_probe_coverage(st.eyeballs, st.probes);
  return st;
}

template <typename Body>
int guarded(std::ostream& diag, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int cmd_coverage(const RunConfig& config, std::ostream& diag) {
  return guarded(diag, [&] {
    validate_config(config);
    const auto in = load_coverage_inputs(config, diag);
    std::vector<CoverageReport> reports;
    for (const auto& cc : resolve_countries(config, in, diag)) reports.push_back(evaluate_country(config, in, cc).coverage);

    prepare_output(config);
    for (const auto& r : reports) write_file(out_file(config, "coverage_" + r.country.str() + ".json"), coverage_json(r));
    write_file(out_file(config, "coverage_world.csv"), coverage_world_csv(coverage_world_report(reports)));
    return kExitOk;
  });
}

int cmd_plan(const RunConfig& config, std::ostream& diag) {
  return guarded(diag, [&] {
    validate_config(config);
    const auto in = load_coverage_inputs(config, diag);
    struct Out {
      CountryState state;
      ProbeSelection selection;
      std::vector<PlanTask> tasks;
    };
    std::vector<Out> outs;
    for (const auto& cc : resolve_countries(config, in, diag)) {
      Out o{evaluate_country(config, in, cc), {}, {}};
      o.selection = select_probes(o.state.eyeballs, o.state.probes);
      o.tasks = build_plan(o.state.eyeballs, o.selection);
      outs.push_back(std::move(o));
    }
    prepare_output(config);
    for (const auto& o : outs) {
      const auto cc = o.state.country.str();
      write_file(out_file(config, "probes_" + cc + ".json"), probe_selection_json(o.state.eyeballs, o.selection));
      write_file(out_file(config, "plan_" + cc + ".json"), plan_json(o.state.country, o.tasks));
    }
    return kExitOk;
  });
}

std::optional<CountryAnalysis> analyze_country(const EyeballSet& eyeballs, std::span<const Probe> probes,
                                               std::span<const Traceroute> traceroutes, const PrefixTable& prefixes,
                                               const GeoTable& geo, std::ostream& diag, std::int64_t generatedAt) {
  const auto& cc = eyeballs.country();
  CountryAnalysis res;
  res.selection = select_probes(eyeballs, probes);
  res.plan = build_plan(eyeballs, res.selection);
  std::map<std::pair<std::uint64_t, std::uint64_t>, AsPair> taskIndex;
  for (const auto& t : res.plan) {
    taskIndex.emplace(std::make_pair(t.srcProbeId, t.dstProbeId), AsPair{t.srcAsn, t.dstAsn});
  }
  std::set<std::uint64_t> selectedProbes;
  for (const auto& [asn, pair] : res.selection.perAsn) {
    selectedProbes.insert(pair.closest.id);
    selectedProbes.insert(pair.farthest.id);
  }

  std::vector<Traceroute> matched;
  std::vector<AsPair> cellOf;
  for (const auto& tr : traceroutes) {
    if (tr.addressFamily != 4) continue;
    auto it = taskIndex.find({tr.srcProbeId, tr.dstProbeId});
    if (it == taskIndex.end()) {
      if (eyeballs.indexOf(tr.srcAsn) && eyeballs.indexOf(tr.dstAsn) &&
          (!selectedProbes.count(tr.srcProbeId) || !selectedProbes.count(tr.dstProbeId))) {
        diag << "warning: " << cc.str() << ": traceroute " << tr.srcProbeId << " -> " << tr.dstProbeId
             << " uses a probe outside the selection; ignored\n";
      }
      continue;
    }
    Traceroute copy = tr;
    if (copy.srcAsn != it->second.first || copy.dstAsn != it->second.second) {
      diag << "warning: " << cc.str() << ": traceroute " << tr.srcProbeId << " -> " << tr.dstProbeId
           << " AS labels differ from the plan; using the plan\n";
      copy.srcAsn = it->second.first;
      copy.dstAsn = it->second.second;
    }
    if (copy.hops.empty()) {
      diag << "warning: " << cc.str() << ": traceroute " << tr.srcProbeId << " -> " << tr.dstProbeId
           << " has no hops\n";
    }
    matched.push_back(std::move(copy));
    cellOf.push_back(it->second);
  }
  if (matched.empty()) return std::nullopt;
  res.matchedTraceroutes = matched.size();

  const auto verdicts = classify_traceroutes(matched, prefixes, geo, cc);
  std::map<AsPair, std::vector<Evidence>> evidence;
  for (std::size_t i = 0; i < matched.size(); ++i) {
    evidence[cellOf[i]].push_back(
        {{matched[i].srcProbeId, matched[i].dstProbeId, matched[i].timestamp}, verdicts[i].classification});
  }
  VerdictMap cells;
  for (const auto& [pair, ev] : evidence) cells.emplace(pair, classify_pair(ev, true, pair.first, pair.second));

  res.matrix = build_matrix(eyeballs, res.selection, cells, generatedAt);
  res.metrics = compute_metrics(res.matrix);
  return res;
}

int cmd_analyze(const RunConfig& config, std::ostream& diag) {
  return guarded(diag, [&] {
    validate_config(config);
    const auto in = load_coverage_inputs(config, diag);
    const auto traceroutes = parse_file(config.inputs.traceroutes, "traceroutes", diag, parse_traceroute_results_collect);
    const auto prefixes = parse_file(config.inputs.prefixTable, "prefix table", diag, parse_prefix_table_collect);
    const auto geo = parse_file(config.inputs.geoTable, "geo table", diag, parse_geo_table_collect);
    const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();

    std::vector<CountryAnalysis> results;
    for (const auto& cc : resolve_countries(config, in, diag)) {
      const auto st = evaluate_country(config, in, cc);
      auto res = analyze_country(st.eyeballs, st.probes, traceroutes, prefixes, geo, diag, now);
      if (!res) {
        diag << (config.allCountries ? "warning: " : "error: ") << cc.str()
             << ": no traceroute matches the measurement plan\n";
        continue;
      }
      results.push_back(std::move(*res));
    }
    if (results.empty()) return kExitNoMatchingTraceroutes;

    prepare_output(config);
    for (const auto& r : results) {
      const auto& eyeballs = r.matrix.eyeballSet();
      const auto cc = eyeballs.country().str();
      std::string report;
      for (const auto& line : summarize(r.matrix, r.metrics)) report += line + "\n";
      write_file(out_file(config, "matrix_" + cc + ".json"), matrix_json(r.matrix));
      write_file(out_file(config, "matrix_" + cc + ".meta.json"), matrix_meta_json(r.matrix));
      write_file(out_file(config, "metrics_" + cc + ".csv"), metrics_csv(r.metrics));
      write_file(out_file(config, "report_" + cc + ".txt"), report);
      write_file(out_file(config, "matrix_" + cc + ".svg"), render_svg(r.matrix));
      write_file(out_file(config, "probes_" + cc + ".json"), probe_selection_json(eyeballs, r.selection));
    }
    return kExitOk;
  });
}

int cmd_render(const RunConfig& config, std::ostream& diag) {
  return guarded(diag, [&] {
    if (!config.allCountries && config.country.empty()) throw InputError("no country selected; pass --country CC or --all");
    std::vector<fs::path> sources;
    if (config.allCountries) {
      if (fs::is_directory(config.outputDirectory)) {
        for (const auto& entry : fs::directory_iterator(config.outputDirectory)) {
          const auto name = entry.path().filename().string();
          if (name.size() == 14 && name.starts_with("matrix_") && name.ends_with(".json")) sources.push_back(entry.path());
        }
      }
      std::sort(sources.begin(), sources.end());
      if (sources.empty()) throw InputError("no matrix_<CC>.json files in " + config.outputDirectory.string());
    } else {
      if (!CountryCode::parse(config.country)) throw InputError("invalid country code '" + config.country + "'");
      sources.push_back(out_file(config, "matrix_" + config.country + ".json"));
    }
    std::vector<std::pair<fs::path, std::string>> rendered;
    for (const auto& src : sources) {
      try {
        const auto matrix = parse_matrix_json(read_file(src, "matrix"));
        rendered.emplace_back(out_file(config, "matrix_" + matrix.eyeballSet().country().str() + ".svg"),
                              render_svg(matrix));
      } catch (const IngestError& e) {
        throw InputError(src.string() + ": " + e.what());
      }
    }
    for (const auto& [path, svg] : rendered) write_file(path, svg);
    return kExitOk;
  });
}

int cmd_fetch(const RunConfig& config, std::ostream& diag) {
  return guarded(diag, [&] {
    if (config.httpBaseUrl.empty()) throw InputError("http_base_url is not configured");
    if (!(config.rateLimit > 0.0)) throw InputError("rate_limit must be positive");
    std::optional<CountryCode> cc;
    if (!config.allCountries && !config.country.empty()) {
      cc = CountryCode::parse(config.country);
      if (!cc) throw InputError("invalid country code '" + config.country + "'");
    }
    HttpClientOptions options;
    options.requestsPerSecond = config.rateLimit;
    options.credentialEnv = config.credentialEnv;
    MeasurementApiClient client(config.httpBaseUrl, options);

    std::vector<Probe> probes;
    MeasurementFetch results;
    try {
      probes = client.fetchProbeInventory(cc);
      if (!config.measurementIds.empty()) {
        results = client.fetchMeasurementResults(config.measurementIds, probes);
      }
    } catch (const HttpError& e) {
      throw InputError(e.what());
    } catch (const PaginationLoop& e) {
      throw InputError(e.what());
    } catch (const IngestError& e) {
      throw InputError(std::string("remote payload: ") + e.what());
    }
    for (const auto& f : results.failures) {
      diag << "warning: measurement " << f.measurementId << ": " << f.message << "\n";
    }
    if (!config.measurementIds.empty() && results.failures.size() == config.measurementIds.size()) {
      throw InputError("every measurement fetch failed");
    }
    prepare_output(config);
    write_file(out_file(config, "probes.json"), write_probe_inventory(probes));
    if (!config.measurementIds.empty()) {
      write_file(out_file(config, "traceroutes.ndjson"), write_traceroute_results(results.traceroutes));
    }
    diag << "fetched " << probes.size() << " probes and " << results.traceroutes.size() << " traceroutes\n";
    return kExitOk;
  });
}

}  // namespace eyeball
