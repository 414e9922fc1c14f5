#include "eyeball/output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "eyeball/ingest.hpp"

namespace eyeball {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Derived quantities are written at 12 decimals so output does not depend
// on the last bits of a product.
double fixed12(double v) { return std::round(v * 1e12) / 1e12; }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json set_to_json(const EyeballSet& set) {
  ordered_json nets = ordered_json::array();
  for (const auto& n : set.networks()) {
    nets.push_back({{"asn", n.asn.value()}, {"user_fraction", n.userFraction}, {"estimated_users", n.estimatedUsers}});
  }
  return {{"country", set.country().str()},
          {"country_users", set.countryUsers()},
          {"capital", {{"latitude", set.capital().latitude}, {"longitude", set.capital().longitude}}},
          {"covered_fraction", fixed12(set.coveredFraction())},
          {"networks", std::move(nets)}};
}

[[noreturn]] void bad(const std::string& why) { throw IngestError(ParseIssue{IngestErrorKind::RowParse, 0, why}); }

json parse_doc(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IngestError(ParseIssue{IngestErrorKind::JsonSyntax, 0, e.what()});
  }
}

EyeballSet set_from_json(const json& j) {
  try {
    const CountryCode cc(j.at("country").get<std::string>());
    const auto users = j.at("country_users").get<std::uint64_t>();
    const auto& cap = j.at("capital");
    const auto capital = GeoPoint::make(cap.at("latitude").get<double>(), cap.at("longitude").get<double>());
    std::vector<EyeballNetwork> nets;
    for (const auto& n : j.at("networks")) {
      nets.push_back({AsNumber(n.at("asn").get<std::uint64_t>()), cc, n.at("user_fraction").get<double>(),
                      n.at("estimated_users").get<std::uint64_t>()});
    }
    return EyeballSet(cc, users, capital, std::move(nets));
  } catch (const json::exception& e) {
    bad(std::string("eyeball set: ") + e.what());
  }
}

}  // namespace

std::string eyeball_set_json(const EyeballSet& set) { return dump(set_to_json(set)); }

EyeballSet parse_eyeball_set_json(std::string_view text) { return set_from_json(parse_doc(text)); }

std::string coverage_json(const CoverageReport& report) {
  ordered_json nets = ordered_json::array();
  for (const auto& n : report.eyeballSet.networks()) {
    std::size_t probes = 0;
    for (const auto& c : report.coveredNetworks) {
      if (c.asn == n.asn) probes = c.probeCount;
    }
    nets.push_back({{"asn", n.asn.value()},
                    {"user_fraction", n.userFraction},
                    {"estimated_users", n.estimatedUsers},
                    {"covered", probes > 0},
                    {"probe_count", probes}});
  }
  std::uint64_t coveredUsers = 0;
  for (const auto& c : report.coveredNetworks) coveredUsers += c.estimatedUsers;
  ordered_json doc = {{"country", report.country.str()},
                      {"country_users", report.eyeballSet.countryUsers()},
                      {"eyeball_fraction", fixed12(report.eyeballSet.coveredFraction())},
                      {"covered_user_fraction", fixed12(report.coveredUserFraction)},
                      {"covered_users", coveredUsers},
                      {"covered_networks", report.coveredNetworks.size()},
                      {"uncovered_networks", report.uncoveredNetworks.size()},
                      {"networks", std::move(nets)}};
  return dump(doc);
}

std::string coverage_world_csv(std::span<const WorldCoverageRow> rows) {
  std::string out = "country,covered_fraction,bucket\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%.4f,%d\n", r.coveredFraction, r.bucket);
    out += r.country.str() + buf;
  }
  return out;
}

std::string probe_selection_json(const EyeballSet& eyeballs, const ProbeSelection& selection) {
  ordered_json arr = ordered_json::array();
  for (const auto& n : eyeballs.networks()) {
    auto it = selection.perAsn.find(n.asn);
    if (it == selection.perAsn.end()) continue;
    arr.push_back({{"asn", n.asn.value()},
                   {"closest_probe", it->second.closest.id},
                   {"farthest_probe", it->second.farthest.id}});
  }
  return dump(arr);
}

std::string plan_json(const CountryCode& country, std::span<const PlanTask> tasks) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : tasks) {
    arr.push_back({{"src_asn", t.srcAsn.value()},
                   {"dst_asn", t.dstAsn.value()},
                   {"src_probe", t.srcProbeId},
                   {"dst_probe", t.dstProbeId},
                   {"dst_addr", t.dstAddress.str()},
                   {"af", 4}});
  }
  return dump({{"country", country.str()}, {"tasks", std::move(arr)}});
}

std::string matrix_json(const EyeballMatrix& matrix) {
  ordered_json cells = ordered_json::array();
  for (const auto& c : matrix.cells()) {
    ordered_json evidence = ordered_json::array();
    for (const auto& e : c.evidence) {
      evidence.push_back({{"src_probe", e.measurement.srcProbeId},
                          {"dst_probe", e.measurement.dstProbeId},
                          {"timestamp", e.measurement.timestamp},
                          {"locality", to_string(e.classification.locality)},
                          {"directness", to_string(e.classification.directness)}});
    }
    cells.push_back({{"src_asn", c.srcAsn.value()},
                     {"dst_asn", c.dstAsn.value()},
                     {"locality", to_string(c.locality)},
                     {"directness", to_string(c.directness)},
                     {"area_weight", fixed12(c.areaWeight)},
                     {"evidence", std::move(evidence)}});
  }
  ordered_json doc = set_to_json(matrix.eyeballSet());
  doc["cells"] = std::move(cells);
  return dump(doc);
}

EyeballMatrix parse_matrix_json(std::string_view text) {
  const json doc = parse_doc(text);
  EyeballSet set = set_from_json(doc);
  std::vector<CellVerdict> cells;
  try {
    for (const auto& c : doc.at("cells")) {
      CellVerdict cell;
      cell.srcAsn = AsNumber(c.at("src_asn").get<std::uint64_t>());
      cell.dstAsn = AsNumber(c.at("dst_asn").get<std::uint64_t>());
      auto loc = parse_locality_verdict(c.at("locality").get<std::string>());
      auto dir = parse_directness_verdict(c.at("directness").get<std::string>());
      if (!loc || !dir) bad("unknown cell verdict");
      cell.locality = *loc;
      cell.directness = *dir;
      for (const auto& e : c.at("evidence")) {
        auto el = parse_locality(e.at("locality").get<std::string>());
        auto ed = parse_directness(e.at("directness").get<std::string>());
        if (!el || !ed) bad("unknown evidence label");
        cell.evidence.push_back({{e.at("src_probe").get<std::uint64_t>(), e.at("dst_probe").get<std::uint64_t>(),
                                  e.at("timestamp").get<std::int64_t>()},
                                 {*el, *ed}});
      }
      cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    bad(std::string("matrix cells: ") + e.what());
  }
  const auto n = set.size();
  if (cells.size() != n * n) bad("matrix has " + std::to_string(cells.size()) + " cells, expected n*n");
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      cells[r * n + c].areaWeight = set.networks()[r].userFraction * set.networks()[c].userFraction;
    }
  }
  return EyeballMatrix(std::move(set), std::move(cells));
}

std::string matrix_meta_json(const EyeballMatrix& matrix) {
  return dump({{"country", matrix.eyeballSet().country().str()}, {"generated_at", matrix.generatedAt()}});
}

std::string metrics_csv(const MetricsSummary& m) {
  const std::pair<const char*, double> rows[] = {
      {"in_country", m.inCountryArea},     {"out_of_country", m.outOfCountryArea},
      {"no_coverage", m.noCoverageArea},   {"inconsistent", m.inconsistentArea},
      {"undetermined", m.undeterminedArea}, {"unexamined", m.unexaminedArea},
      {"indirect", m.indirectArea},        {"mixed_directness", m.mixedArea},
  };
  std::string out = "category,area_fraction\n";
  char buf[96];
  for (const auto& [name, v] : rows) {
    // Avoid "-0.0000" for tiny negative rounding residue.
    std::snprintf(buf, sizeof buf, "%s,%.4f\n", name, std::fabs(v) < 5e-13 ? 0.0 : v);
    out += buf;
  }
  return out;
}

}  // namespace eyeball
