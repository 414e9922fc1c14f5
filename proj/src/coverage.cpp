#include "eyeball/coverage.hpp"

#include <algorithm>
#include <map>

namespace eyeball {

namespace {
// Absorbs summation noise so 0.5 + 0.3 + 0.15 counts as having reached 0.95.
constexpr double kCapSlack = 1e-12;
}  // namespace

EyeballSet select_dominant_networks(std::span<const PopulationEstimateRow> rows, std::uint64_t countryUsers,
                                    GeoPoint capital, SelectionThresholds thresholds) {
  if (rows.empty()) throw EmptyInput("no population estimates for country");
  if (!(thresholds.cumulativeCap > 0.0 && thresholds.cumulativeCap <= 1.0) ||
      !(thresholds.perAsFloor > 0.0 && thresholds.perAsFloor <= 1.0)) {
    throw std::invalid_argument("selection thresholds must lie in (0,1]");
  }
  const CountryCode country = rows.front().country;

  struct Candidate {
    AsNumber asn;
    double fraction;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.country != country) throw std::invalid_argument("population rows span several countries");
    candidates.push_back({row.asn, user_fraction(row)});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.fraction != b.fraction) return a.fraction > b.fraction;
    return a.asn < b.asn;
  });

  std::vector<EyeballNetwork> admitted;
  double cumulative = 0.0;
  for (const auto& c : candidates) {
    if (c.fraction < thresholds.perAsFloor) break;
    if (cumulative >= thresholds.cumulativeCap - kCapSlack) break;
    admitted.push_back({c.asn, country, c.fraction, estimate_users(c.fraction, countryUsers)});
    cumulative += c.fraction;
  }
  return EyeballSet(country, countryUsers, capital, std::move(admitted));
}

bool CoverageReport::isCovered(AsNumber asn) const noexcept {
  return std::any_of(coveredNetworks.begin(), coveredNetworks.end(),
                     [&](const CoveredNetwork& n) { return n.asn == asn; });
}

CoverageReport compute_probe_coverage(const EyeballSet& eyeballs, std::span<const Probe> probes) {
  std::map<AsNumber, std::size_t> probesPerAsn;
  for (const auto& p : probes) {
    if (p.selectable()) ++probesPerAsn[*p.asnV4];
  }

  CoverageReport report;
  report.country = eyeballs.country();
  report.eyeballSet = eyeballs;
  double covered = 0.0;
  for (const auto& n : eyeballs.networks()) {
    const auto it = probesPerAsn.find(n.asn);
    if (it != probesPerAsn.end()) {
      report.coveredNetworks.push_back({n.asn, it->second, n.estimatedUsers});
      covered += n.userFraction;
    } else {
      report.uncoveredNetworks.push_back({n.asn, n.estimatedUsers});
    }
  }
  report.coveredUserFraction = std::min(covered, 1.0);
  return report;
}

int coverage_bucket(double coveredFraction) noexcept {
  if (coveredFraction < 0.2) return 1;
  if (coveredFraction < 0.4) return 2;
  if (coveredFraction < 0.6) return 3;
  if (coveredFraction < 0.8) return 4;
  return 5;
}

std::vector<WorldCoverageRow> coverage_world_report(std::span<const CoverageReport> reports) {
  std::vector<WorldCoverageRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back({r.country, r.coveredUserFraction, coverage_bucket(r.coveredUserFraction)});
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.country < b.country; });
  return rows;
}

}  // namespace eyeball
