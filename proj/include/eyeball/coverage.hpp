#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "eyeball/ingest.hpp"
#include "eyeball/model.hpp"

namespace eyeball {

struct SelectionThresholds {
  /// Stop admitting once the networks already admitted reach this share.
  double cumulativeCap = 0.95;
  /// Smallest per-network share worth admitting.
  double perAsFloor = 0.01;
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Picks the dominant eyeball networks of one country.
///
/// Candidates are walked in descending share (ties: ascending AS number).
/// Walking stops at the first candidate below the per-AS floor, or once the
/// networks admitted so far reach the cumulative cap. The candidate that
/// crosses the cap is itself admitted.
EyeballSet select_dominant_networks(std::span<const PopulationEstimateRow> rows, std::uint64_t countryUsers,
                                    GeoPoint capital, SelectionThresholds thresholds = {});

struct CoveredNetwork {
  AsNumber asn;
  std::size_t probeCount = 0;
  std::uint64_t estimatedUsers = 0;
};

struct UncoveredNetwork {
  AsNumber asn;
  std::uint64_t estimatedUsers = 0;
};

struct CoverageReport {
  CountryCode country;
  EyeballSet eyeballSet;
  std::vector<CoveredNetwork> coveredNetworks;
  std::vector<UncoveredNetwork> uncoveredNetworks;
  /// Covered users over the country's Internet users.
  double coveredUserFraction = 0.0;

  bool isCovered(AsNumber asn) const noexcept;
};

/// A network is covered when at least one selectable probe sits in it.
CoverageReport compute_probe_coverage(const EyeballSet& eyeballs, std::span<const Probe> probes);

struct WorldCoverageRow {
  CountryCode country;
  double coveredFraction = 0.0;
  /// 1..5, fixed quintiles of coveredFraction.
  int bucket = 1;
};

int coverage_bucket(double coveredFraction) noexcept;

/// One row per report, sorted by country code.
std::vector<WorldCoverageRow> coverage_world_report(std::span<const CoverageReport> reports);

}  // namespace eyeball
