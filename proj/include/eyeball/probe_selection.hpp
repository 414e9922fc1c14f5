#pragma once

#include <map>
#include <span>
#include <vector>

#include "eyeball/model.hpp"

namespace eyeball {

inline constexpr double kEarthRadiusKm = 6371.0;

/// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept;

struct ProbePair {
  Probe closest;
  Probe farthest;
};

struct ProbeSelection {
  CountryCode country;
  /// Only networks with at least one candidate probe appear here.
  std::map<AsNumber, ProbePair> perAsn;

  bool covers(AsNumber asn) const noexcept { return perAsn.count(asn) != 0; }
};

/// Selectable probes that are geolocated in `country`. Probes without a
/// country code are kept; the inventory cannot place them elsewhere.
std::vector<Probe> probes_in_country(std::span<const Probe> probes, const CountryCode& country);

/// For each eyeball network, the probe closest to and farthest from the
/// capital. Equal distances resolve to the lower probe id in both roles.
ProbeSelection select_probes(const EyeballSet& eyeballs, std::span<const Probe> probes);

}  // namespace eyeball
