#include "eyeball/probe_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eyeball {

double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept {
  constexpr double rad = std::numbers::pi / 180.0;
  const double dLat = (b.latitude - a.latitude) * rad;
  const double dLon = (b.longitude - a.longitude) * rad;
  const double s1 = std::sin(dLat / 2.0);
  const double s2 = std::sin(dLon / 2.0);
  double h = s1 * s1 + std::cos(a.latitude * rad) * std::cos(b.latitude * rad) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

std::vector<Probe> probes_in_country(std::span<const Probe> probes, const CountryCode& country) {
  std::vector<Probe> out;
  for (const auto& p : probes) {
    if (p.selectable() && (!p.country || *p.country == country)) out.push_back(p);
  }
  return out;
}

ProbeSelection select_probes(const EyeballSet& eyeballs, std::span<const Probe> probes) {
  ProbeSelection sel;
  sel.country = eyeballs.country();

  struct Best {
    const Probe* probe = nullptr;
    double distance = 0.0;
  };
  std::map<AsNumber, std::pair<Best, Best>> best;
  for (const auto& n : eyeballs.networks()) best.emplace(n.asn, std::pair<Best, Best>{});

  for (const auto& p : probes) {
    if (!p.selectable()) continue;
    auto it = best.find(*p.asnV4);
    if (it == best.end()) continue;
    const double d = haversine_km(eyeballs.capital(), *p.location);
    auto& [near, far] = it->second;
    if (!near.probe || d < near.distance || (d == near.distance && p.id < near.probe->id)) near = {&p, d};
    if (!far.probe || d > far.distance || (d == far.distance && p.id < far.probe->id)) far = {&p, d};
  }

  for (const auto& [asn, pair] : best) {
    if (pair.first.probe) sel.perAsn.emplace(asn, ProbePair{*pair.first.probe, *pair.second.probe});
  }
  return sel;
}

}  // namespace eyeball
