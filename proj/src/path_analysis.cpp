#include "eyeball/path_analysis.hpp"

#include <algorithm>

namespace eyeball {

namespace {

bool is_unknown(const AsPathElement& e) noexcept { return std::holds_alternative<UnknownHop>(e); }

void push_element(std::vector<AsPathElement>& out, const AsPathElement& e) {
  if (!out.empty() && out.back() == e) return;
  if (const auto* asn = std::get_if<AsNumber>(&e); asn && out.size() >= 2 && is_unknown(out.back())) {
    if (const auto* before = std::get_if<AsNumber>(&out[out.size() - 2]); before && *before == *asn) {
      out.pop_back();
      return;
    }
  }
  out.push_back(e);
}

TracerouteVerdict classify_one(const Traceroute& tr, const PrefixTable& prefixes, const GeoTable& geo,
                               const CountryCode& country) {
  if (tr.hops.empty()) return {};
  AsPath path = extract_as_path(tr, prefixes);
  return {path, {classify_locality(tr, geo, country), classify_directness(path, tr.srcAsn, tr.dstAsn)}};
}

}  // namespace

AsPath extract_as_path(const Traceroute& tr, const PrefixTable& prefixes) {
  if (tr.hops.empty()) throw EmptyTraceroute("traceroute has no hops");
  AsPath path;
  auto& seq = path.sequence;
  push_element(seq, tr.srcAsn);
  for (const auto& hop : tr.hops) {
    const HopReply* reply = hop.firstReply();
    if (!reply || is_special_purpose(reply->address)) continue;
    if (auto asn = prefixes.lookup(reply->address)) {
      push_element(seq, *asn);
    } else {
      push_element(seq, UnknownHop{});
    }
  }
  push_element(seq, tr.dstAsn);
  return path;
}

Locality classify_locality(const Traceroute& tr, const GeoTable& geo, const CountryCode& country) {
  bool inside = false;
  for (const auto& hop : tr.hops) {
    const HopReply* reply = hop.firstReply();
    if (!reply || is_special_purpose(reply->address)) continue;
    const auto cc = geo.lookup(reply->address);
    if (!cc) continue;
    if (*cc != country) return Locality::OutOfCountry;
    inside = true;
  }
  return inside ? Locality::InCountry : Locality::Undetermined;
}

Directness classify_directness(const AsPath& path, AsNumber srcAsn, AsNumber dstAsn) {
  bool unknown = false;
  for (const auto& e : path.sequence) {
    if (const auto* asn = std::get_if<AsNumber>(&e)) {
      if (*asn != srcAsn && *asn != dstAsn) return Directness::Indirect;
    } else {
      unknown = true;
    }
  }
  return unknown ? Directness::Undetermined : Directness::Direct;
}

CellVerdict classify_pair(std::span<const Evidence> evidence, bool covered, AsNumber srcAsn, AsNumber dstAsn) {
  CellVerdict cell;
  cell.srcAsn = srcAsn;
  cell.dstAsn = dstAsn;
  if (!covered) {
    cell.locality = LocalityVerdict::NoCoverage;
    cell.directness = DirectnessVerdict::NotApplicable;
    return cell;
  }
  bool in = false, out = false, direct = false, indirect = false;
  for (const auto& e : evidence) {
    in |= e.classification.locality == Locality::InCountry;
    out |= e.classification.locality == Locality::OutOfCountry;
    direct |= e.classification.directness == Directness::Direct;
    indirect |= e.classification.directness == Directness::Indirect;
  }
  if (in && out) {
    cell.locality = LocalityVerdict::Inconsistent;
  } else if (in) {
    cell.locality = LocalityVerdict::InCountry;
  } else if (out) {
    cell.locality = LocalityVerdict::OutOfCountry;
  } else {
    cell.locality = LocalityVerdict::Undetermined;
  }
  if (direct && indirect) {
    cell.directness = DirectnessVerdict::Mixed;
  } else if (direct) {
    cell.directness = DirectnessVerdict::Direct;
  } else if (indirect) {
    cell.directness = DirectnessVerdict::Indirect;
  } else {
    cell.directness = DirectnessVerdict::NotApplicable;
  }
  cell.evidence.assign(evidence.begin(), evidence.end());
  std::sort(cell.evidence.begin(), cell.evidence.end(),
            [](const Evidence& a, const Evidence& b) { return a.measurement < b.measurement; });
  return cell;
}

std::vector<TracerouteVerdict> classify_traceroutes(std::span<const Traceroute> traceroutes,
                                                    const PrefixTable& prefixes, const GeoTable& geo,
                                                    const CountryCode& country) {
  std::vector<TracerouteVerdict> out(traceroutes.size());
  const auto n = static_cast<std::ptrdiff_t>(traceroutes.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = classify_one(traceroutes[i], prefixes, geo, country);
  return out;
}

std::vector<TracerouteVerdict> classify_traceroutes_reference(std::span<const Traceroute> traceroutes,
                                                              const PrefixTable& prefixes, const GeoTable& geo,
                                                              const CountryCode& country) {
  std::vector<TracerouteVerdict> out;
  out.reserve(traceroutes.size());
  for (const auto& tr : traceroutes) out.push_back(classify_one(tr, prefixes, geo, country));
  return out;
}

}  // namespace eyeball
