#pragma once

#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "eyeball/lpm.hpp"
#include "eyeball/model.hpp"

namespace eyeball {

/// Stands in for one or more responding hops with no known origin AS.
struct UnknownHop {
  bool operator==(const UnknownHop&) const = default;
};

using AsPathElement = std::variant<AsNumber, UnknownHop>;

/// AS-level path with consecutive duplicates collapsed.
struct AsPath {
  std::vector<AsPathElement> sequence;

  bool operator==(const AsPath&) const = default;
};

class EmptyTraceroute : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Maps each hop's first reply through the prefix table.
///
/// Special-purpose addresses are dropped, unmapped public addresses become
/// UnknownHop, the source AS is prepended and the destination AS appended
/// unless already last. Repeats collapse, and an UnknownHop sitting between
/// two equal ASes is absorbed into that AS.
AsPath extract_as_path(const Traceroute& tr, const PrefixTable& prefixes);

/// OutOfCountry if any geolocated hop lies outside `country`, InCountry if
/// at least one lies inside and none outside, else Undetermined.
Locality classify_locality(const Traceroute& tr, const GeoTable& geo, const CountryCode& country);

/// Direct when the path holds only the two endpoint ASes, Indirect when any
/// third AS appears, Undetermined when unknown hops leave it open.
Directness classify_directness(const AsPath& path, AsNumber srcAsn, AsNumber dstAsn);

/// Consensus verdict for one ordered AS pair. Order of evidence is irrelevant.
CellVerdict classify_pair(std::span<const Evidence> evidence, bool covered, AsNumber srcAsn = {},
                          AsNumber dstAsn = {});

struct TracerouteVerdict {
  AsPath path;
  PathClassification classification;

  bool operator==(const TracerouteVerdict&) const = default;
};

/// Path extraction plus both classifications for every traceroute.
/// OpenMP-parallel over traceroutes; hop-less traceroutes yield an empty
/// path and (Undetermined, Undetermined).
std::vector<TracerouteVerdict> classify_traceroutes(std::span<const Traceroute> traceroutes,
                                                    const PrefixTable& prefixes, const GeoTable& geo,
                                                    const CountryCode& country);

/// Serial reference for classify_traceroutes.
std::vector<TracerouteVerdict> classify_traceroutes_reference(std::span<const Traceroute> traceroutes,
                                                              const PrefixTable& prefixes, const GeoTable& geo,
                                                              const CountryCode& country);

}  // namespace eyeball
