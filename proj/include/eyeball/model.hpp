#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "eyeball/ip.hpp"

namespace eyeball {

/// ISO 3166-1 alpha-2 country code, always two uppercase ASCII letters.
class CountryCode {
 public:
  CountryCode() = default;
  explicit CountryCode(std::string_view code);

  /// Returns nullopt instead of throwing on malformed input.
  static std::optional<CountryCode> parse(std::string_view code) noexcept;

  const std::string& str() const noexcept { return code_; }
  bool empty() const noexcept { return code_.empty(); }

  auto operator<=>(const CountryCode&) const = default;

 private:
  std::string code_;
};

/// Autonomous system number; zero is not a valid AS.
class AsNumber {
 public:
  constexpr AsNumber() = default;
  explicit AsNumber(std::uint64_t value);

  static std::optional<AsNumber> parse(std::string_view text) noexcept;

  constexpr std::uint32_t value() const noexcept { return value_; }
  std::string str() const { return std::to_string(value_); }

  auto operator<=>(const AsNumber&) const = default;

 private:
  std::uint32_t value_ = 0;
};

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;

  /// Throws std::invalid_argument when either coordinate is out of range.
  static GeoPoint make(double latitude, double longitude);
  static bool valid(double latitude, double longitude) noexcept;

  bool operator==(const GeoPoint&) const = default;
};

struct EyeballNetwork {
  AsNumber asn;
  CountryCode country;
  double userFraction = 0.0;
  std::uint64_t estimatedUsers = 0;

  bool operator==(const EyeballNetwork&) const = default;
};

/// floor(fraction * users), computed without drifting past exact integers.
std::uint64_t estimate_users(double fraction, std::uint64_t countryUsers);

/// Dominant eyeball networks of one country, sorted by descending share
/// with ascending AS number as tie-break.
class EyeballSet {
 public:
  EyeballSet() = default;
  /// Validates ordering, uniqueness and the per-network country; recomputes
  /// the covered fraction.
  EyeballSet(CountryCode country, std::uint64_t countryUsers, GeoPoint capital,
             std::vector<EyeballNetwork> networks);

  const CountryCode& country() const noexcept { return country_; }
  std::uint64_t countryUsers() const noexcept { return countryUsers_; }
  const GeoPoint& capital() const noexcept { return capital_; }
  const std::vector<EyeballNetwork>& networks() const noexcept { return networks_; }
  double coveredFraction() const noexcept { return coveredFraction_; }
  std::size_t size() const noexcept { return networks_.size(); }

  /// Index of asn in networks(), or nullopt.
  std::optional<std::size_t> indexOf(AsNumber asn) const noexcept;

  bool operator==(const EyeballSet&) const = default;

 private:
  CountryCode country_;
  std::uint64_t countryUsers_ = 0;
  GeoPoint capital_;
  std::vector<EyeballNetwork> networks_;
  double coveredFraction_ = 0.0;
};

struct Probe {
  std::uint64_t id = 0;
  std::optional<AsNumber> asnV4;
  std::optional<AsNumber> asnV6;
  std::optional<GeoPoint> location;
  std::optional<IpAddress> publicAddressV4;
  std::optional<CountryCode> country;
  bool isPublic = false;
  bool isConnected = false;

  /// Public, connected, located, with an IPv4 AS and address.
  bool selectable() const noexcept {
    return isPublic && isConnected && location && asnV4 && publicAddressV4;
  }

  bool operator==(const Probe&) const = default;
};

struct HopTimeout {
  bool operator==(const HopTimeout&) const = default;
};

struct HopReply {
  IpAddress address;
  std::optional<double> rttMs;

  bool operator==(const HopReply&) const = default;
};

using HopResponse = std::variant<HopReply, HopTimeout>;

struct TracerouteHop {
  std::uint32_t index = 0;
  std::vector<HopResponse> responses;

  /// First response that is not a timeout.
  const HopReply* firstReply() const noexcept;

  bool operator==(const TracerouteHop&) const = default;
};

struct Traceroute {
  std::uint64_t srcProbeId = 0;
  std::uint64_t dstProbeId = 0;
  AsNumber srcAsn;
  AsNumber dstAsn;
  IpAddress dstAddress;
  int addressFamily = 4;
  std::int64_t timestamp = 0;
  std::vector<TracerouteHop> hops;

  bool operator==(const Traceroute&) const = default;
};

enum class Locality { InCountry, OutOfCountry, Undetermined };
enum class Directness { Direct, Indirect, Undetermined };

struct PathClassification {
  Locality locality = Locality::Undetermined;
  Directness directness = Directness::Undetermined;

  bool operator==(const PathClassification&) const = default;
};

enum class LocalityVerdict { InCountry, OutOfCountry, Inconsistent, NoCoverage, Undetermined };
enum class DirectnessVerdict { Direct, Indirect, Mixed, NotApplicable };

/// Identifies the traceroute a piece of cell evidence came from.
struct MeasurementRef {
  std::uint64_t srcProbeId = 0;
  std::uint64_t dstProbeId = 0;
  std::int64_t timestamp = 0;

  auto operator<=>(const MeasurementRef&) const = default;
};

struct Evidence {
  MeasurementRef measurement;
  PathClassification classification;

  bool operator==(const Evidence&) const = default;
};

struct CellVerdict {
  AsNumber srcAsn;
  AsNumber dstAsn;
  LocalityVerdict locality = LocalityVerdict::Undetermined;
  DirectnessVerdict directness = DirectnessVerdict::NotApplicable;
  double areaWeight = 0.0;
  std::vector<Evidence> evidence;

  bool operator==(const CellVerdict&) const = default;
};

using AsPair = std::pair<AsNumber, AsNumber>;

/// Square matrix of ordered eyeball pairs, row-major in eyeball-set order.
class EyeballMatrix {
 public:
  EyeballMatrix() = default;
  /// cells must hold n*n entries in row-major order matching the set.
  EyeballMatrix(EyeballSet eyeballs, std::vector<CellVerdict> cells, std::int64_t generatedAt = 0);

  const EyeballSet& eyeballSet() const noexcept { return eyeballs_; }
  const std::vector<CellVerdict>& cells() const noexcept { return cells_; }
  std::size_t dimension() const noexcept { return eyeballs_.size(); }
  const CellVerdict& at(std::size_t row, std::size_t col) const { return cells_.at(row * dimension() + col); }
  const CellVerdict* find(AsNumber src, AsNumber dst) const noexcept;
  std::int64_t generatedAt() const noexcept { return generatedAt_; }

  bool operator==(const EyeballMatrix&) const = default;

 private:
  EyeballSet eyeballs_;
  std::vector<CellVerdict> cells_;
  std::int64_t generatedAt_ = 0;
};

struct MetricsSummary {
  double inCountryArea = 0.0;
  double outOfCountryArea = 0.0;
  double noCoverageArea = 0.0;
  double inconsistentArea = 0.0;
  double undeterminedArea = 0.0;
  double unexaminedArea = 0.0;
  /// Consensus-indirect cells only, relative to the total area.
  double indirectArea = 0.0;
  /// Cells whose traceroutes disagree on directness; not part of indirectArea.
  double mixedArea = 0.0;

  double partitionSum() const noexcept {
    return inCountryArea + outOfCountryArea + noCoverageArea + inconsistentArea + undeterminedArea +
           unexaminedArea;
  }
};

std::string_view to_string(Locality v) noexcept;
std::string_view to_string(Directness v) noexcept;
std::string_view to_string(LocalityVerdict v) noexcept;
std::string_view to_string(DirectnessVerdict v) noexcept;

std::optional<Locality> parse_locality(std::string_view s) noexcept;
std::optional<Directness> parse_directness(std::string_view s) noexcept;
std::optional<LocalityVerdict> parse_locality_verdict(std::string_view s) noexcept;
std::optional<DirectnessVerdict> parse_directness_verdict(std::string_view s) noexcept;

}  // namespace eyeball
