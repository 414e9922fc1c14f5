#include "eyeball/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace eyeball {

CountryCode::CountryCode(std::string_view code) {
  auto parsed = parse(code);
  if (!parsed) throw std::invalid_argument("invalid country code '" + std::string(code) + "'");
  *this = std::move(*parsed);
}

std::optional<CountryCode> CountryCode::parse(std::string_view code) noexcept {
  if (code.size() != 2) return std::nullopt;
  for (char c : code) {
    if (c < 'A' || c > 'Z') return std::nullopt;
  }
  CountryCode out;
  out.code_ = std::string(code);
  return out;
}

AsNumber::AsNumber(std::uint64_t value) {
  if (value == 0 || value > 0xFFFFFFFFULL) {
    throw std::invalid_argument("AS number out of range: " + std::to_string(value));
  }
  value_ = static_cast<std::uint32_t>(value);
}

std::optional<AsNumber> AsNumber::parse(std::string_view text) noexcept {
  if (text.size() > 2 && (text.substr(0, 2) == "AS" || text.substr(0, 2) == "as")) text.remove_prefix(2);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  if (v == 0 || v > 0xFFFFFFFFULL) return std::nullopt;
  return AsNumber(v);
}

bool GeoPoint::valid(double latitude, double longitude) noexcept {
  return std::isfinite(latitude) && std::isfinite(longitude) && latitude >= -90.0 && latitude <= 90.0 &&
         longitude >= -180.0 && longitude <= 180.0;
}

GeoPoint GeoPoint::make(double latitude, double longitude) {
  if (!valid(latitude, longitude)) throw std::invalid_argument("coordinates out of range");
  return GeoPoint{latitude, longitude};
}

std::uint64_t estimate_users(double fraction, std::uint64_t countryUsers) {
  const long double product = static_cast<long double>(fraction) * static_cast<long double>(countryUsers);
  // Nudge values like 8249999.9999999 that are an exact integer in decimal.
  const long double nearest = std::nearbyint(product);
  if (std::fabs(product - nearest) < 1e-6L) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::floor(product));
}

EyeballSet::EyeballSet(CountryCode country, std::uint64_t countryUsers, GeoPoint capital,
                       std::vector<EyeballNetwork> networks)
    : country_(std::move(country)), countryUsers_(countryUsers), capital_(capital), networks_(std::move(networks)) {
  std::set<AsNumber> seen;
  double sum = 0.0;
  for (std::size_t i = 0; i < networks_.size(); ++i) {
    const auto& n = networks_[i];
    if (!seen.insert(n.asn).second) throw std::invalid_argument("duplicate AS" + n.asn.str() + " in eyeball set");
    if (n.country != country_) throw std::invalid_argument("AS" + n.asn.str() + " belongs to another country");
    if (!(n.userFraction >= 0.0 && n.userFraction <= 1.0)) {
      throw std::invalid_argument("user fraction out of range for AS" + n.asn.str());
    }
    if (i > 0) {
      const auto& prev = networks_[i - 1];
      const bool ordered = prev.userFraction > n.userFraction ||
                           (prev.userFraction == n.userFraction && prev.asn < n.asn);
      if (!ordered) throw std::invalid_argument("eyeball networks not in descending order");
    }
    sum += n.userFraction;
  }
  if (sum > 1.0 + 1e-9) throw std::invalid_argument("eyeball fractions sum above 1");
  coveredFraction_ = std::min(sum, 1.0);
}

std::optional<std::size_t> EyeballSet::indexOf(AsNumber asn) const noexcept {
  for (std::size_t i = 0; i < networks_.size(); ++i) {
    if (networks_[i].asn == asn) return i;
  }
  return std::nullopt;
}

const HopReply* TracerouteHop::firstReply() const noexcept {
  for (const auto& r : responses) {
    if (const auto* reply = std::get_if<HopReply>(&r)) return reply;
  }
  return nullptr;
}

EyeballMatrix::EyeballMatrix(EyeballSet eyeballs, std::vector<CellVerdict> cells, std::int64_t generatedAt)
    : eyeballs_(std::move(eyeballs)), cells_(std::move(cells)), generatedAt_(generatedAt) {
  const auto n = eyeballs_.size();
  if (cells_.size() != n * n) throw std::invalid_argument("matrix needs n*n cells");
  const auto& nets = eyeballs_.networks();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto& cell = cells_[r * n + c];
      if (cell.srcAsn != nets[r].asn || cell.dstAsn != nets[c].asn) {
        throw std::invalid_argument("matrix cell order does not match eyeball set");
      }
      if (cell.locality == LocalityVerdict::NoCoverage &&
          (cell.directness != DirectnessVerdict::NotApplicable || !cell.evidence.empty())) {
        throw std::invalid_argument("no-coverage cell carries evidence");
      }
    }
  }
}

const CellVerdict* EyeballMatrix::find(AsNumber src, AsNumber dst) const noexcept {
  const auto r = eyeballs_.indexOf(src);
  const auto c = eyeballs_.indexOf(dst);
  if (!r || !c) return nullptr;
  return &cells_[*r * dimension() + *c];
}

std::string_view to_string(Locality v) noexcept {
  switch (v) {
    case Locality::InCountry: return "in_country";
    case Locality::OutOfCountry: return "out_of_country";
    case Locality::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(Directness v) noexcept {
  switch (v) {
    case Directness::Direct: return "direct";
    case Directness::Indirect: return "indirect";
    case Directness::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(LocalityVerdict v) noexcept {
  switch (v) {
    case LocalityVerdict::InCountry: return "in_country";
    case LocalityVerdict::OutOfCountry: return "out_of_country";
    case LocalityVerdict::Inconsistent: return "inconsistent";
    case LocalityVerdict::NoCoverage: return "no_coverage";
    case LocalityVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(DirectnessVerdict v) noexcept {
  switch (v) {
    case DirectnessVerdict::Direct: return "direct";
    case DirectnessVerdict::Indirect: return "indirect";
    case DirectnessVerdict::Mixed: return "mixed";
    case DirectnessVerdict::NotApplicable: return "not_applicable";
  }
  return "not_applicable";
}

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view s, const Enum (&values)[N]) noexcept {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Locality> parse_locality(std::string_view s) noexcept {
  static constexpr Locality all[] = {Locality::InCountry, Locality::OutOfCountry, Locality::Undetermined};
  return parse_enum(s, all);
}

std::optional<Directness> parse_directness(std::string_view s) noexcept {
  static constexpr Directness all[] = {Directness::Direct, Directness::Indirect, Directness::Undetermined};
  return parse_enum(s, all);
}

std::optional<LocalityVerdict> parse_locality_verdict(std::string_view s) noexcept {
  static constexpr LocalityVerdict all[] = {LocalityVerdict::InCountry, LocalityVerdict::OutOfCountry,
                                            LocalityVerdict::Inconsistent, LocalityVerdict::NoCoverage,
                                            LocalityVerdict::Undetermined};
  return parse_enum(s, all);
}

std::optional<DirectnessVerdict> parse_directness_verdict(std::string_view s) noexcept {
  static constexpr DirectnessVerdict all[] = {DirectnessVerdict::Direct, DirectnessVerdict::Indirect,
                                              DirectnessVerdict::Mixed, DirectnessVerdict::NotApplicable};
  return parse_enum(s, all);
}

}  // namespace eyeball
