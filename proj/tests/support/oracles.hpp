#pragma once

// Independent reference computations used by the unit and acceptance
// suites. Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "eyeball/ip.hpp"
#include "eyeball/model.hpp"

namespace eyeball::oracle {

/// Most specific containing prefix by exhaustive scan; later duplicates win.
template <typename Value>
std::optional<Value> lpm_linear_scan(const std::vector<std::pair<Cidr, Value>>& entries, const IpAddress& addr) {
  std::optional<Value> best;
  int bestLen = -1;
  for (const auto& [prefix, value] : entries) {
    if (prefix.network.family() != addr.family()) continue;
    // Compare bit by bit rather than reusing Cidr::contains.
    bool match = true;
    for (unsigned i = 0; i < prefix.length && match; ++i) match = prefix.network.bit(i) == addr.bit(i);
    if (match && static_cast<int>(prefix.length) >= bestLen) {
      bestLen = static_cast<int>(prefix.length);
      best = value;
    }
  }
  return best;
}

/// Great-circle distance by the spherical law of cosines.
inline double law_of_cosines_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double r = 6371.0;
  const double d = std::numbers::pi / 180.0;
  const double c = std::sin(lat1 * d) * std::sin(lat2 * d) + std::cos(lat1 * d) * std::cos(lat2 * d) * std::cos((lon2 - lon1) * d);
  return r * std::acos(std::clamp(c, -1.0, 1.0));
}

struct BruteAreas {
  double in = 0, out = 0, noCoverage = 0, inconsistent = 0, undetermined = 0, unexamined = 0, indirect = 0;
};

/// Category areas from raw fractions and an explicit n*n verdict grid by a
/// plain double loop over (i, j).
inline BruteAreas metrics_double_loop(const std::vector<double>& fractions,
                                      const std::vector<std::vector<LocalityVerdict>>& locality,
                                      const std::vector<std::vector<DirectnessVerdict>>& directness) {
  BruteAreas a;
  const auto n = fractions.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = fractions[i] * fractions[j];
      total += w;
      switch (locality[i][j]) {
        case LocalityVerdict::InCountry: a.in += w; break;
        case LocalityVerdict::OutOfCountry: a.out += w; break;
        case LocalityVerdict::NoCoverage: a.noCoverage += w; break;
        case LocalityVerdict::Inconsistent: a.inconsistent += w; break;
        case LocalityVerdict::Undetermined: a.undetermined += w; break;
      }
      if (directness[i][j] == DirectnessVerdict::Indirect) a.indirect += w;
    }
  }
  a.unexamined = 1.0 - total;
  return a;
}

/// Random IPv4 prefix table with forced nesting: a share of prefixes are
/// carved out of earlier ones so lookups exercise several containing levels.
inline std::vector<std::pair<Cidr, AsNumber>> random_nested_table(std::mt19937_64& rng, std::size_t count) {
  std::vector<std::pair<Cidr, AsNumber>> out;
  std::uniform_int_distribution<std::uint32_t> addr;
  std::uniform_int_distribution<unsigned> len(0, 32);
  std::uniform_int_distribution<std::uint32_t> asn(1, 400000);
  std::bernoulli_distribution nest(0.6);
  for (std::size_t i = 0; i < count; ++i) {
    Cidr c;
    if (!out.empty() && nest(rng)) {
      const auto& parent = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)].first;
      const unsigned childLen = std::min(32U, parent.length + 1 + len(rng) % 8);
      // Keep the parent's bits, randomize the rest.
      const std::uint32_t mask = parent.length == 0 ? 0 : ~std::uint32_t{0} << (32 - parent.length);
      const std::uint32_t a = (parent.network.toV4() & mask) | (addr(rng) & ~mask);
      c = {IpAddress::v4(a).masked(childLen), childLen};
    } else {
      const unsigned l = 4 + len(rng) % 29;
      c = {IpAddress::v4(addr(rng)).masked(l), l};
    }
    out.emplace_back(c, AsNumber(asn(rng)));
  }
  return out;
}

/// Query address biased to fall inside a random table entry.
inline IpAddress random_query(std::mt19937_64& rng, const std::vector<std::pair<Cidr, AsNumber>>& table) {
  std::uniform_int_distribution<std::uint32_t> addr;
  if (table.empty() || std::bernoulli_distribution(0.25)(rng)) return IpAddress::v4(addr(rng));
  const auto& p = table[std::uniform_int_distribution<std::size_t>(0, table.size() - 1)(rng)].first;
  const std::uint32_t mask = p.length == 0 ? 0 : ~std::uint32_t{0} << (32 - p.length);
  return IpAddress::v4((p.network.toV4() & mask) | (addr(rng) & ~mask));
}

}  // namespace eyeball::oracle
