#include "eyeball/lpm.hpp"

#include <map>

namespace eyeball {

namespace {

template <typename Value>
std::vector<std::pair<Cidr, Value>> final_entries(const std::vector<std::pair<Cidr, Value>>& log) {
  std::map<Cidr, Value> last;
  for (const auto& [prefix, value] : log) last.insert_or_assign(prefix, value);
  return {last.begin(), last.end()};
}

}  // namespace

std::vector<std::pair<Cidr, AsNumber>> PrefixTable::entries() const { return final_entries(trie_.insertions()); }

std::vector<std::pair<Cidr, std::optional<CountryCode>>> GeoTable::entries() const {
  return final_entries(trie_.insertions());
}

std::vector<std::optional<AsNumber>> lookup_batch(const PrefixTable& table, std::span<const IpAddress> queries) {
  std::vector<std::optional<AsNumber>> out(queries.size());
  const auto n = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = table.lookup(queries[i]);
  return out;
}

std::vector<std::optional<AsNumber>> lookup_batch_reference(const PrefixTable& table,
                                                            std::span<const IpAddress> queries) {
  std::vector<std::optional<AsNumber>> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(table.lookup(q));
  return out;
}

}  // namespace eyeball
