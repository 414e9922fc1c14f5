#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eyeball/ip.hpp"
#include "eyeball/model.hpp"

namespace eyeball {

/// Binary trie keyed on address bits, one per address family. Inserting
/// the same prefix twice replaces its value.
template <typename Value>
class LpmTrie {
 public:
  void insert(const Cidr& prefix, Value value) {
    auto& nodes = nodesFor(prefix.network.family());
    std::uint32_t cur = 0;
    for (unsigned i = 0; i < prefix.length; ++i) {
      const unsigned b = prefix.network.bit(i);
      if (nodes[cur].child[b] == 0) {
        nodes[cur].child[b] = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back();
      }
      cur = nodes[cur].child[b];
    }
    if (!nodes[cur].value) ++size_;
    nodes[cur].value = std::move(value);
    entries_.emplace_back(prefix, *nodes[cur].value);
  }

  /// Value of the most specific prefix containing addr.
  const Value* lookup(const IpAddress& addr) const noexcept {
    const auto& nodes = addr.isV4() ? v4_ : v6_;
    const Value* best = nullptr;
    std::uint32_t cur = 0;
    const unsigned bits = addr.bitLength();
    for (unsigned i = 0;; ++i) {
      if (nodes[cur].value) best = &*nodes[cur].value;
      if (i == bits) break;
      const std::uint32_t next = nodes[cur].child[addr.bit(i)];
      if (next == 0) break;
      cur = next;
    }
    return best;
  }

  std::size_t size() const noexcept { return size_; }

  /// Insertion log, including replaced values, in insertion order.
  const std::vector<std::pair<Cidr, Value>>& insertions() const noexcept { return entries_; }

 private:
  struct Node {
    std::uint32_t child[2] = {0, 0};
    std::optional<Value> value;
  };

  std::vector<Node>& nodesFor(AddressFamily af) { return af == AddressFamily::V4 ? v4_ : v6_; }

  std::vector<Node> v4_ = std::vector<Node>(1);
  std::vector<Node> v6_ = std::vector<Node>(1);
  std::vector<std::pair<Cidr, Value>> entries_;
  std::size_t size_ = 0;
};

/// IP-to-origin-AS table.
class PrefixTable {
 public:
  void insert(const Cidr& prefix, AsNumber asn) { trie_.insert(prefix, asn); }
  std::optional<AsNumber> lookup(const IpAddress& addr) const noexcept {
    const auto* v = trie_.lookup(addr);
    return v ? std::optional<AsNumber>(*v) : std::nullopt;
  }
  std::size_t size() const noexcept { return trie_.size(); }
  /// Final (prefix, asn) pairs sorted by prefix.
  std::vector<std::pair<Cidr, AsNumber>> entries() const;

 private:
  LpmTrie<AsNumber> trie_;
};

/// IP-to-country table. A prefix may map to "unknown" (the `??` sentinel),
/// which shadows less specific prefixes.
class GeoTable {
 public:
  void insert(const Cidr& prefix, std::optional<CountryCode> country) { trie_.insert(prefix, std::move(country)); }
  std::optional<CountryCode> lookup(const IpAddress& addr) const {
    const auto* v = trie_.lookup(addr);
    return v ? *v : std::nullopt;
  }
  std::size_t size() const noexcept { return trie_.size(); }
  std::vector<std::pair<Cidr, std::optional<CountryCode>>> entries() const;

 private:
  LpmTrie<std::optional<CountryCode>> trie_;
};

/// Batch lookups; OpenMP-parallel over queries.
std::vector<std::optional<AsNumber>> lookup_batch(const PrefixTable& table, std::span<const IpAddress> queries);
/// Serial reference for lookup_batch.
std::vector<std::optional<AsNumber>> lookup_batch_reference(const PrefixTable& table,
                                                            std::span<const IpAddress> queries);

}  // namespace eyeball
