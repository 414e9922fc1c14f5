#include <set>

#include <doctest.h>

#include "eyeball/output.hpp"
#include "eyeball/plan.hpp"
#include "eyeball/probe_selection.hpp"

using namespace eyeball;

namespace {

const CountryCode kCA("CA");

Probe probe(std::uint64_t id, std::uint32_t asn) {
  Probe p;
  p.id = id;
  p.asnV4 = AsNumber(asn);
  p.location = GeoPoint{45, -75};
  p.publicAddressV4 = IpAddress::v4(0x14000000U + static_cast<std::uint32_t>(id));
  p.isPublic = true;
  p.isConnected = true;
  return p;
}

EyeballSet set_of(std::vector<std::uint32_t> asns) {
  std::vector<EyeballNetwork> nets;
  for (std::size_t i = 0; i < asns.size(); ++i) nets.push_back({AsNumber(asns[i]), kCA, 0.3 - 0.01 * double(i), 0});
  return EyeballSet(kCA, 1000, GeoPoint{45, -75}, nets);
}

// Independent enumeration: every ordered network pair, every combination of
// the (deduplicated) selected probes, minus same-probe pairs.
std::size_t expected_tasks(const EyeballSet& set, const ProbeSelection& sel) {
  std::size_t total = 0;
  for (const auto& s : set.networks()) {
    if (!sel.covers(s.asn)) continue;
    for (const auto& d : set.networks()) {
      if (!sel.covers(d.asn)) continue;
      const auto& sp = sel.perAsn.at(s.asn);
      const auto& dp = sel.perAsn.at(d.asn);
      std::set<std::uint64_t> from = {sp.closest.id, sp.farthest.id};
      std::set<std::uint64_t> to = {dp.closest.id, dp.farthest.id};
      for (auto a : from) {
        for (auto b : to) total += a != b;
      }
    }
  }
  return total;
}

}  // namespace

TEST_SUITE("plan") {

TEST_CASE("two networks with two probes each") {
  const auto set = set_of({812, 577});
  ProbeSelection sel;
  sel.perAsn.emplace(AsNumber(812), ProbePair{probe(1, 812), probe(2, 812)});
  sel.perAsn.emplace(AsNumber(577), ProbePair{probe(3, 577), probe(4, 577)});
  const auto tasks = build_plan(set, sel);
  // Off-diagonal: 2 ordered pairs x 4 combinations. Diagonal: 2 networks x
  // (4 combinations - 2 same-probe).
  CHECK(tasks.size() == 12);
  CHECK(tasks.size() == expected_tasks(set, sel));
  std::size_t diagonal = 0;
  for (const auto& t : tasks) {
    CHECK(t.srcProbeId != t.dstProbeId);
    diagonal += t.srcAsn == t.dstAsn;
  }
  CHECK(diagonal == 4);
  const std::set<PlanTask> unique(tasks.begin(), tasks.end());
  CHECK(unique.size() == tasks.size());
}

TEST_CASE("a single-probe network halves its tasks") {
  const auto set = set_of({812, 577});
  ProbeSelection sel;
  sel.perAsn.emplace(AsNumber(812), ProbePair{probe(1, 812), probe(2, 812)});
  sel.perAsn.emplace(AsNumber(577), ProbePair{probe(3, 577), probe(3, 577)});
  const auto tasks = build_plan(set, sel);
  std::size_t to577 = 0, from577 = 0, self577 = 0;
  for (const auto& t : tasks) {
    if (t.srcAsn == AsNumber(812) && t.dstAsn == AsNumber(577)) ++to577;
    if (t.srcAsn == AsNumber(577) && t.dstAsn == AsNumber(812)) ++from577;
    if (t.srcAsn == AsNumber(577) && t.dstAsn == AsNumber(577)) ++self577;
  }
  CHECK(to577 == 2);
  CHECK(from577 == 2);
  CHECK(self577 == 0);
  CHECK(tasks.size() == expected_tasks(set, sel));
}

TEST_CASE("no covered networks gives an empty plan") {
  const auto set = set_of({812, 577});
  CHECK(build_plan(set, ProbeSelection{}).empty());
  CHECK(plan_json(kCA, {}) == "{\n  \"country\": \"CA\",\n  \"tasks\": []\n}\n");
}

TEST_CASE("tasks follow eyeball-set order and target the probe address") {
  const auto set = set_of({812, 577, 3});
  ProbeSelection sel;
  sel.perAsn.emplace(AsNumber(3), ProbePair{probe(7, 3), probe(8, 3)});
  sel.perAsn.emplace(AsNumber(812), ProbePair{probe(1, 812), probe(2, 812)});
  const auto tasks = build_plan(set, sel);
  REQUIRE(!tasks.empty());
  CHECK(tasks.front().srcAsn == AsNumber(812));
  CHECK(tasks.back().srcAsn == AsNumber(3));
  for (const auto& t : tasks) CHECK(t.dstAddress == IpAddress::v4(0x14000000U + static_cast<std::uint32_t>(t.dstProbeId)));
  CHECK(tasks.size() == expected_tasks(set, sel));
}

}  // TEST_SUITE
