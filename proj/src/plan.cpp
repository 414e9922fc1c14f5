#include "eyeball/plan.hpp"

#include <set>

namespace eyeball {

std::vector<PlanTask> build_plan(const EyeballSet& eyeballs, const ProbeSelection& selection) {
  std::vector<PlanTask> tasks;
  for (const auto& src : eyeballs.networks()) {
    auto s = selection.perAsn.find(src.asn);
    if (s == selection.perAsn.end()) continue;
    for (const auto& dst : eyeballs.networks()) {
      auto d = selection.perAsn.find(dst.asn);
      if (d == selection.perAsn.end()) continue;
      std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
      for (const Probe* from : {&s->second.closest, &s->second.farthest}) {
        for (const Probe* to : {&d->second.closest, &d->second.farthest}) {
          if (from->id == to->id || !seen.emplace(from->id, to->id).second) continue;
          tasks.push_back({src.asn, dst.asn, from->id, to->id, *to->publicAddressV4});
        }
      }
    }
  }
  return tasks;
}

}  // namespace eyeball
