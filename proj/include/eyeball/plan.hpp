#pragma once

#include <vector>

#include "eyeball/ip.hpp"
#include "eyeball/model.hpp"
#include "eyeball/probe_selection.hpp"

namespace eyeball {

/// One traceroute to launch: from a selected probe towards another
/// selected probe's public address.
struct PlanTask {
  AsNumber srcAsn;
  AsNumber dstAsn;
  std::uint64_t srcProbeId = 0;
  std::uint64_t dstProbeId = 0;
  IpAddress dstAddress;

  auto operator<=>(const PlanTask&) const = default;
};

/// Closest/farthest x closest/farthest tasks for every ordered pair of
/// covered networks (diagonal included). Duplicate probe combinations, and
/// tasks whose source and destination are the same probe, are dropped.
std::vector<PlanTask> build_plan(const EyeballSet& eyeballs, const ProbeSelection& selection);

}  // namespace eyeball
