#pragma once

// Text encodings of pipeline results. Every writer is deterministic: fixed
// key order, fixed row order, and no wall-clock values.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eyeball/coverage.hpp"
#include "eyeball/model.hpp"
#include "eyeball/plan.hpp"
#include "eyeball/probe_selection.hpp"

namespace eyeball {

std::string eyeball_set_json(const EyeballSet& set);
/// Throws IngestError on malformed input, std::invalid_argument on a set
/// that violates its invariants.
EyeballSet parse_eyeball_set_json(std::string_view text);

std::string coverage_json(const CoverageReport& report);
std::string coverage_world_csv(std::span<const WorldCoverageRow> rows);

std::string probe_selection_json(const EyeballSet& eyeballs, const ProbeSelection& selection);
std::string plan_json(const CountryCode& country, std::span<const PlanTask> tasks);

std::string matrix_json(const EyeballMatrix& matrix);
/// Inverse of matrix_json; area weights are recomputed from the set.
EyeballMatrix parse_matrix_json(std::string_view text);
/// Sidecar carrying the generation time kept out of matrix_json.
std::string matrix_meta_json(const EyeballMatrix& matrix);

std::string metrics_csv(const MetricsSummary& metrics);

}  // namespace eyeball
