#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eyeball/model.hpp"
#include "eyeball/probe_selection.hpp"

namespace eyeball {

class UnknownAsnInVerdicts : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using VerdictMap = std::map<AsPair, CellVerdict>;

/// Assembles the n*n matrix in eyeball-set order. Pairs touching a network
/// absent from `selection` become NoCoverage; covered pairs without a
/// verdict become Undetermined. Area weights are recomputed from the set.
EyeballMatrix build_matrix(const EyeballSet& eyeballs, const ProbeSelection& selection, const VerdictMap& verdicts,
                           std::int64_t generatedAt = 0);

/// Area of each verdict category relative to all ordered user pairs of the
/// country. Rows are summed in parallel; the row totals are then added in
/// order, so the result does not depend on the thread count.
MetricsSummary compute_metrics(const EyeballMatrix& matrix);

/// Serial reference for compute_metrics.
MetricsSummary compute_metrics_reference(const EyeballMatrix& matrix);

struct Asymmetry {
  AsNumber a;
  AsNumber b;
  LocalityVerdict forward;
  LocalityVerdict backward;
};

/// Pairs (a,b), a before b in set order, whose two directions disagree.
std::vector<Asymmetry> find_asymmetries(const EyeballMatrix& matrix);

/// Report lines: one per category ("in-country: 47.1%"), then asymmetries.
std::vector<std::string> summarize(const EyeballMatrix& matrix, const MetricsSummary& metrics);

/// Percentage with one decimal, e.g. 0.471 -> "47.1%".
std::string format_percent(double fraction);

}  // namespace eyeball
