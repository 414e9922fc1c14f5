#include "eyeball/matrix.hpp"

#include <cstdio>

#include "eyeball/path_analysis.hpp"

namespace eyeball {

EyeballMatrix build_matrix(const EyeballSet& eyeballs, const ProbeSelection& selection, const VerdictMap& verdicts,
                           std::int64_t generatedAt) {
  for (const auto& [pair, verdict] : verdicts) {
    if (!eyeballs.indexOf(pair.first) || !eyeballs.indexOf(pair.second)) {
      throw UnknownAsnInVerdicts("verdict for AS" + pair.first.str() + " -> AS" + pair.second.str() +
                                 " references a network outside the eyeball set");
    }
    if (!selection.covers(pair.first) || !selection.covers(pair.second)) {
      throw std::invalid_argument("verdict given for uncovered pair AS" + pair.first.str() + " -> AS" +
                                  pair.second.str());
    }
  }

  const auto& nets = eyeballs.networks();
  std::vector<CellVerdict> cells;
  cells.reserve(nets.size() * nets.size());
  for (const auto& src : nets) {
    for (const auto& dst : nets) {
      CellVerdict cell;
      const bool covered = selection.covers(src.asn) && selection.covers(dst.asn);
      if (auto it = verdicts.find({src.asn, dst.asn}); covered && it != verdicts.end()) {
        cell = it->second;
      } else {
        cell = classify_pair({}, covered, src.asn, dst.asn);
      }
      cell.srcAsn = src.asn;
      cell.dstAsn = dst.asn;
      cell.areaWeight = src.userFraction * dst.userFraction;
      cells.push_back(std::move(cell));
    }
  }
  return EyeballMatrix(eyeballs, std::move(cells), generatedAt);
}

namespace {

struct Areas {
  double in = 0, out = 0, noCoverage = 0, inconsistent = 0, undetermined = 0, indirect = 0, mixed = 0;

  void add(const CellVerdict& c) {
    switch (c.locality) {
      case LocalityVerdict::InCountry: in += c.areaWeight; break;
      case LocalityVerdict::OutOfCountry: out += c.areaWeight; break;
      case LocalityVerdict::NoCoverage: noCoverage += c.areaWeight; break;
      case LocalityVerdict::Inconsistent: inconsistent += c.areaWeight; break;
      case LocalityVerdict::Undetermined: undetermined += c.areaWeight; break;
    }
    if (c.directness == DirectnessVerdict::Indirect) indirect += c.areaWeight;
    if (c.directness == DirectnessVerdict::Mixed) mixed += c.areaWeight;
  }

  void add(const Areas& o) {
    in += o.in;
    out += o.out;
    noCoverage += o.noCoverage;
    inconsistent += o.inconsistent;
    undetermined += o.undetermined;
    indirect += o.indirect;
    mixed += o.mixed;
  }
};

MetricsSummary finish(const EyeballMatrix& matrix, const Areas& a) {
  double covered = 0.0;
  for (const auto& n : matrix.eyeballSet().networks()) covered += n.userFraction;
  MetricsSummary m;
  m.inCountryArea = a.in;
  m.outOfCountryArea = a.out;
  m.noCoverageArea = a.noCoverage;
  m.inconsistentArea = a.inconsistent;
  m.undeterminedArea = a.undetermined;
  m.unexaminedArea = 1.0 - covered * covered;
  m.indirectArea = a.indirect;
  m.mixedArea = a.mixed;
  return m;
}

}  // namespace

MetricsSummary compute_metrics(const EyeballMatrix& matrix) {
  const auto n = static_cast<std::ptrdiff_t>(matrix.dimension());
  std::vector<Areas> rows(static_cast<std::size_t>(n));
  const auto& cells = matrix.cells();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    for (std::ptrdiff_t c = 0; c < n; ++c) rows[r].add(cells[r * n + c]);
  }
  Areas total;
  for (const auto& row : rows) total.add(row);
  return finish(matrix, total);
}

MetricsSummary compute_metrics_reference(const EyeballMatrix& matrix) {
  Areas total;
  for (const auto& cell : matrix.cells()) total.add(cell);
  return finish(matrix, total);
}

std::vector<Asymmetry> find_asymmetries(const EyeballMatrix& matrix) {
  std::vector<Asymmetry> out;
  const auto n = matrix.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& fwd = matrix.at(i, j);
      const auto& bwd = matrix.at(j, i);
      if (fwd.locality != bwd.locality) out.push_back({fwd.srcAsn, fwd.dstAsn, fwd.locality, bwd.locality});
    }
  }
  return out;
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", fraction * 100.0);
  return buf;
}

std::vector<std::string> summarize(const EyeballMatrix& matrix, const MetricsSummary& m) {
  std::vector<std::string> lines = {
      "in-country: " + format_percent(m.inCountryArea),
      "out-of-country: " + format_percent(m.outOfCountryArea),
      "no-coverage: " + format_percent(m.noCoverageArea),
      "inconsistent: " + format_percent(m.inconsistentArea),
      "undetermined: " + format_percent(m.undeterminedArea),
      "unexamined: " + format_percent(m.unexaminedArea),
      "indirect: " + format_percent(m.indirectArea),
      "mixed-directness: " + format_percent(m.mixedArea),
  };
  const auto asym = find_asymmetries(matrix);
  lines.push_back("asymmetries: " + std::to_string(asym.size()));
  for (const auto& a : asym) {
    lines.push_back("  AS" + a.a.str() + " -> AS" + a.b.str() + " " + std::string(to_string(a.forward)) + ", AS" +
                    a.b.str() + " -> AS" + a.a.str() + " " + std::string(to_string(a.backward)));
  }
  return lines;
}

}  // namespace eyeball
