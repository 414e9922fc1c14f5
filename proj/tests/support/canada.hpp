#pragma once

// The bundled Canada-like snapshot and its hand-derived cell verdicts.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eyeball/model.hpp"
#include "support/files.hpp"

namespace eyeball::testing {

struct ExpectedVerdict {
  LocalityVerdict locality;
  DirectnessVerdict directness;
};

inline fs::path canada_dir() { return fs::path(EYEBALL_FIXTURE_DIR) / "canada"; }

inline std::map<AsPair, ExpectedVerdict> canada_expected_cells() {
  std::istringstream in(read_file(canada_dir() / "expected_cells.csv"));
  std::string line;
  std::getline(in, line);
  std::map<AsPair, ExpectedVerdict> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string src, dst, loc, dir;
    std::getline(row, src, ',');
    std::getline(row, dst, ',');
    std::getline(row, loc, ',');
    std::getline(row, dir, ',');
    const auto l = parse_locality_verdict(loc);
    const auto d = parse_directness_verdict(dir);
    if (!l || !d) throw std::runtime_error("bad expected cell: " + line);
    out.emplace(AsPair{AsNumber(std::stoul(src)), AsNumber(std::stoul(dst))}, ExpectedVerdict{*l, *d});
  }
  return out;
}

/// Number of cells whose verdicts differ from the expectation; every cell of
/// the matrix must appear in `expected`.
template <typename Matrix, typename Expected>
std::size_t count_mismatches(const Matrix& m, const Expected& expected) {
  std::size_t bad = 0;
  std::size_t seen = 0;
  for (const auto& c : m.cells()) {
    ++seen;
    auto it = expected.find(AsPair{c.srcAsn, c.dstAsn});
    if (it == expected.end() || it->second.locality != c.locality || it->second.directness != c.directness) ++bad;
  }
  return bad + (expected.size() > seen ? expected.size() - seen : 0);
}

}  // namespace eyeball::testing
