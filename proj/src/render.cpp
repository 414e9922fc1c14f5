#include "eyeball/render.hpp"

#include <cstdio>
#include <vector>

#include "eyeball/matrix.hpp"

namespace eyeball {

namespace {

constexpr double kSide = 600.0;
constexpr double kLeft = 90.0;
constexpr double kTop = 90.0;
constexpr double kBottom = 60.0;
constexpr double kRight = 20.0;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  const int n = std::snprintf(buf, sizeof buf, format, args...);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace

std::string_view fill_color(LocalityVerdict v) noexcept {
  switch (v) {
    case LocalityVerdict::InCountry: return palette::kInCountry;
    case LocalityVerdict::OutOfCountry: return palette::kOutOfCountry;
    case LocalityVerdict::NoCoverage: return palette::kNoCoverage;
    case LocalityVerdict::Inconsistent:
    case LocalityVerdict::Undetermined: return palette::kInconsistent;
  }
  return palette::kInconsistent;
}

std::string_view stroke_color(DirectnessVerdict v) noexcept {
  switch (v) {
    case DirectnessVerdict::Indirect: return palette::kIndirectBorder;
    case DirectnessVerdict::Mixed: return palette::kMixedBorder;
    default: return {};
  }
}

std::string render_svg(const EyeballMatrix& matrix) {
  const auto& set = matrix.eyeballSet();
  const auto& nets = set.networks();
  const auto n = nets.size();
  const double covered = set.coveredFraction();

  // Offsets of each row/column along the examined square.
  std::vector<double> offset(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double share = covered > 0.0 ? nets[i].userFraction / covered : 0.0;
    offset[i + 1] = offset[i] + share * kSide;
  }

  const double width = kLeft + kSide + kRight;
  const double height = kTop + kSide + kBottom;
  std::string out;
  out += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
             width, height, width, height);
  out += "<style>text{font-family:sans-serif;font-size:9px}</style>\n";
  out += fmt("<text x=\"%.2f\" y=\"16\" style=\"font-size:13px\">Eyeball AS-to-AS matrix: %s</text>\n", kLeft,
             set.country().str().c_str());
  out += fmt("<text x=\"%.2f\" y=\"30\">rows: source AS, columns: destination AS</text>\n", kLeft);

  out += "<g id=\"cells\">\n";
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto& cell = matrix.at(r, c);
      const auto stroke = stroke_color(cell.directness);
      out += fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\"", kLeft + offset[c],
                 kTop + offset[r], offset[c + 1] - offset[c], offset[r + 1] - offset[r],
                 std::string(fill_color(cell.locality)).c_str());
      if (stroke.empty()) {
        out += " stroke=\"none\"";
      } else {
        out += fmt(" stroke=\"%s\" stroke-width=\"1.5\"", std::string(stroke).c_str());
      }
      out += fmt("><title>AS%s -&gt; AS%s: %s, %s</title></rect>\n", cell.srcAsn.str().c_str(),
                 cell.dstAsn.str().c_str(), std::string(to_string(cell.locality)).c_str(),
                 std::string(to_string(cell.directness)).c_str());
    }
  }
  out += "</g>\n<g id=\"row-labels\">\n";
  for (std::size_t r = 0; r < n; ++r) {
    out += fmt("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" dominant-baseline=\"middle\">AS%s</text>\n",
               kLeft - 4.0, kTop + (offset[r] + offset[r + 1]) / 2.0, nets[r].asn.str().c_str());
  }
  out += "</g>\n<g id=\"column-labels\">\n";
  for (std::size_t c = 0; c < n; ++c) {
    const double x = kLeft + (offset[c] + offset[c + 1]) / 2.0;
    const double y = kTop - 4.0;
    out += fmt("<text x=\"%.2f\" y=\"%.2f\" transform=\"rotate(-90 %.2f %.2f)\" dominant-baseline=\"middle\">AS%s</text>\n",
               x, y, x, y, nets[c].asn.str().c_str());
  }
  out += "</g>\n";
  out += fmt("<text x=\"%.2f\" y=\"%.2f\">Networks shown serve %s of users; %s of user pairs not examined.</text>\n",
             kLeft, kTop + kSide + 24.0, format_percent(covered).c_str(),
             format_percent(1.0 - covered * covered).c_str());
  out += "</svg>\n";
  return out;
}

}  // namespace eyeball
