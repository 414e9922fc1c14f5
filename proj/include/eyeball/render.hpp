#pragma once

#include <string>
#include <string_view>

#include "eyeball/model.hpp"

namespace eyeball {

namespace palette {
inline constexpr std::string_view kInCountry = "#2ca02c";
inline constexpr std::string_view kOutOfCountry = "#ff7f0e";
inline constexpr std::string_view kNoCoverage = "#d3d3d3";
inline constexpr std::string_view kInconsistent = "#000000";
inline constexpr std::string_view kIndirectBorder = "#d62728";
inline constexpr std::string_view kMixedBorder = "#1f77b4";
}  // namespace palette

std::string_view fill_color(LocalityVerdict v) noexcept;
/// Empty when the cell has no border.
std::string_view stroke_color(DirectnessVerdict v) noexcept;

/// SVG of the AS-to-AS matrix. Row heights and column widths follow each
/// network's share of the examined users; output is byte-stable.
std::string render_svg(const EyeballMatrix& matrix);

}  // namespace eyeball
