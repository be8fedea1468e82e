#pragma once

#include <string>
#include <vector>

#include "bloch/ptrans.hpp"
#include "bloch/sections.hpp"

namespace bloch {

inline constexpr int kSvgSize = 800;

/// SVG 1.1 plot of a two-parameter section: feasible region outlined, the
/// joint PPT region filled, each single condition dashed, and the parts of
/// the feasible boundary that satisfy every condition drawn in red. The
/// viewport spans +-bounding_radius(n) on both axes.
std::string pair_svg(const SectionSpec& spec, const std::vector<TransposeSpec>& conditions,
                     double target_error = 1e-6);

}  // namespace bloch
