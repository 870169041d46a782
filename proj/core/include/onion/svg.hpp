#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "onion/geometry.hpp"

namespace onion {

struct SvgOptions {
  int width = 640;
  int height = 640;
  int margin = 24;
  double point_radius = 2.0;
};

/// Scatter plot with outliers drawn as red crosses and optional hull rings
/// underneath. Each axis is scaled independently to fill the canvas. Output
/// is byte-stable for identical inputs.
std::string render_svg(std::span<const Point2> points, std::span<const std::size_t> outlier_ids,
                       std::span<const Hull> rings, const SvgOptions& options = {});

}  // namespace onion
