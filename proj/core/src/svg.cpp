#include "onion/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "onion/error.hpp"

namespace onion {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Viewport {
  double min_x, min_y, scale_x, scale_y;
  int margin, height;

  double px(const Point2& p) const { return margin + (p.x - min_x) * scale_x; }
  double py(const Point2& p) const { return height - margin - (p.y - min_y) * scale_y; }
};

Viewport fit(std::span<const Point2> points, const SvgOptions& options) {
  double min_x = points.front().x, max_x = min_x;
  double min_y = points.front().y, max_y = min_y;
  for (const Point2& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span_x = max_x > min_x ? max_x - min_x : 1.0;
  const double span_y = max_y > min_y ? max_y - min_y : 1.0;
  const double inner_w = std::max(1, options.width - 2 * options.margin);
  const double inner_h = std::max(1, options.height - 2 * options.margin);
  return {min_x, min_y, inner_w / span_x, inner_h / span_y, options.margin, options.height};
}

}  // namespace

std::string render_svg(std::span<const Point2> points, std::span<const std::size_t> outlier_ids,
                       std::span<const Hull> rings, const SvgOptions& options) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (points.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  require_finite(points);
  const Viewport view = fit(points, options);

  out << "<g fill=\"none\" stroke=\"#4a7ab5\" stroke-width=\"1\">\n";
  for (const Hull& ring : rings) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < ring.vertex_ids.size(); ++i) {
      const Point2& p = points[ring.vertex_ids[i]];
      out << (i ? " " : "") << num(view.px(p)) << ',' << num(view.py(p));
    }
    out << "\"/>\n";
  }
  out << "</g>\n";

  std::vector<char> is_outlier(points.size(), 0);
  for (std::size_t id : outlier_ids) {
    if (id >= points.size()) throw Error(ErrorCode::InvalidInput, "outlier id out of range");
    is_outlier[id] = 1;
  }

  out << "<g fill=\"#808080\">\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (is_outlier[i]) continue;
    out << "<circle cx=\"" << num(view.px(points[i])) << "\" cy=\"" << num(view.py(points[i]))
        << "\" r=\"" << num(options.point_radius) << "\"/>\n";
  }
  out << "</g>\n";

  const double arm = 2.5 * options.point_radius;
  out << "<g stroke=\"#d62728\" stroke-width=\"2\">\n";
  for (std::size_t id : outlier_ids) {
    const double x = view.px(points[id]);
    const double y = view.py(points[id]);
    out << "<path d=\"M" << num(x - arm) << ',' << num(y - arm) << 'L' << num(x + arm) << ','
        << num(y + arm) << 'M' << num(x - arm) << ',' << num(y + arm) << 'L' << num(x + arm)
        << ',' << num(y - arm) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace onion
