#include "onion/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "onion/error.hpp"

namespace onion {
namespace {

constexpr double kRelativeOrientationTolerance = 1e-12;

double squared_distance(const Point2& a, const Point2& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

template <typename Ids>
double subset_tolerance(std::span<const Point2> points, const Ids& ids) noexcept {
  if (ids.empty()) return 0.0;
  double min_x = points[ids.front()].x, max_x = min_x;
  double min_y = points[ids.front()].y, max_y = min_y;
  for (std::size_t id : ids) {
    min_x = std::min(min_x, points[id].x);
    max_x = std::max(max_x, points[id].x);
    min_y = std::min(min_y, points[id].y);
    max_y = std::max(max_y, points[id].y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  return kRelativeOrientationTolerance * extent * extent;
}

// A point copied next to its id so sorts stay cache-local.
struct Site {
  Point2 p;
  std::size_t id;
};

// Exact duplicates collapse onto the lowest index. Returns representatives
// and fills `coincident` with (representative, duplicate) pairs.
std::vector<Site> dedupe(std::span<const Point2> points, std::span<const std::size_t> subset,
                         std::vector<std::pair<std::size_t, std::size_t>>& coincident) {
  std::vector<Site> order;
  order.reserve(subset.size());
  for (std::size_t id : subset) order.push_back({points[id], id});
  std::sort(order.begin(), order.end(), [](const Site& a, const Site& b) {
    if (a.p.x != b.p.x) return a.p.x < b.p.x;
    if (a.p.y != b.p.y) return a.p.y < b.p.y;
    return a.id < b.id;
  });
  std::vector<Site> unique;
  unique.reserve(order.size());
  for (const Site& s : order) {
    if (!unique.empty() && unique.back().p == s.p) {
      coincident.emplace_back(unique.back().id, s.id);
    } else {
      unique.push_back(s);
    }
  }
  return unique;
}

}  // namespace

bool is_finite(const Point2& p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

void require_finite(std::span<const Point2> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!is_finite(points[i])) {
      throw Error(ErrorCode::InvalidInput, "point " + std::to_string(i) + " is not finite");
    }
  }
}

double cross(const Point2& o, const Point2& a, const Point2& b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double orientation_tolerance(std::span<const Point2> points) noexcept {
  std::vector<std::size_t> ids(points.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return subset_tolerance(points, ids);
}

Orientation orientation(const Point2& p, const Point2& q, const Point2& r, double tolerance) {
  if (!is_finite(p) || !is_finite(q) || !is_finite(r)) {
    throw Error(ErrorCode::InvalidInput, "orientation of non-finite point");
  }
  const double c = cross(p, q, r);
  if (c > tolerance) return Orientation::CounterClockwise;
  if (c < -tolerance) return Orientation::Clockwise;
  return Orientation::Collinear;
}

Orientation orientation(const Point2& p, const Point2& q, const Point2& r) {
  const Point2 triple[] = {p, q, r};
  require_finite(triple);
  return orientation(p, q, r, orientation_tolerance(triple));
}

std::optional<Hull> try_convex_hull(std::span<const Point2> points,
                                    std::span<const std::size_t> subset) {
  for (std::size_t id : subset) {
    if (id >= points.size()) {
      throw Error(ErrorCode::InvalidInput, "point index " + std::to_string(id) + " out of range");
    }
    if (!is_finite(points[id])) {
      throw Error(ErrorCode::InvalidInput, "point " + std::to_string(id) + " is not finite");
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> coincident;
  std::vector<Site> sites = dedupe(points, subset, coincident);
  if (sites.size() < 3) return std::nullopt;

  // Sites are sorted by x, so only y needs a scan.
  const auto [lo_y, hi_y] = std::minmax_element(
      sites.begin(), sites.end(), [](const Site& a, const Site& b) { return a.p.y < b.p.y; });
  const double extent =
      std::max(sites.back().p.x - sites.front().p.x, hi_y->p.y - lo_y->p.y);
  const double tol = kRelativeOrientationTolerance * extent * extent;

  // Pivot: lowest y, rightmost among those.
  auto pivot_it = std::min_element(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    if (a.p.y != b.p.y) return a.p.y < b.p.y;
    return a.p.x > b.p.x;
  });
  std::iter_swap(sites.begin(), pivot_it);
  const Point2 pivot = sites.front().p;

  // Every other point lies at an angle in (0, pi] about the pivot, so the
  // cross product alone orders them. Collinear ties go nearest first.
  // stable_sort never reads out of range even if rounding makes the
  // comparator inconsistent on near-collinear input.
  std::stable_sort(sites.begin() + 1, sites.end(), [&](const Site& a, const Site& b) {
    const double c = cross(pivot, a.p, b.p);
    if (c > 0.0) return true;
    if (c < 0.0) return false;
    return squared_distance(pivot, a.p) < squared_distance(pivot, b.p);
  });

  // For ties, discard the closer points: keep only the farthest point on each ray.
  std::vector<std::size_t> sorted;
  sorted.reserve(sites.size());
  sorted.push_back(sites.front().id);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    const bool same_ray_as_next =
        i + 1 < sites.size() && std::abs(cross(pivot, sites[i].p, sites[i + 1].p)) <= tol &&
        squared_distance(pivot, sites[i].p) <= squared_distance(pivot, sites[i + 1].p);
    if (!same_ray_as_next) sorted.push_back(sites[i].id);
  }
  if (sorted.size() < 3) return std::nullopt;

  // Three-penny scan.
  std::vector<std::size_t> stack{sorted[0], sorted[1]};
  for (std::size_t i = 2; i < sorted.size();) {
    if (stack.size() == 1) {
      stack.push_back(sorted[i++]);
      continue;
    }
    const Point2& top = points[stack.back()];
    const Point2& below = points[stack[stack.size() - 2]];
    if (cross(below, top, points[sorted[i]]) > tol) {
      stack.push_back(sorted[i++]);
    } else {
      stack.pop_back();
    }
  }
  if (stack.size() < 3) return std::nullopt;

  Hull hull;
  hull.vertex_ids = std::move(stack);
  if (!coincident.empty()) {
    std::vector<std::size_t> reps(hull.vertex_ids);
    std::sort(reps.begin(), reps.end());
    for (const auto& [rep, dup] : coincident) {
      if (std::binary_search(reps.begin(), reps.end(), rep)) hull.coincident_ids.push_back(dup);
    }
    std::sort(hull.coincident_ids.begin(), hull.coincident_ids.end());
  }
  hull.area = hull_area(hull, points);
  return hull;
}

Hull convex_hull(std::span<const Point2> points, std::span<const std::size_t> subset) {
  if (subset.size() < 3) {
    throw Error(ErrorCode::DegenerateInput, "convex hull needs at least 3 points, got " +
                                                std::to_string(subset.size()));
  }
  auto hull = try_convex_hull(points, subset);
  if (!hull) {
    throw Error(ErrorCode::DegenerateInput,
                "points are collinear or have fewer than 3 distinct positions");
  }
  return std::move(*hull);
}

Hull convex_hull(std::span<const Point2> points) {
  std::vector<std::size_t> ids(points.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return convex_hull(points, ids);
}

double hull_area(const Hull& hull, std::span<const Point2> points) {
  for (std::size_t id : hull.vertex_ids) {
    if (id >= points.size()) {
      throw Error(ErrorCode::InvalidInput, "hull vertex " + std::to_string(id) + " out of range");
    }
  }
  const std::size_t m = hull.vertex_ids.size();
  if (m < 3) return 0.0;
  // Anchored at the first vertex to keep the terms small.
  const Point2& origin = points[hull.vertex_ids[0]];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    twice += cross(origin, points[hull.vertex_ids[i]], points[hull.vertex_ids[i + 1]]);
  }
  return 0.5 * std::abs(twice);
}

bool hull_contains(const Hull& hull, std::span<const Point2> points, const Point2& q,
                   double tolerance) {
  const std::size_t m = hull.vertex_ids.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = points[hull.vertex_ids[i]];
    const Point2& b = points[hull.vertex_ids[(i + 1) % m]];
    if (cross(a, b, q) < -tolerance) return false;
  }
  return true;
}

PeelDecomposition onion_peel(std::span<const Point2> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::DegenerateInput,
                "onion peeling needs at least 3 points, got " + std::to_string(points.size()));
  }
  require_finite(points);

  PeelDecomposition peel;
  std::vector<std::size_t> remaining(points.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<char> removed(points.size(), 0);

  while (remaining.size() >= 3) {
    auto hull = try_convex_hull(points, remaining);
    if (!hull) break;
    for (std::size_t id : hull->vertex_ids) removed[id] = 1;
    for (std::size_t id : hull->coincident_ids) removed[id] = 1;
    std::erase_if(remaining, [&](std::size_t id) { return removed[id] != 0; });
    peel.layers.push_back(std::move(*hull));
  }
  peel.residual_ids = std::move(remaining);
  return peel;
}

std::vector<int> peel_depths(const PeelDecomposition& peel, std::size_t n) {
  std::vector<int> depth(n, -1);
  for (std::size_t layer = 0; layer < peel.layers.size(); ++layer) {
    for (std::size_t id : peel.layers[layer].vertex_ids) depth.at(id) = static_cast<int>(layer);
    for (std::size_t id : peel.layers[layer].coincident_ids) depth.at(id) = static_cast<int>(layer);
  }
  return depth;
}

}  // namespace onion
