#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace onion {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

bool is_finite(const Point2& p) noexcept;

/// Throws InvalidInput if any coordinate is NaN or infinite.
void require_finite(std::span<const Point2> points);

enum class Orientation { CounterClockwise, Clockwise, Collinear };

/// Twice the signed area of the triangle (o, a, b); positive for a left turn.
double cross(const Point2& o, const Point2& a, const Point2& b) noexcept;

/// Absolute collinearity band for a point set: 1e-12 times the squared
/// bounding-box extent.
double orientation_tolerance(std::span<const Point2> points) noexcept;

/// Classifies the turn p -> q -> r. The collinear band is derived from the
/// extent of the three points themselves.
Orientation orientation(const Point2& p, const Point2& q, const Point2& r);
Orientation orientation(const Point2& p, const Point2& q, const Point2& r, double tolerance);

/// A convex polygon over an external point list.
///
/// `vertex_ids` is a counter-clockwise ring starting at the rightmost-lowest
/// point. Boundary points that are collinear with a hull edge are not
/// vertices. Exact duplicates of a vertex are folded into it; their indices
/// are listed in `coincident_ids` so callers can account for every input.
struct Hull {
  std::vector<std::size_t> vertex_ids;
  std::vector<std::size_t> coincident_ids;
  double area = 0.0;

  std::size_t size() const noexcept { return vertex_ids.size(); }
};

/// Graham scan over all of `points`.
/// Throws DegenerateInput for fewer than 3 distinct points or a collinear set.
Hull convex_hull(std::span<const Point2> points);

/// Graham scan over the listed subset; returned ids index into `points`.
Hull convex_hull(std::span<const Point2> points, std::span<const std::size_t> subset);

/// Like convex_hull, but returns nullopt instead of throwing when the subset
/// has fewer than 3 distinct points or is collinear.
std::optional<Hull> try_convex_hull(std::span<const Point2> points,
                                    std::span<const std::size_t> subset);

/// Shoelace area of the hull ring. Rings with fewer than 3 vertices have area 0.
double hull_area(const Hull& hull, std::span<const Point2> points);

/// Inside-or-on test against the hull polygon, with an absolute tolerance on
/// the edge cross products.
bool hull_contains(const Hull& hull, std::span<const Point2> points, const Point2& q,
                   double tolerance);

/// Convex layers, outermost first.
struct PeelDecomposition {
  std::vector<Hull> layers;
  // Points left once fewer than 3 distinct points remain or the rest are collinear.
  std::vector<std::size_t> residual_ids;
};

PeelDecomposition onion_peel(std::span<const Point2> points);

/// Layer index for every input point; residual points get -1.
std::vector<int> peel_depths(const PeelDecomposition& peel, std::size_t n);

}  // namespace onion
