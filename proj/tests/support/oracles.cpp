#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "onion/error.hpp"

namespace onion::testing {
namespace {

double turn(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  const double d1 = turn(a, b, p);
  const double d2 = turn(b, c, p);
  const double d3 = turn(c, a, p);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (turn(a, b, p) != 0.0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

std::vector<std::size_t> brute_force_hull_vertices(const std::vector<Point2>& points,
                                                   const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> vertices;
  for (std::size_t p : subset) {
    bool covered = false;
    for (std::size_t i = 0; i < subset.size() && !covered; ++i) {
      const std::size_t a = subset[i];
      if (a == p) continue;
      for (std::size_t j = i + 1; j < subset.size() && !covered; ++j) {
        const std::size_t b = subset[j];
        if (b == p) continue;
        if (on_segment(points[p], points[a], points[b])) {
          covered = true;
          break;
        }
        for (std::size_t l = j + 1; l < subset.size(); ++l) {
          const std::size_t c = subset[l];
          if (c == p) continue;
          if (in_triangle(points[p], points[a], points[b], points[c])) {
            covered = true;
            break;
          }
        }
      }
    }
    if (!covered) vertices.push_back(p);
  }
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

std::vector<std::size_t> brute_force_hull_vertices(const std::vector<Point2>& points) {
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return brute_force_hull_vertices(points, all);
}

double brute_force_polygon_area(const std::vector<Point2>& points,
                                const std::vector<std::size_t>& ids) {
  if (ids.size() < 3) return 0.0;
  double cx = 0.0, cy = 0.0;
  for (std::size_t id : ids) {
    cx += points[id].x;
    cy += points[id].y;
  }
  cx /= static_cast<double>(ids.size());
  cy /= static_cast<double>(ids.size());
  std::vector<std::size_t> ring(ids);
  std::sort(ring.begin(), ring.end(), [&](std::size_t a, std::size_t b) {
    return std::atan2(points[a].y - cy, points[a].x - cx) <
           std::atan2(points[b].y - cy, points[b].x - cx);
  });
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2& p = points[ring[i]];
    const Point2& q = points[ring[(i + 1) % ring.size()]];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(twice);
}

NaiveCovariance naive_covariance(const std::vector<Point2>& points) {
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const Point2& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Point2& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  return {mx, my, sxx / (n - 1.0), sxy / (n - 1.0), syy / (n - 1.0)};
}

OutlierReport reference_detect(const std::vector<Point2>& input, const DetectionConfig& config) {
  if (input.size() <= config.k) throw Error(ErrorCode::Precondition, "size <= k");

  std::vector<Point2> points = input;
  if (config.standardize_first) {
    const NaiveCovariance c = naive_covariance(input);
    for (Point2& p : points) p = {p.x / std::sqrt(c.sxx), p.y / std::sqrt(c.syy)};
  }
  const NaiveCovariance stats = naive_covariance(points);
  const double det = stats.sxx * stats.syy - stats.sxy * stats.sxy;
  const double ixx = stats.syy / det, ixy = -stats.sxy / det, iyy = stats.sxx / det;

  auto distance = [&](const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    switch (config.metric) {
      case MetricKind::Euclidean: return std::sqrt(dx * dx + dy * dy);
      case MetricKind::StandardizedEuclidean:
        return std::sqrt(dx * dx / stats.sxx + dy * dy / stats.syy);
      case MetricKind::Mahalanobis:
        return std::sqrt(dx * (ixx * dx + ixy * dy) + dy * (ixy * dx + iyy * dy));
    }
    return 0.0;
  };

  OutlierReport report;
  report.config = config;
  std::vector<std::size_t> survivors(points.size());
  std::iota(survivors.begin(), survivors.end(), std::size_t{0});

  while (true) {
    const auto vertices =
        survivors.size() >= 3 ? brute_force_hull_vertices(points, survivors)
                              : std::vector<std::size_t>{};
    if (vertices.size() < 3) {
      report.early_termination = report.outlier_ids.size() < config.k;
      break;
    }
    report.volumes.push_back(brute_force_polygon_area(points, vertices));
    if (report.outlier_ids.size() == config.k) break;

    double cx = 0.0, cy = 0.0;
    for (std::size_t id : survivors) {
      cx += points[id].x;
      cy += points[id].y;
    }
    const Point2 center{cx / static_cast<double>(survivors.size()),
                        cy / static_cast<double>(survivors.size())};

    std::size_t best = vertices.front();
    double best_score = -1.0;
    for (std::size_t v : vertices) {  // ascending ids: strict > keeps the lowest on ties
      double score = 0.0;
      if (config.scoring == Scoring::DistanceToCenter) {
        score = distance(points[v], center);
      } else {
        for (std::size_t other : survivors) {
          if (other != v) score += distance(points[v], points[other]);
        }
      }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    report.outlier_ids.push_back(best);
    report.scores.push_back(best_score);

    if (config.removal == Removal::SinglePoint) {
      std::erase(survivors, best);
    } else {
      std::erase_if(survivors, [&](std::size_t id) {
        return std::binary_search(vertices.begin(), vertices.end(), id);
      });
    }
  }
  return report;
}

std::vector<Point2> uniform_box(std::mt19937_64& rng, std::size_t n, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u(rng);
    out.push_back({x, u(rng)});
  }
  return out;
}

std::vector<Point2> uniform_disk(std::mt19937_64& rng, std::size_t n, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point2> out;
  while (out.size() < n) {
    const double x = u(rng);
    const double y = u(rng);
    if (x * x + y * y <= 1.0) out.push_back({radius * x, radius * y});
  }
  return out;
}

std::vector<Point2> gaussian_cloud(std::mt19937_64& rng, std::size_t n, double sx, double sy) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sx * z(rng);
    out.push_back({x, sy * z(rng)});
  }
  return out;
}

std::vector<DetectionConfig> all_configs(std::size_t k) {
  std::vector<DetectionConfig> configs;
  for (MetricKind metric :
       {MetricKind::Euclidean, MetricKind::StandardizedEuclidean, MetricKind::Mahalanobis}) {
    for (Scoring scoring : {Scoring::SumToAll, Scoring::DistanceToCenter}) {
      for (Removal removal : {Removal::SinglePoint, Removal::WholeHull}) {
        DetectionConfig c;
        c.k = k;
        c.metric = metric;
        c.scoring = scoring;
        c.removal = removal;
        configs.push_back(c);
      }
    }
  }
  return configs;
}

}  // namespace onion::testing
