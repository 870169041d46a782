#include "onion/detector.hpp"

#include <numeric>
#include <string>

#include "onion/error.hpp"

namespace onion {

std::string_view to_string(Scoring scoring) {
  return scoring == Scoring::SumToAll ? "sum" : "center";
}

std::string_view to_string(Removal removal) {
  return removal == Removal::SinglePoint ? "point" : "hull";
}

Scoring parse_scoring(std::string_view text) {
  if (text == "sum") return Scoring::SumToAll;
  if (text == "center") return Scoring::DistanceToCenter;
  throw Error(ErrorCode::InvalidParameter, "unknown scoring '" + std::string(text) + "'");
}

Removal parse_removal(std::string_view text) {
  if (text == "point") return Removal::SinglePoint;
  if (text == "hull") return Removal::WholeHull;
  throw Error(ErrorCode::InvalidParameter, "unknown removal '" + std::string(text) + "'");
}

std::vector<ScoredVertex> score_hull_vertices(const Hull& hull, std::span<const Point2> points,
                                              std::span<const std::size_t> survivors,
                                              const Metric& metric, Scoring scoring,
                                              std::size_t iteration) {
  std::vector<ScoredVertex> scored;
  scored.reserve(hull.size());

  if (scoring == Scoring::DistanceToCenter) {
    Point2 center;
    double count = 0.0;
    for (std::size_t id : survivors) {
      count += 1.0;
      center.x += (points[id].x - center.x) / count;
      center.y += (points[id].y - center.y) / count;
    }
    for (std::size_t v : hull.vertex_ids) {
      scored.push_back({v, metric(points[v], center), iteration});
    }
    return scored;
  }

  for (std::size_t v : hull.vertex_ids) {
    const Point2& pv = points[v];
    double total = 0.0;
    for (std::size_t id : survivors) {
      if (id != v) total += metric(pv, points[id]);
    }
    scored.push_back({v, total, iteration});
  }
  return scored;
}

ScoredVertex select_max(std::span<const ScoredVertex> scored) {
  if (scored.empty()) throw Error(ErrorCode::Internal, "select_max on an empty score list");
  ScoredVertex best = scored.front();
  for (const ScoredVertex& s : scored.subspan(1)) {
    if (s.score > best.score || (s.score == best.score && s.point_id < best.point_id)) best = s;
  }
  return best;
}

OutlierReport detect(std::span<const Point2> points, const DetectionConfig& config) {
  if (points.size() <= config.k) {
    throw Error(ErrorCode::Precondition,
                "Size must be greater than outliers (" + std::to_string(points.size()) +
                    " points, k = " + std::to_string(config.k) + ")");
  }
  if (points.size() < 3) {
    throw Error(ErrorCode::DegenerateInput, "outlier search needs at least 3 points");
  }
  require_finite(points);

  std::vector<Point2> standardized;
  if (config.standardize_first) standardized = standardize(points);
  const std::span<const Point2> work =
      config.standardize_first ? std::span<const Point2>(standardized) : points;
  const Metric metric = Metric::fit(config.metric, work);

  OutlierReport report;
  report.config = config;

  std::vector<std::size_t> survivors(work.size());
  std::iota(survivors.begin(), survivors.end(), std::size_t{0});
  std::vector<char> removed(work.size(), 0);

  for (std::size_t iteration = 0;; ++iteration) {
    auto hull = survivors.size() >= 3 ? try_convex_hull(work, survivors) : std::nullopt;
    if (!hull) {
      report.early_termination = report.outlier_ids.size() < config.k;
      break;
    }
    report.volumes.push_back(hull->area);
    if (report.outlier_ids.size() == config.k) break;

    const auto scored = score_hull_vertices(*hull, work, survivors, metric, config.scoring,
                                            iteration);
    const ScoredVertex best = select_max(scored);
    report.outlier_ids.push_back(best.point_id);
    report.scores.push_back(best.score);

    if (config.removal == Removal::SinglePoint) {
      removed[best.point_id] = 1;
    } else {
      for (std::size_t id : hull->vertex_ids) removed[id] = 1;
      for (std::size_t id : hull->coincident_ids) removed[id] = 1;
    }
    std::erase_if(survivors, [&](std::size_t id) { return removed[id] != 0; });
  }
  return report;
}

}  // namespace onion
