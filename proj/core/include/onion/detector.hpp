#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "onion/geometry.hpp"
#include "onion/metrics.hpp"

namespace onion {

enum class Scoring {
  SumToAll,          // total distance from a hull vertex to every other survivor
  DistanceToCenter,  // distance from a hull vertex to the survivors' mean
};

enum class Removal {
  SinglePoint,  // drop only the selected outlier before the next hull
  WholeHull,    // drop every vertex of the current hull
};

std::string_view to_string(Scoring scoring);
std::string_view to_string(Removal removal);
Scoring parse_scoring(std::string_view text);
Removal parse_removal(std::string_view text);

struct DetectionConfig {
  std::size_t k = 15;
  MetricKind metric = MetricKind::Euclidean;
  Scoring scoring = Scoring::SumToAll;
  Removal removal = Removal::SinglePoint;
  // Divide each dimension by its standard deviation once, before peeling.
  bool standardize_first = false;

  friend bool operator==(const DetectionConfig&, const DetectionConfig&) = default;
};

struct ScoredVertex {
  std::size_t point_id = 0;
  double score = 0.0;
  std::size_t iteration = 0;
};

/// Result of detect().
///
/// `outlier_ids[i]` and `scores[i]` come from iteration i and were chosen from
/// the hull whose area is `volumes[i]`. Every hull computed is recorded, so a
/// run that finds all k outliers normally has k + 1 volumes; the last one is
/// the hull left after the final removal (omitted if that remainder is
/// degenerate). `early_termination` is set when the survivors stopped forming
/// a hull before k outliers were found.
struct OutlierReport {
  std::vector<std::size_t> outlier_ids;
  std::vector<double> volumes;
  std::vector<double> scores;
  DetectionConfig config;
  bool early_termination = false;

  friend bool operator==(const OutlierReport&, const OutlierReport&) = default;
};

/// Scores every vertex of `hull`. `points` is the full working point list,
/// `survivors` the ids still in play (the hull must be built over them).
std::vector<ScoredVertex> score_hull_vertices(const Hull& hull, std::span<const Point2> points,
                                              std::span<const std::size_t> survivors,
                                              const Metric& metric, Scoring scoring,
                                              std::size_t iteration = 0);

/// Highest score wins; equal scores go to the lowest point id.
/// Throws Internal on an empty list.
ScoredVertex select_max(std::span<const ScoredVertex> scored);

/// Iterative hull-based top-k outlier search.
///
/// Standardization and the metric's statistics (variances or covariance) are
/// computed once from the full input. Each iteration hulls the survivors,
/// scores the hull vertices, takes the best one as the next outlier and then
/// removes points according to `config.removal`.
///
/// Throws Precondition when points.size() <= k and DegenerateInput for fewer
/// than 3 points.
OutlierReport detect(std::span<const Point2> points, const DetectionConfig& config);

}  // namespace onion
