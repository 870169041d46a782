#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "onion/geometry.hpp"

namespace onion {

/// Per-dimension variances; both must be strictly positive.
struct Variances2 {
  double var_x = 1.0;
  double var_y = 1.0;
};

/// Symmetric positive-definite 2x2 covariance with its inverse precomputed.
///
/// Near-singular input is regularized by adding a ridge to the diagonal:
/// 1e-8 times half the trace (or 1e-8 when the trace is zero), escalated
/// tenfold at most three times. If the matrix is still not positive definite
/// construction fails with InvalidParameter.
class Covariance2 {
 public:
  static Covariance2 from_matrix(double sxx, double sxy, double syy, Point2 mean = {});
  static Covariance2 identity() { return from_matrix(1.0, 0.0, 1.0); }

  double sxx() const noexcept { return sxx_; }
  double sxy() const noexcept { return sxy_; }
  double syy() const noexcept { return syy_; }
  double inv_xx() const noexcept { return inv_xx_; }
  double inv_xy() const noexcept { return inv_xy_; }
  double inv_yy() const noexcept { return inv_yy_; }
  const Point2& mean() const noexcept { return mean_; }
  double determinant() const noexcept { return sxx_ * syy_ - sxy_ * sxy_; }

  /// Diagonal ridge that was added during construction (0 when none).
  double ridge() const noexcept { return ridge_; }
  bool regularized() const noexcept { return ridge_ > 0.0; }

  /// (d)^T Sigma^-1 (d) for a difference vector d.
  double quadratic_form(double dx, double dy) const noexcept {
    return inv_xx_ * dx * dx + 2.0 * inv_xy_ * dx * dy + inv_yy_ * dy * dy;
  }

 private:
  Covariance2() = default;

  double sxx_ = 0.0, sxy_ = 0.0, syy_ = 0.0;
  double inv_xx_ = 0.0, inv_xy_ = 0.0, inv_yy_ = 0.0;
  double ridge_ = 0.0;
  Point2 mean_;
};

enum class MetricKind { Euclidean, StandardizedEuclidean, Mahalanobis };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view text);

double euclidean(const Point2& x, const Point2& y);
double standardized_euclidean(const Point2& x, const Point2& y, const Variances2& v);
double mahalanobis(const Point2& x, const Point2& y, const Covariance2& cov);

Point2 sample_mean(std::span<const Point2> points);

/// Sample variances with 1/(n-1) normalization. Needs at least 2 points.
Variances2 sample_variances(std::span<const Point2> points);

/// Sample mean and 1/(n-1) covariance, accumulated in a single Welford pass.
/// Throws InsufficientData for fewer than 3 points.
Covariance2 estimate_covariance(std::span<const Point2> points);

/// Divides each coordinate by its dimension's sample standard deviation.
/// The data is not recentred. Throws InvalidData on a zero-variance dimension.
std::vector<Point2> standardize(std::span<const Point2> points);

/// A metric bound to the statistics it needs, fixed at construction.
class Metric {
 public:
  static Metric euclidean();
  static Metric standardized(Variances2 variances);
  static Metric mahalanobis(Covariance2 covariance);

  /// Builds the metric from whole-dataset statistics.
  static Metric fit(MetricKind kind, std::span<const Point2> points);

  MetricKind kind() const noexcept { return kind_; }
  double operator()(const Point2& a, const Point2& b) const noexcept;

 private:
  Metric(MetricKind kind, Variances2 variances, Covariance2 covariance)
      : kind_(kind), variances_(variances), covariance_(covariance) {}

  MetricKind kind_;
  Variances2 variances_;
  Covariance2 covariance_;
};

}  // namespace onion
