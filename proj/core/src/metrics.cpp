#include "onion/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "onion/error.hpp"

namespace onion {
namespace {

constexpr double kRidgeScale = 1e-8;
constexpr int kRidgeEscalations = 3;
// Relative determinant floor: det <= kDetFloor * (trace/2)^2 counts as singular.
constexpr double kDetFloor = 1e-12;

void require_finite_pair(const Point2& x, const Point2& y) {
  if (!is_finite(x) || !is_finite(y)) {
    throw Error(ErrorCode::InvalidInput, "distance between non-finite points");
  }
}

bool positive_definite(double sxx, double sxy, double syy) {
  const double half_trace = 0.5 * (sxx + syy);
  const double det = sxx * syy - sxy * sxy;
  return sxx > 0.0 && syy > 0.0 && det > 0.0 && det > kDetFloor * half_trace * half_trace;
}

}  // namespace

Covariance2 Covariance2::from_matrix(double sxx, double sxy, double syy, Point2 mean) {
  if (!std::isfinite(sxx) || !std::isfinite(sxy) || !std::isfinite(syy) || !is_finite(mean)) {
    throw Error(ErrorCode::InvalidParameter, "covariance entries must be finite");
  }
  if (sxx < 0.0 || syy < 0.0) {
    throw Error(ErrorCode::InvalidParameter, "covariance diagonal must be nonnegative");
  }

  double ridge = 0.0;
  if (!positive_definite(sxx, sxy, syy)) {
    const double half_trace = 0.5 * (sxx + syy);
    ridge = kRidgeScale * (half_trace > 0.0 ? half_trace : 1.0);
    int escalation = 0;
    while (!positive_definite(sxx + ridge, sxy, syy + ridge)) {
      if (++escalation > kRidgeEscalations) {
        throw Error(ErrorCode::InvalidParameter,
                    "covariance is not positive definite after regularization");
      }
      ridge *= 10.0;
    }
  }

  Covariance2 cov;
  cov.sxx_ = sxx + ridge;
  cov.sxy_ = sxy;
  cov.syy_ = syy + ridge;
  cov.ridge_ = ridge;
  cov.mean_ = mean;
  const double det = cov.determinant();
  cov.inv_xx_ = cov.syy_ / det;
  cov.inv_xy_ = -cov.sxy_ / det;
  cov.inv_yy_ = cov.sxx_ / det;
  return cov;
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::StandardizedEuclidean: return "std-euclidean";
    case MetricKind::Mahalanobis: return "mahalanobis";
  }
  return "unknown";
}

MetricKind parse_metric_kind(std::string_view text) {
  if (text == "euclidean") return MetricKind::Euclidean;
  if (text == "std-euclidean") return MetricKind::StandardizedEuclidean;
  if (text == "mahalanobis") return MetricKind::Mahalanobis;
  throw Error(ErrorCode::InvalidParameter, "unknown metric '" + std::string(text) + "'");
}

double euclidean(const Point2& x, const Point2& y) {
  require_finite_pair(x, y);
  const double dx = x.x - y.x;
  const double dy = x.y - y.y;
  return std::sqrt(dx * dx + dy * dy);
}

double standardized_euclidean(const Point2& x, const Point2& y, const Variances2& v) {
  if (!(v.var_x > 0.0) || !(v.var_y > 0.0) || !std::isfinite(v.var_x) ||
      !std::isfinite(v.var_y)) {
    throw Error(ErrorCode::InvalidParameter, "variances must be finite and strictly positive");
  }
  require_finite_pair(x, y);
  const double dx = x.x - y.x;
  const double dy = x.y - y.y;
  return std::sqrt(dx * dx / v.var_x + dy * dy / v.var_y);
}

double mahalanobis(const Point2& x, const Point2& y, const Covariance2& cov) {
  if (!positive_definite(cov.sxx(), cov.sxy(), cov.syy())) {
    throw Error(ErrorCode::InvalidParameter, "covariance is not positive definite");
  }
  require_finite_pair(x, y);
  // Rounding can push a tiny quadratic form below zero.
  return std::sqrt(std::max(0.0, cov.quadratic_form(x.x - y.x, x.y - y.y)));
}

Point2 sample_mean(std::span<const Point2> points) {
  if (points.empty()) throw Error(ErrorCode::InsufficientData, "mean of an empty point set");
  Point2 mean;
  double count = 0.0;
  for (const Point2& p : points) {
    count += 1.0;
    mean.x += (p.x - mean.x) / count;
    mean.y += (p.y - mean.y) / count;
  }
  return mean;
}

Covariance2 estimate_covariance(std::span<const Point2> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::InsufficientData, "covariance needs at least 3 points, got " +
                                                 std::to_string(points.size()));
  }
  require_finite(points);

  // Welford / Chan co-moment update.
  double count = 0.0;
  double mean_x = 0.0, mean_y = 0.0;
  double m_xx = 0.0, m_xy = 0.0, m_yy = 0.0;
  for (const Point2& p : points) {
    count += 1.0;
    const double dx = p.x - mean_x;
    const double dy = p.y - mean_y;
    mean_x += dx / count;
    mean_y += dy / count;
    const double dx_after = p.x - mean_x;
    const double dy_after = p.y - mean_y;
    m_xx += dx * dx_after;
    m_xy += dx * dy_after;
    m_yy += dy * dy_after;
  }
  const double denom = count - 1.0;
  return Covariance2::from_matrix(m_xx / denom, m_xy / denom, m_yy / denom, {mean_x, mean_y});
}

Variances2 sample_variances(std::span<const Point2> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "variance needs at least 2 points");
  }
  require_finite(points);
  const Point2 mean = sample_mean(points);
  double sx = 0.0, sy = 0.0;
  for (const Point2& p : points) {
    sx += (p.x - mean.x) * (p.x - mean.x);
    sy += (p.y - mean.y) * (p.y - mean.y);
  }
  const double denom = static_cast<double>(points.size() - 1);
  return {sx / denom, sy / denom};
}

std::vector<Point2> standardize(std::span<const Point2> points) {
  const Variances2 v = sample_variances(points);
  if (!(v.var_x > 0.0) || !(v.var_y > 0.0)) {
    throw Error(ErrorCode::InvalidData, "cannot standardize a dimension with zero variance");
  }
  const double sx = std::sqrt(v.var_x);
  const double sy = std::sqrt(v.var_y);
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back({p.x / sx, p.y / sy});
  return out;
}

Metric Metric::euclidean() {
  return Metric(MetricKind::Euclidean, {}, Covariance2::identity());
}

Metric Metric::standardized(Variances2 variances) {
  if (!(variances.var_x > 0.0) || !(variances.var_y > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "variances must be strictly positive");
  }
  return Metric(MetricKind::StandardizedEuclidean, variances, Covariance2::identity());
}

Metric Metric::mahalanobis(Covariance2 covariance) {
  return Metric(MetricKind::Mahalanobis, {}, covariance);
}

Metric Metric::fit(MetricKind kind, std::span<const Point2> points) {
  switch (kind) {
    case MetricKind::Euclidean: return euclidean();
    case MetricKind::StandardizedEuclidean: {
      const Variances2 v = sample_variances(points);
      if (!(v.var_x > 0.0) || !(v.var_y > 0.0)) {
        throw Error(ErrorCode::InvalidData, "zero variance in a dimension");
      }
      return standardized(v);
    }
    case MetricKind::Mahalanobis: return mahalanobis(estimate_covariance(points));
  }
  throw Error(ErrorCode::Internal, "unhandled metric kind");
}

double Metric::operator()(const Point2& a, const Point2& b) const noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  switch (kind_) {
    case MetricKind::Euclidean: return std::sqrt(dx * dx + dy * dy);
    case MetricKind::StandardizedEuclidean:
      return std::sqrt(dx * dx / variances_.var_x + dy * dy / variances_.var_y);
    case MetricKind::Mahalanobis:
      return std::sqrt(std::max(0.0, covariance_.quadratic_form(dx, dy)));
  }
  return 0.0;
}

}  // namespace onion
