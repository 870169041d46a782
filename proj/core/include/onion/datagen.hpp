#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "onion/geometry.hpp"
#include "onion/metrics.hpp"

namespace onion {

/// Parameters of an axis-aligned Gaussian cloud with optional planted outliers.
struct GenSpec {
  std::size_t n = 1500;
  Point2 mean{0.0, 0.0};
  Variances2 variances{1.0, 100.0};
  // Fraction of points planted as outliers, in [0, 1).
  double contamination = 0.01;
  // Planted outliers sit at true-covariance Mahalanobis radius in
  // [multiplier, 1.5 * multiplier] from the mean.
  double outlier_radius_multiplier = 4.0;
  std::uint64_t seed = 42;
};

/// Throws InvalidParameter describing the first bad field.
void validate(const GenSpec& spec);

/// Number of inliers: floor((1 - contamination) * n).
std::size_t inlier_count(const GenSpec& spec);

struct DataSet {
  std::vector<Point2> points;
  // Sorted indices of planted outliers; empty for unlabeled data.
  std::vector<std::size_t> truth_outlier_ids;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return points.size(); }
};

/// Deterministic per spec: mt19937_64 drives Box-Muller normals, planted
/// points are appended and the whole set is shuffled with the same stream.
DataSet generate(const GenSpec& spec);

enum class DataFormat { Csv, Json };

std::string_view to_string(DataFormat format);
DataFormat parse_data_format(std::string_view text);

/// Picks the format from a .csv / .json extension.
DataFormat format_from_path(const std::filesystem::path& path, DataFormat fallback);

/// CSV: header `x,y`, one point per row, shortest round-trip decimals.
/// CSV carries points only; labels and seed live in the JSON form.
void write_points_csv(const DataSet& ds, std::ostream& out);
/// JSON: {"points": [[x,y],...], "truth_outliers": [ids], "seed": s}.
void write_points_json(const DataSet& ds, std::ostream& out);

/// Parse errors name the offending line; non-finite values are rejected.
DataSet read_points_csv(std::istream& in);
DataSet read_points_json(std::istream& in);

void save_points(const DataSet& ds, const std::filesystem::path& path, DataFormat format);
DataSet load_points(const std::filesystem::path& path, DataFormat format);
/// Format taken from the extension (.json, otherwise CSV).
DataSet load_points(const std::filesystem::path& path);

/// Formats a double with the shortest representation that parses back exactly.
std::string format_double(double value);

}  // namespace onion
