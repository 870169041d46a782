#include "onion/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "onion/error.hpp"

namespace onion {
namespace {

// [0, 1) with 53 random bits; avoids the library-specific
// generate_canonical so streams match across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct NormalPair {
  double first;
  double second;
};

NormalPair box_muller(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void parse_failure(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  if (field.empty()) parse_failure(line, "empty field");
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    parse_failure(line, "'" + std::string(field) + "' is not a number");
  }
  if (!std::isfinite(value)) parse_failure(line, "non-finite value '" + std::string(field) + "'");
  return value;
}

}  // namespace

void validate(const GenSpec& spec) {
  if (spec.n < 3) {
    throw Error(ErrorCode::InvalidParameter, "n must be at least 3, got " + std::to_string(spec.n));
  }
  if (!is_finite(spec.mean)) throw Error(ErrorCode::InvalidParameter, "mean must be finite");
  const auto& v = spec.variances;
  if (!(v.var_x > 0.0) || !(v.var_y > 0.0) || !std::isfinite(v.var_x) ||
      !std::isfinite(v.var_y)) {
    throw Error(ErrorCode::InvalidParameter, "variances must be finite and strictly positive");
  }
  if (!(spec.contamination >= 0.0) || !(spec.contamination < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "contamination must lie in [0, 1)");
  }
  if (!(spec.outlier_radius_multiplier > 0.0) || !std::isfinite(spec.outlier_radius_multiplier)) {
    throw Error(ErrorCode::InvalidParameter, "outlier radius multiplier must be positive");
  }
}

std::size_t inlier_count(const GenSpec& spec) {
  // The epsilon absorbs representation error, e.g. 0.99 * 1500 landing just below 1485.
  const double inliers = std::floor((1.0 - spec.contamination) * static_cast<double>(spec.n) + 1e-9);
  return std::min(spec.n, static_cast<std::size_t>(inliers));
}

DataSet generate(const GenSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);

  const std::size_t inliers = inlier_count(spec);
  const double sx = std::sqrt(spec.variances.var_x);
  const double sy = std::sqrt(spec.variances.var_y);

  std::vector<Point2> points;
  points.reserve(spec.n);
  for (std::size_t i = 0; i < inliers; ++i) {
    const auto z = box_muller(rng);
    points.push_back({spec.mean.x + sx * z.first, spec.mean.y + sy * z.second});
  }
  for (std::size_t i = inliers; i < spec.n; ++i) {
    const double angle = 2.0 * std::numbers::pi * uniform01(rng);
    const double radius = spec.outlier_radius_multiplier * (1.0 + 0.5 * uniform01(rng));
    points.push_back({spec.mean.x + radius * sx * std::cos(angle),
                      spec.mean.y + radius * sy * std::sin(angle)});
  }

  // Fisher-Yates, tracking where the planted points land.
  std::vector<std::size_t> origin(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) origin[i] = i;
  for (std::size_t i = spec.n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i + 1));
    std::swap(points[i], points[j]);
    std::swap(origin[i], origin[j]);
  }

  DataSet ds;
  ds.points = std::move(points);
  ds.seed = spec.seed;
  for (std::size_t i = 0; i < spec.n; ++i) {
    if (origin[i] >= inliers) ds.truth_outlier_ids.push_back(i);
  }
  return ds;
}

std::string_view to_string(DataFormat format) {
  return format == DataFormat::Csv ? "csv" : "json";
}

DataFormat parse_data_format(std::string_view text) {
  if (text == "csv") return DataFormat::Csv;
  if (text == "json") return DataFormat::Json;
  throw Error(ErrorCode::InvalidParameter, "unknown format '" + std::string(text) + "'");
}

DataFormat format_from_path(const std::filesystem::path& path, DataFormat fallback) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return DataFormat::Csv;
  if (ext == ".json") return DataFormat::Json;
  return fallback;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorCode::Internal, "double formatting failed");
  return std::string(buf, ptr);
}

void write_points_csv(const DataSet& ds, std::ostream& out) {
  out << "x,y\n";
  for (const Point2& p : ds.points) {
    out << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

void write_points_json(const DataSet& ds, std::ostream& out) {
  nlohmann::json points = nlohmann::json::array();
  for (const Point2& p : ds.points) points.push_back({p.x, p.y});
  nlohmann::json doc;
  doc["points"] = std::move(points);
  doc["truth_outliers"] = ds.truth_outlier_ids;
  doc["seed"] = ds.seed;
  out << doc.dump() << '\n';
}

DataSet read_points_csv(std::istream& in) {
  DataSet ds;
  std::string raw;
  std::size_t line = 0;
  bool seen_first = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (!seen_first) {
      seen_first = true;
      if (text == "x,y") continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) parse_failure(line, "expected two comma-separated values");
    const auto rest = text.substr(comma + 1);
    if (rest.find(',') != std::string_view::npos) parse_failure(line, "too many fields");
    ds.points.push_back({parse_field(text.substr(0, comma), line), parse_field(rest, line)});
  }
  if (ds.points.empty()) throw Error(ErrorCode::EmptyDataset, "no points in input");
  return ds;
}

DataSet read_points_json(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::EmptyDataset, "empty input");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  DataSet ds;
  try {
    if (!doc.is_object() || !doc.contains("points")) {
      throw Error(ErrorCode::Parse, "expected an object with a \"points\" array");
    }
    const auto& points = doc.at("points");
    if (!points.is_array()) throw Error(ErrorCode::Parse, "\"points\" must be an array");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& row = points[i];
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        throw Error(ErrorCode::Parse, "point " + std::to_string(i) + " must be [x, y]");
      }
      const Point2 p{row[0].get<double>(), row[1].get<double>()};
      if (!is_finite(p)) throw Error(ErrorCode::Parse, "point " + std::to_string(i) + " not finite");
      ds.points.push_back(p);
    }
    if (doc.contains("truth_outliers")) {
      ds.truth_outlier_ids = doc.at("truth_outliers").get<std::vector<std::size_t>>();
    }
    if (doc.contains("seed")) ds.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (ds.points.empty()) throw Error(ErrorCode::EmptyDataset, "no points in input");
  for (std::size_t id : ds.truth_outlier_ids) {
    if (id >= ds.points.size()) {
      throw Error(ErrorCode::Parse, "truth outlier id " + std::to_string(id) + " out of range");
    }
  }
  return ds;
}

void save_points(const DataSet& ds, const std::filesystem::path& path, DataFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  if (format == DataFormat::Csv) {
    write_points_csv(ds, out);
  } else {
    write_points_json(ds, out);
  }
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

DataSet load_points(const std::filesystem::path& path, DataFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return format == DataFormat::Csv ? read_points_csv(in) : read_points_json(in);
}

DataSet load_points(const std::filesystem::path& path) {
  return load_points(path, format_from_path(path, DataFormat::Csv));
}

}  // namespace onion
