#include "onion/serialization.hpp"

#include <sstream>

#include <json.hpp>

#include "onion/datagen.hpp"
#include "onion/error.hpp"

namespace onion {
namespace {

using nlohmann::json;

json config_to_json(const DetectionConfig& config) {
  return {{"k", config.k},
          {"metric", to_string(config.metric)},
          {"scoring", to_string(config.scoring)},
          {"removal", to_string(config.removal)},
          {"standardize", config.standardize_first}};
}

DetectionConfig config_from_json(const json& j) {
  DetectionConfig config;
  config.k = j.at("k").get<std::size_t>();
  config.metric = parse_metric_kind(j.at("metric").get<std::string>());
  config.scoring = parse_scoring(j.at("scoring").get<std::string>());
  config.removal = parse_removal(j.at("removal").get<std::string>());
  config.standardize_first = j.at("standardize").get<bool>();
  return config;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

}  // namespace

std::string report_to_json(const OutlierReport& report) {
  json doc;
  doc["outlier_ids"] = report.outlier_ids;
  doc["volumes"] = report.volumes;
  doc["scores"] = report.scores;
  doc["config"] = config_to_json(report.config);
  doc["early_termination"] = report.early_termination;
  return doc.dump(2) + "\n";
}

OutlierReport report_from_json(const std::string& text) {
  const json doc = parse_document(text);
  try {
    OutlierReport report;
    report.outlier_ids = doc.at("outlier_ids").get<std::vector<std::size_t>>();
    report.volumes = doc.at("volumes").get<std::vector<double>>();
    report.scores = doc.at("scores").get<std::vector<double>>();
    report.config = config_from_json(doc.at("config"));
    report.early_termination = doc.at("early_termination").get<bool>();
    if (report.scores.size() != report.outlier_ids.size()) {
      throw Error(ErrorCode::Parse, "scores and outlier_ids differ in length");
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

std::string report_to_csv(const OutlierReport& report) {
  std::ostringstream out;
  out << "rank,point_id,score,volume\n";
  for (std::size_t i = 0; i < report.outlier_ids.size(); ++i) {
    out << i << ',' << report.outlier_ids[i] << ',' << format_double(report.scores[i]) << ','
        << (i < report.volumes.size() ? format_double(report.volumes[i]) : std::string()) << '\n';
  }
  return out.str();
}

std::string peel_to_json(const PeelDecomposition& peel) {
  json layers = json::array();
  for (const Hull& hull : peel.layers) {
    layers.push_back({{"vertex_ids", hull.vertex_ids},
                      {"coincident_ids", hull.coincident_ids},
                      {"area", hull.area}});
  }
  json doc;
  doc["layers"] = std::move(layers);
  doc["residual_ids"] = peel.residual_ids;
  return doc.dump(2) + "\n";
}

PeelDecomposition peel_from_json(const std::string& text) {
  const json doc = parse_document(text);
  try {
    PeelDecomposition peel;
    for (const auto& layer : doc.at("layers")) {
      Hull hull;
      hull.vertex_ids = layer.at("vertex_ids").get<std::vector<std::size_t>>();
      hull.coincident_ids = layer.at("coincident_ids").get<std::vector<std::size_t>>();
      hull.area = layer.at("area").get<double>();
      peel.layers.push_back(std::move(hull));
    }
    peel.residual_ids = doc.at("residual_ids").get<std::vector<std::size_t>>();
    return peel;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

std::string summary_to_json(const ExperimentSummary& summary) {
  json doc;
  doc["k"] = summary.k;
  doc["planted"] = summary.planted;
  doc["scenarios"] = summary.scenario_names;
  doc["seeds"] = summary.seeds;
  if (summary.planted) {
    doc["truth_common"] = summary.truth_common;
    doc["recall"] = summary.recall;
    doc["mean_recall"] = summary.mean_recall;
    json grades = json::array();
    for (const MeritGrade& g : summary.grades) {
      grades.push_back({{"accuracy_percent", g.accuracy_percent},
                        {"merit", std::string(to_string(g.grade))}});
    }
    doc["grades"] = std::move(grades);
  }
  json pairwise = json::array();
  for (const auto& row : summary.pairwise) {
    pairwise.push_back({{"first", summary.scenario_names[row.first]},
                        {"second", summary.scenario_names[row.second]},
                        {"counts", row.counts}});
  }
  doc["pairwise_common"] = std::move(pairwise);
  return doc.dump(2) + "\n";
}

}  // namespace onion
