#pragma once

#include <string>

#include "onion/detector.hpp"
#include "onion/eval.hpp"
#include "onion/geometry.hpp"

namespace onion {

// {"outlier_ids":[...], "volumes":[...], "scores":[...],
//  "config":{"k":..,"metric":..,"scoring":..,"removal":..,"standardize":..},
//  "early_termination":bool}
std::string report_to_json(const OutlierReport& report);
OutlierReport report_from_json(const std::string& text);

// One row per outlier: rank,point_id,score,volume
std::string report_to_csv(const OutlierReport& report);

// {"layers":[{"vertex_ids":[...],"coincident_ids":[...],"area":a}, ...],
//  "residual_ids":[...]}
std::string peel_to_json(const PeelDecomposition& peel);
PeelDecomposition peel_from_json(const std::string& text);

std::string summary_to_json(const ExperimentSummary& summary);

}  // namespace onion
