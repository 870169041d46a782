#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onion/datagen.hpp"
#include "onion/detector.hpp"

namespace onion {

/// |a ∩ b| over outlier ids. Throws InvalidParameter if the reports were run
/// with different k.
std::size_t common_outliers(const OutlierReport& a, const OutlierReport& b);

/// Fraction of `truth` recovered by the report. Throws InvalidParameter on
/// empty truth.
double recall(const OutlierReport& report, std::span<const std::size_t> truth);

enum class Merit { Good, Average, Bad };

std::string_view to_string(Merit merit);

struct MeritGrade {
  double accuracy_percent = 0.0;
  Merit grade = Merit::Bad;
};

/// Good above 75%, Average at exactly 75%, Bad below.
/// Throws InvalidParameter outside [0, 100].
MeritGrade grade(double accuracy_percent);

struct Scenario {
  std::string name;
  DetectionConfig config;
};

/// Raw Euclidean, standardized-then-Euclidean, and Mahalanobis, each with
/// sum-of-distances scoring and single-point removal.
std::vector<Scenario> default_scenarios(std::size_t k);

/// Every (scenario, seed) detect run of one experiment.
struct RunMatrix {
  GenSpec spec;
  std::vector<Scenario> scenarios;
  std::vector<std::uint64_t> seeds;
  // reports[scenario][seed]
  std::vector<std::vector<OutlierReport>> reports;
  // Planted outlier ids of each seed's dataset (empty when unlabeled).
  std::vector<std::vector<std::size_t>> truth;

  bool planted() const;
};

/// Runs one detect per (scenario, seed); the dataset for a seed is
/// `generate(spec)` with `spec.seed` replaced. Cells may run on up to
/// `threads` workers; results do not depend on the thread count.
/// Throws InvalidParameter for no seeds, no scenarios, or scenarios that
/// disagree on k.
RunMatrix run_experiment(const GenSpec& spec, std::span<const Scenario> scenarios,
                         std::span<const std::uint64_t> seeds, unsigned threads = 1);

struct PairwiseCommon {
  std::size_t first = 0;   // scenario index
  std::size_t second = 0;  // scenario index
  std::vector<std::size_t> counts;  // one per seed
};

/// Table-shaped digest of a RunMatrix.
///
/// Planted mode fills the truth grid (outliers shared with the planted set,
/// per scenario and seed), recall, per-scenario mean recall and merit grade.
/// Pairwise counts between scenarios on the same seed are always filled.
struct ExperimentSummary {
  bool planted = false;
  std::size_t k = 0;
  std::vector<std::string> scenario_names;
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<std::size_t>> truth_common;
  std::vector<std::vector<double>> recall;
  std::vector<double> mean_recall;
  std::vector<MeritGrade> grades;
  std::vector<PairwiseCommon> pairwise;
};

ExperimentSummary summarize(const RunMatrix& matrix);

/// Aligned plain-text tables for terminals.
std::string format_summary_text(const ExperimentSummary& summary);

/// Long-form CSV: table,row,seed,value.
std::string format_summary_csv(const ExperimentSummary& summary);

}  // namespace onion
