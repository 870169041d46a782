#include "onion/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "onion/error.hpp"

namespace onion {
namespace {

std::vector<std::size_t> sorted_ids(std::span<const std::size_t> ids) {
  std::vector<std::size_t> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t intersection_size(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  const auto sa = sorted_ids(a);
  const auto sb = sorted_ids(b);
  std::size_t count = 0;
  auto ia = sa.begin();
  auto ib = sb.begin();
  while (ia != sa.end() && ib != sb.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::string fixed(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::size_t common_outliers(const OutlierReport& a, const OutlierReport& b) {
  if (a.config.k != b.config.k) {
    throw Error(ErrorCode::InvalidParameter, "reports were run with different k (" +
                                                 std::to_string(a.config.k) + " vs " +
                                                 std::to_string(b.config.k) + ")");
  }
  return intersection_size(a.outlier_ids, b.outlier_ids);
}

double recall(const OutlierReport& report, std::span<const std::size_t> truth) {
  const auto unique_truth = sorted_ids(truth);
  if (unique_truth.empty()) throw Error(ErrorCode::InvalidParameter, "recall needs ground truth");
  return static_cast<double>(intersection_size(report.outlier_ids, unique_truth)) /
         static_cast<double>(unique_truth.size());
}

std::string_view to_string(Merit merit) {
  switch (merit) {
    case Merit::Good: return "Good";
    case Merit::Average: return "Average";
    case Merit::Bad: return "Bad";
  }
  return "?";
}

MeritGrade grade(double accuracy_percent) {
  if (!(accuracy_percent >= 0.0) || !(accuracy_percent <= 100.0)) {
    throw Error(ErrorCode::InvalidParameter, "accuracy must lie in [0, 100]");
  }
  constexpr double kThreshold = 75.0;
  Merit merit = Merit::Bad;
  if (accuracy_percent > kThreshold) {
    merit = Merit::Good;
  } else if (accuracy_percent == kThreshold) {
    merit = Merit::Average;
  }
  return {accuracy_percent, merit};
}

std::vector<Scenario> default_scenarios(std::size_t k) {
  DetectionConfig raw;
  raw.k = k;
  DetectionConfig standardized = raw;
  standardized.standardize_first = true;
  DetectionConfig mahalanobis = raw;
  mahalanobis.metric = MetricKind::Mahalanobis;
  return {{"euclidean-raw", raw},
          {"euclidean-standardized", standardized},
          {"mahalanobis", mahalanobis}};
}

bool RunMatrix::planted() const {
  return !truth.empty() &&
         std::all_of(truth.begin(), truth.end(), [](const auto& t) { return !t.empty(); });
}

RunMatrix run_experiment(const GenSpec& spec, std::span<const Scenario> scenarios,
                         std::span<const std::uint64_t> seeds, unsigned threads) {
  if (seeds.empty()) throw Error(ErrorCode::InvalidParameter, "experiment needs at least one seed");
  if (scenarios.empty()) {
    throw Error(ErrorCode::InvalidParameter, "experiment needs at least one scenario");
  }
  for (const Scenario& s : scenarios) {
    if (s.config.k != scenarios.front().config.k) {
      throw Error(ErrorCode::InvalidParameter, "all scenarios must share the same k");
    }
  }
  validate(spec);

  RunMatrix matrix;
  matrix.spec = spec;
  matrix.scenarios.assign(scenarios.begin(), scenarios.end());
  matrix.seeds.assign(seeds.begin(), seeds.end());

  std::vector<DataSet> datasets;
  datasets.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    GenSpec seeded = spec;
    seeded.seed = seed;
    datasets.push_back(generate(seeded));
    matrix.truth.push_back(datasets.back().truth_outlier_ids);
  }

  matrix.reports.assign(scenarios.size(), std::vector<OutlierReport>(seeds.size()));
  const std::size_t cells = scenarios.size() * seeds.size();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t scenario = cell / seeds.size();
      const std::size_t seed = cell % seeds.size();
      try {
        matrix.reports[scenario][seed] =
            detect(datasets[seed].points, scenarios[scenario].config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cells));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return matrix;
}

ExperimentSummary summarize(const RunMatrix& matrix) {
  ExperimentSummary summary;
  summary.planted = matrix.planted();
  summary.k = matrix.scenarios.empty() ? 0 : matrix.scenarios.front().config.k;
  summary.seeds = matrix.seeds;
  for (const Scenario& s : matrix.scenarios) summary.scenario_names.push_back(s.name);

  const std::size_t n_scen = matrix.scenarios.size();
  const std::size_t n_seed = matrix.seeds.size();

  if (summary.planted) {
    summary.truth_common.assign(n_scen, std::vector<std::size_t>(n_seed, 0));
    summary.recall.assign(n_scen, std::vector<double>(n_seed, 0.0));
    for (std::size_t s = 0; s < n_scen; ++s) {
      double total = 0.0;
      for (std::size_t j = 0; j < n_seed; ++j) {
        const auto& report = matrix.reports[s][j];
        summary.truth_common[s][j] = intersection_size(report.outlier_ids, matrix.truth[j]);
        summary.recall[s][j] = recall(report, matrix.truth[j]);
        total += summary.recall[s][j];
      }
      const double mean = total / static_cast<double>(n_seed);
      summary.mean_recall.push_back(mean);
      summary.grades.push_back(grade(std::clamp(100.0 * mean, 0.0, 100.0)));
    }
  }

  for (std::size_t a = 0; a < n_scen; ++a) {
    for (std::size_t b = a + 1; b < n_scen; ++b) {
      PairwiseCommon row{a, b, {}};
      for (std::size_t j = 0; j < n_seed; ++j) {
        row.counts.push_back(common_outliers(matrix.reports[a][j], matrix.reports[b][j]));
      }
      summary.pairwise.push_back(std::move(row));
    }
  }
  return summary;
}

std::string format_summary_text(const ExperimentSummary& summary) {
  std::ostringstream out;
  std::size_t name_width = 8;
  for (const auto& name : summary.scenario_names) name_width = std::max(name_width, name.size());
  for (const auto& row : summary.pairwise) {
    name_width = std::max(name_width, summary.scenario_names[row.first].size() +
                                          summary.scenario_names[row.second].size() + 3);
  }
  name_width += 2;
  constexpr std::size_t kCell = 6;

  auto seed_header = [&](const std::string& first) {
    out << pad_right(first, name_width);
    for (std::uint64_t seed : summary.seeds) out << pad_left(std::to_string(seed), kCell);
  };

  if (summary.planted) {
    out << "Common outliers with planted truth (k = " << summary.k << ")\n";
    seed_header("scenario \\ seed");
    out << pad_left("recall", 9) << pad_left("merit", 9) << '\n';
    for (std::size_t s = 0; s < summary.scenario_names.size(); ++s) {
      out << pad_right(summary.scenario_names[s], name_width);
      for (std::size_t count : summary.truth_common[s]) {
        out << pad_left(std::to_string(count), kCell);
      }
      out << pad_left(fixed(summary.mean_recall[s], 3), 9)
          << pad_left(std::string(to_string(summary.grades[s].grade)), 9) << '\n';
    }
    out << '\n';
  }

  out << "Common outliers between scenarios (k = " << summary.k << ")\n";
  seed_header("pair \\ seed");
  out << '\n';
  for (const auto& row : summary.pairwise) {
    out << pad_right(summary.scenario_names[row.first] + " / " +
                         summary.scenario_names[row.second],
                     name_width);
    for (std::size_t count : row.counts) out << pad_left(std::to_string(count), kCell);
    out << '\n';
  }
  return out.str();
}

std::string format_summary_csv(const ExperimentSummary& summary) {
  std::ostringstream out;
  out << "table,row,seed,value\n";
  if (summary.planted) {
    for (std::size_t s = 0; s < summary.scenario_names.size(); ++s) {
      const auto& name = summary.scenario_names[s];
      for (std::size_t j = 0; j < summary.seeds.size(); ++j) {
        out << "truth_common," << name << ',' << summary.seeds[j] << ','
            << summary.truth_common[s][j] << '\n';
      }
      for (std::size_t j = 0; j < summary.seeds.size(); ++j) {
        out << "recall," << name << ',' << summary.seeds[j] << ',' << format_double(summary.recall[s][j])
            << '\n';
      }
      out << "mean_recall," << name << ",," << format_double(summary.mean_recall[s]) << '\n';
      out << "merit," << name << ",," << to_string(summary.grades[s].grade) << '\n';
    }
  }
  for (const auto& row : summary.pairwise) {
    const std::string name =
        summary.scenario_names[row.first] + "/" + summary.scenario_names[row.second];
    for (std::size_t j = 0; j < summary.seeds.size(); ++j) {
      out << "pairwise_common," << name << ',' << summary.seeds[j] << ',' << row.counts[j] << '\n';
    }
  }
  return out.str();
}

}  // namespace onion
