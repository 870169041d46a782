#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "onion/error.hpp"
#include "onion/eval.hpp"
#include "onion/serialization.hpp"

namespace onion {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected onion::Error";
  return ErrorCode::Internal;
}

OutlierReport report_with(std::vector<std::size_t> ids, std::size_t k) {
  OutlierReport r;
  r.config.k = k;
  r.outlier_ids = std::move(ids);
  return r;
}

std::vector<std::size_t> range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

GenSpec small_spec() {
  GenSpec spec;
  spec.n = 300;
  spec.contamination = 0.02;
  return spec;
}

TEST(CommonOutliers, Examples) {
  const auto a = report_with(range(0, 15), 15);
  EXPECT_EQ(common_outliers(a, a), 15u);
  EXPECT_EQ(common_outliers(a, report_with(range(100, 15), 15)), 0u);
  EXPECT_EQ(common_outliers(a, report_with(range(10, 15), 15)), 5u);
  EXPECT_EQ(code_of([&] { common_outliers(a, report_with(range(0, 10), 10)); }),
            ErrorCode::InvalidParameter);
}

TEST(Recall, Examples) {
  const auto r = report_with(range(0, 15), 15);
  EXPECT_DOUBLE_EQ(recall(r, range(3, 15)), 12.0 / 15.0);
  EXPECT_DOUBLE_EQ(recall(r, range(0, 15)), 1.0);
  EXPECT_EQ(code_of([&] { recall(r, {}); }), ErrorCode::InvalidParameter);
}

TEST(Grade, Thresholds) {
  EXPECT_EQ(grade(80).grade, Merit::Good);
  EXPECT_EQ(grade(75).grade, Merit::Average);
  EXPECT_EQ(grade(60).grade, Merit::Bad);
  EXPECT_EQ(grade(100).grade, Merit::Good);
  EXPECT_EQ(grade(0).grade, Merit::Bad);
  EXPECT_DOUBLE_EQ(grade(60).accuracy_percent, 60.0);
  EXPECT_EQ(code_of([] { grade(100.5); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { grade(-1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(to_string(Merit::Average), "Average");
}

TEST(RunExperiment, FullMatrixShape) {
  const auto scenarios = default_scenarios(15);
  std::vector<std::uint64_t> seeds(10);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
  const auto matrix = run_experiment(small_spec(), scenarios, seeds, 2);
  ASSERT_EQ(matrix.reports.size(), 3u);
  std::size_t cells = 0;
  for (const auto& row : matrix.reports) {
    ASSERT_EQ(row.size(), 10u);
    cells += row.size();
  }
  EXPECT_EQ(cells, 30u);
  EXPECT_TRUE(matrix.planted());
  ASSERT_EQ(matrix.truth.size(), 10u);
  EXPECT_EQ(matrix.truth[0].size(), 6u);
}

TEST(RunExperiment, SingleCellMatchesDirectRun) {
  const auto scenarios = default_scenarios(15);
  const std::vector<Scenario> one{scenarios[2]};
  const std::vector<std::uint64_t> seeds{9};
  const auto matrix = run_experiment(small_spec(), one, seeds);
  auto spec = small_spec();
  spec.seed = 9;
  const auto ds = generate(spec);
  EXPECT_EQ(matrix.reports[0][0], detect(ds.points, one[0].config));
  EXPECT_EQ(matrix.truth[0], ds.truth_outlier_ids);
}

TEST(RunExperiment, ThreadCountDoesNotChangeResults) {
  const auto scenarios = default_scenarios(10);
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const auto serial = run_experiment(small_spec(), scenarios, seeds, 1);
  for (unsigned threads : {2u, 3u, 8u, 64u}) {
    const auto parallel = run_experiment(small_spec(), scenarios, seeds, threads);
    EXPECT_EQ(parallel.reports, serial.reports) << threads << " threads";
  }
}

TEST(RunExperiment, RejectsBadInputs) {
  auto scenarios = default_scenarios(15);
  const std::vector<std::uint64_t> seeds{1};
  EXPECT_EQ(code_of([&] { run_experiment(small_spec(), scenarios, {}); }),
            ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([&] { run_experiment(small_spec(), {}, seeds); }),
            ErrorCode::InvalidParameter);
  scenarios[1].config.k = 5;
  EXPECT_EQ(code_of([&] { run_experiment(small_spec(), scenarios, seeds); }),
            ErrorCode::InvalidParameter);
}

TEST(Summarize, PlantedTables) {
  const auto scenarios = default_scenarios(6);
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto matrix = run_experiment(small_spec(), scenarios, seeds);
  const auto s = summarize(matrix);
  EXPECT_TRUE(s.planted);
  EXPECT_EQ(s.k, 6u);
  ASSERT_EQ(s.truth_common.size(), 3u);
  ASSERT_EQ(s.pairwise.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    double total = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const auto& report = matrix.reports[i][j];
      EXPECT_DOUBLE_EQ(s.recall[i][j], recall(report, matrix.truth[j]));
      EXPECT_EQ(s.truth_common[i][j],
                static_cast<std::size_t>(s.recall[i][j] * matrix.truth[j].size() + 0.5));
      total += s.recall[i][j];
    }
    EXPECT_NEAR(s.mean_recall[i], total / 3, 1e-15);
    EXPECT_EQ(s.grades[i].grade, grade(100 * s.mean_recall[i]).grade);
  }
  for (const auto& p : s.pairwise) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(p.counts[j], common_outliers(matrix.reports[p.first][j],
                                             matrix.reports[p.second][j]));
    }
  }

  const std::string text = format_summary_text(s);
  EXPECT_NE(text.find("mahalanobis"), std::string::npos);
  const std::string csv = format_summary_csv(s);
  EXPECT_EQ(csv.rfind("table,row,seed,value\n", 0), 0u);
  const auto json = nlohmann::json::parse(summary_to_json(s));
  EXPECT_EQ(json["scenarios"].size(), 3u);
}

TEST(Summarize, UnlabeledHasOnlyPairwise) {
  auto spec = small_spec();
  spec.contamination = 0;
  const auto scenarios = default_scenarios(5);
  const std::vector<std::uint64_t> seeds{1, 2};
  const auto s = summarize(run_experiment(spec, scenarios, seeds));
  EXPECT_FALSE(s.planted);
  EXPECT_TRUE(s.recall.empty());
  EXPECT_TRUE(s.grades.empty());
  EXPECT_EQ(s.pairwise.size(), 3u);
}

TEST(Serialization, ReportRoundTrip) {
  const auto ds = generate(small_spec());
  DetectionConfig config;
  config.k = 8;
  config.metric = MetricKind::Mahalanobis;
  config.scoring = Scoring::DistanceToCenter;
  config.removal = Removal::WholeHull;
  config.standardize_first = true;
  const auto report = detect(ds.points, config);
  EXPECT_EQ(report_from_json(report_to_json(report)), report);

  const std::string csv = report_to_csv(report);
  EXPECT_EQ(csv.rfind("rank,point_id,score,volume\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'),
            static_cast<std::ptrdiff_t>(report.outlier_ids.size() + 1));
}

TEST(Serialization, ReportRejectsBadJson) {
  EXPECT_EQ(code_of([] { report_from_json("{"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { report_from_json(R"({"outlier_ids": "x"})"); }), ErrorCode::Parse);
}

TEST(Serialization, PeelRoundTrip) {
  const std::vector<Point2> pts{{-3, -3}, {3, -3}, {3, 3}, {-3, 3}, {-2, -2}, {2, -2},
                                {2, 2},   {-2, 2}, {0, 0}, {0, 0}};
  const auto peel = onion_peel(pts);
  const auto back = peel_from_json(peel_to_json(peel));
  ASSERT_EQ(back.layers.size(), peel.layers.size());
  for (std::size_t i = 0; i < peel.layers.size(); ++i) {
    EXPECT_EQ(back.layers[i].vertex_ids, peel.layers[i].vertex_ids);
    EXPECT_EQ(back.layers[i].coincident_ids, peel.layers[i].coincident_ids);
    EXPECT_EQ(back.layers[i].area, peel.layers[i].area);
  }
  EXPECT_EQ(back.residual_ids, peel.residual_ids);
}

}  // namespace
}  // namespace onion
