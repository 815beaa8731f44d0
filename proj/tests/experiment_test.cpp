#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcfr/experiment.hpp"

namespace pcfr {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pcfr_experiment_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string metric_columns(const fs::path& csv) {
  // Everything except the wall-clock column.
  std::ifstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

TEST(Csv, HeaderAndRoundTrip) {
  const std::vector<ConvergenceRecord> records = {
      {1, 2, 0.5, 0.25, 1.0 / 3.0, 12.0, 0.001},
      {4, 8, 1e-7, -0.0, 2.5e-300, 6.0, 0.5},
  };
  std::stringstream s;
  write_csv(s, records);
  std::string first;
  std::getline(s, first);
  EXPECT_EQ(first, kCsvHeader);
  s.seekg(0);
  const std::vector<ConvergenceRecord> back = read_csv(s);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(back[i].t, records[i].t);
    EXPECT_EQ(back[i].traversals, records[i].traversals);
    EXPECT_EQ(format_number(back[i].exploitability), format_number(records[i].exploitability));
    EXPECT_EQ(format_number(back[i].max_infoset_regret), format_number(records[i].max_infoset_regret));
  }
}

TEST(Csv, RejectsMalformedInput) {
  std::stringstream bad_header("t,x\n1,2\n");
  EXPECT_THROW(read_csv(bad_header), std::runtime_error);
  std::stringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_csv(short_row), std::runtime_error);
  EXPECT_THROW(read_csv(fs::path("/nonexistent/file.csv")), std::runtime_error);
}

TEST(Csv, NumberFormat) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(16384), "16384");
}

TEST(RunExperiment, KuhnRecordsAreWellFormed) {
  ExperimentConfig config;
  config.game = "kuhn";
  config.iterations = 1000;
  const std::vector<ConvergenceRecord> records = run_experiment(config);
  std::vector<std::int64_t> ts;
  for (const auto& r : records) ts.push_back(r.t);
  const std::vector<std::int64_t> expected = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1000};
  EXPECT_EQ(ts, expected);
  for (std::size_t i = 1; i < records.size(); ++i) {
    EXPECT_LT(records[i].bound, records[i - 1].bound);
    EXPECT_GE(records[i].traversals, records[i - 1].traversals);
    EXPECT_GE(records[i].seconds, records[i - 1].seconds);
  }
  EXPECT_EQ(records.back().traversals, 2000);
  // With no perturbation the perturbed regret is the exploitability.
  for (const auto& r : records) EXPECT_EQ(r.perturbed_regret, r.exploitability);
}

TEST(RunExperiment, KuhnConvergesAtSixteenThousandIterations) {
  ExperimentConfig config;
  config.iterations = 1 << 14;
  config.checkpoints = {1 << 14};
  const std::vector<ConvergenceRecord> records = run_experiment(config);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_LT(records[0].exploitability, 1e-3);
}

TEST(RunExperiment, MetricColumnsAreDeterministic) {
  const fs::path dir = scratch_dir("determinism");
  ExperimentConfig config;
  config.game = "leduc:k=2";
  config.xi = 0.01;
  config.iterations = 64;
  config.out = dir / "a.csv";
  run_experiment(config);
  config.out = dir / "b.csv";
  run_experiment(config);
  EXPECT_EQ(metric_columns(dir / "a.csv"), metric_columns(dir / "b.csv"));
  EXPECT_FALSE(metric_columns(dir / "a.csv").empty());
}

TEST(RunExperiment, CallbackSeesEveryCheckpoint) {
  ExperimentConfig config;
  config.iterations = 10;
  config.checkpoints = {3, 10, 7};
  std::vector<std::int64_t> seen;
  run_experiment(config, [&](const CfrSolver& solver, const ConvergenceRecord& r) {
    EXPECT_EQ(solver.iteration(), r.t);
    seen.push_back(r.t);
  });
  EXPECT_EQ(seen, (std::vector<std::int64_t>{3, 7, 10}));
}

TEST(RunExperiment, RejectsBadConfigs) {
  ExperimentConfig config;
  config.xi = 0.6;  // two actions per infoset: 2 * 0.6 > 1
  EXPECT_THROW(run_experiment(config), std::invalid_argument);
  config.xi = -0.1;
  EXPECT_THROW(run_experiment(config), std::invalid_argument);
  config.xi = 0.0;
  config.iterations = 0;
  EXPECT_THROW(run_experiment(config), std::invalid_argument);
  config.iterations = 10;
  config.game = "nope";
  EXPECT_THROW(run_experiment(config), std::invalid_argument);
}

TEST(RunExperiment, UnwritableOutputFailsBeforeIterating) {
  ExperimentConfig config;
  config.iterations = 1 << 20;
  config.out = "/nonexistent/dir/out.csv";
  bool called = false;
  EXPECT_THROW(run_experiment(config, [&](const CfrSolver&, const ConvergenceRecord&) { called = true; }),
               std::runtime_error);
  EXPECT_FALSE(called);
}

TEST(Sweep, WritesOneCsvPerXiAndDropsDuplicates) {
  const fs::path dir = scratch_dir("sweep");
  ExperimentConfig base;
  base.iterations = 32;
  const SweepResult result = sweep(base, {0.05, 0.0, 0.05, 0.01}, dir, 2);
  ASSERT_TRUE(result.ok());
  ASSERT_EQ(result.entries.size(), 3u);
  EXPECT_EQ(result.entries[0].xi, 0.0);
  EXPECT_EQ(result.entries[1].xi, 0.01);
  EXPECT_EQ(result.entries[2].xi, 0.05);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("duplicate"), std::string::npos);
  for (const SweepEntry& e : result.entries) {
    EXPECT_TRUE(fs::exists(e.csv)) << e.csv;
    EXPECT_EQ(read_csv(e.csv).size(), e.records.size());
  }
  EXPECT_EQ(result.entries[1].csv.filename(), "kuhn_xi0.01.csv");

  std::ostringstream table;
  print_sweep_table(table, result);
  EXPECT_NE(table.str().find("0.05"), std::string::npos);
}

TEST(Sweep, EmptyListIsNotAnError) {
  const SweepResult result = sweep(ExperimentConfig{}, {}, {});
  EXPECT_TRUE(result.entries.empty());
  EXPECT_TRUE(result.ok());
}

TEST(Sweep, FailingRunIsReportedWithoutStoppingOthers) {
  ExperimentConfig base;
  base.iterations = 16;
  const SweepResult result = sweep(base, {0.01, 0.9}, {});
  ASSERT_EQ(result.entries.size(), 2u);
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(result.entries[0].error.empty());
  EXPECT_FALSE(result.entries[0].records.empty());
  EXPECT_FALSE(result.entries[1].error.empty());
}

TEST(Slug, SelectorsBecomeFileNames) {
  EXPECT_EQ(selector_slug("kuhn"), "kuhn");
  EXPECT_EQ(selector_slug("leduc:k=3").find_first_of(":=/"), std::string::npos);
}

}  // namespace
}  // namespace pcfr
