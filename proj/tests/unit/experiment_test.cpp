// Copyright 2026 The PRS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "prs/experiment.hpp"
#include "prs/graph_io.hpp"
#include "prs/rng.hpp"

namespace prs {
namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.alpha = {0.3, 0.5, 2};
  c.beta = {0.8, 0.8, 1};
  c.gamma = {0.0, 0.0, 1};
  c.n = {20, 30};
  c.trials = 3;
  c.algorithms = {Algorithm::kDegree2, Algorithm::kSpectralStat, Algorithm::kRbw,
                  Algorithm::kSpectral, Algorithm::kOrderedClique};
  c.base_seed = 17;
  return c;
}

TEST(Algorithm, IdsRoundTrip) {
  for (auto a : {Algorithm::kDegree2, Algorithm::kSpectralStat, Algorithm::kExhaustive, Algorithm::kRbw,
                 Algorithm::kSpectral, Algorithm::kMle, Algorithm::kOrderedClique,
                 Algorithm::kOrderedCliqueEnhanced}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("nope"), std::invalid_argument);
}

TEST(GridRange, Values) {
  EXPECT_EQ((GridRange{0.2, 0.9, 1}.values()), std::vector<double>{0.2});
  const auto v = GridRange{0.0, 1.0, 5}.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_DOUBLE_EQ(v[1], 0.25);
  EXPECT_EQ(v.back(), 1.0);
}

TEST(SweepConfig, Validation) {
  SweepConfig c = small_config();
  EXPECT_NO_THROW(c.validate());
  c.alpha.max = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.trials = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.beta.steps = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.algorithms.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SweepConfig, JsonParseAndCanonicalForm) {
  const SweepConfig c = parse_sweep_config(R"({
    "alpha": {"min": 0.3, "max": 0.5, "steps": 2},
    "beta": 0.8, "gamma": 0,
    "n": [20, 30], "trials": 3,
    "algorithms": ["degree2", "spectral_stat", "rbw", "spectral", "ordered_clique"],
    "base_seed": 17
  })");
  EXPECT_EQ(c, small_config());
  EXPECT_EQ(config_hash(c), config_hash(small_config()));
  EXPECT_EQ(parse_sweep_config(canonical_json(c)), c);
  SweepConfig other = c;
  other.base_seed = 18;
  EXPECT_NE(config_hash(other), config_hash(c));
}

TEST(SweepConfig, RejectsBadJson) {
  EXPECT_THROW(parse_sweep_config("{"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_config(R"({"unknown": 1})"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_config(R"({"trials": "x"})"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_config(R"({"algorithms": ["bogus"]})"), std::invalid_argument);
}

TEST(RunTrial, DetectionRowSchema) {
  const Cell cell = enumerate_cells(small_config()).front();
  const TrialRecord r = run_trial(cell, Algorithm::kDegree2, 0, ModelKind::kNull, {});
  EXPECT_FALSE(r.failed);
  EXPECT_TRUE(r.decision.has_value());
  EXPECT_TRUE(r.statistic.has_value());
  EXPECT_FALSE(r.d_h.has_value());
  EXPECT_FALSE(r.d_kt.has_value());
  EXPECT_FALSE(r.wall_ms.has_value());
}

TEST(RunTrial, RecoveryRowSchema) {
  const Cell cell = enumerate_cells(small_config()).front();
  const TrialRecord r = run_trial(cell, Algorithm::kSpectral, 1, ModelKind::kPlanted, {});
  EXPECT_FALSE(r.decision.has_value());
  ASSERT_TRUE(r.d_h && r.d_kt && r.normalized_hamming && r.normalized_kt);
  EXPECT_GE(*r.normalized_hamming, 0.0);
  EXPECT_LE(*r.normalized_hamming, 1.0);
  EXPECT_GE(*r.normalized_kt, 0.0);
  EXPECT_LE(*r.normalized_kt, 1.0);
  EXPECT_TRUE(r.eigen_iterations.has_value());
}

TEST(RunTrial, InvalidCellBecomesFailureRow) {
  Cell cell;
  cell.params = ModelParams::from_exponents(20, 0.1, 0.5, 0.0);  // q > 1/2
  const TrialRecord r = run_trial(cell, Algorithm::kRbw, 0, ModelKind::kPlanted, {});
  EXPECT_TRUE(r.failed);
  EXPECT_FALSE(r.message.empty());
}

TEST(RunTrial, AlgorithmPreconditionBecomesFailureRow) {
  Cell cell;
  cell.params = {40, 10, 1.0, 0.5};
  const TrialRecord r = run_trial(cell, Algorithm::kExhaustive, 0, ModelKind::kNull, {});
  EXPECT_TRUE(r.failed);
}

TEST(RunTrial, SeedDerivation) {
  EXPECT_EQ(trial_seed(5, 2, 3, ModelKind::kNull),
            mix_seed(mix_seed(mix_seed(5, 2), 3), 0));
  EXPECT_NE(trial_seed(5, 2, 3, ModelKind::kNull), trial_seed(5, 2, 3, ModelKind::kPlanted));
}

TEST(Csv, RowsRoundTripLosslessly) {
  const SweepResult res = run_sweep(small_config());
  ASSERT_FALSE(res.records.empty());
  for (const auto& r : res.records) EXPECT_EQ(parse_csv_row(to_csv_row(r)), r);
  TrialRecord odd;
  odd.algorithm = "rbw";
  odd.failed = true;
  odd.message = "comma, \"quote\" here";
  odd.wall_ms = 0.1;
  odd.k = 1.0 / 3.0;
  EXPECT_EQ(parse_csv_row(to_csv_row(odd)), odd);
  EXPECT_THROW(parse_csv_row("a,b"), std::invalid_argument);
}

TEST(Sweep, FooterCountsAndSummary) {
  const SweepConfig c = small_config();
  const SweepResult res = run_sweep(c);
  // 4 cells x 3 trials x (2 + 2 + 1 + 1 + 1).
  EXPECT_EQ(res.expected_trials, 4 * 3 * 7);
  EXPECT_EQ(static_cast<std::int64_t>(res.records.size()), res.expected_trials);
  EXPECT_EQ(res.summaries.size(), 4u * 5u);
  const std::string json = summary_json(c, res);
  EXPECT_NE(json.find("\"consistent\": true"), std::string::npos);
  EXPECT_NE(json.find(config_hash(c)), std::string::npos);
}

TEST(Sweep, SingleCellGivesOneSummaryRowPerAlgorithm) {
  SweepConfig c = small_config();
  c.alpha = {0.5, 0.5, 1};
  c.n = {25};
  c.algorithms = {Algorithm::kDegree2};
  EXPECT_EQ(run_sweep(c).summaries.size(), 1u);
}

TEST(Sweep, ReplayIsByteIdenticalAndThreadIndependent) {
  SweepConfig c = small_config();
  std::ostringstream a, b, d;
  write_csv(a, c, run_sweep(c).records);
  write_csv(b, c, run_sweep(c).records);
  c.threads = 4;
  write_csv(d, c, run_sweep(c).records);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), d.str());
}

TEST(Sweep, WritesFiles) {
  SweepConfig c = small_config();
  const auto dir = std::filesystem::temp_directory_path() / "prs_experiment_test";
  std::filesystem::create_directories(dir);
  c.output = (dir / "out.csv").string();
  run_sweep_to_files(c);
  const std::string csv = load_text(c.output);
  EXPECT_EQ(csv.rfind("# artifact: ", 0), 0u);
  EXPECT_NE(csv.find(csv_header_line()), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(c.output + ".summary.json"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace prs
