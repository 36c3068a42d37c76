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

#include <bit>
#include <cmath>
#include <numeric>

#include "prs/detect.hpp"
#include "prs/recover.hpp"
#include "support/oracles.hpp"

namespace prs {
namespace {

using testing::degree2_triple_sum;
using testing::max_ordering_value_bruteforce;
using testing::random_graph;
using testing::random_ranking;

TEST(Degree2, Examples) {
  EXPECT_EQ(degree2_statistic(DirectedAdjacency(7)), 0.0);
  EXPECT_EQ(degree2_statistic(acyclic_tournament(RankedSubset::identity(3), 3)), 1.0);
}

TEST(Degree2, EqualsTripleSum) {
  for (int n : {2, 3, 10, 33, 60}) {
    for (double p : {0.2, 0.7, 1.0}) {
      const DirectedAdjacency y = random_graph(n, p, static_cast<std::uint64_t>(n + 100 * p));
      EXPECT_EQ(degree2_statistic(y), static_cast<double>(degree2_triple_sum(y)));
    }
  }
}

TEST(Degree2, InvariantUnderRelabelling) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DirectedAdjacency y = random_graph(40, 0.5, s);
    std::vector<Vertex> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    perm = random_ranking(perm, s + 1).order();
    EXPECT_EQ(degree2_statistic(y), degree2_statistic(y.relabeled(perm)));
  }
}

TEST(Degree2, ThresholdExamples) {
  EXPECT_EQ(degree2_threshold({100, 10, 0.5, 0.0}), 0.0);
  EXPECT_NEAR(degree2_threshold({1000, 500, 0.5, 0.2}), 416666.6667, 1e-3);
}

TEST(Degree2, NullMeanAndVariance) {
  // E_Q f = 0 and Var_Q f ~ n^3 p^2 / 2.
  const int n = 1000;
  const int trials = 600;
  for (double p : {0.3, 1.0}) {
    double sum = 0, sumsq = 0;
    for (int t = 0; t < trials; ++t) {
      const double f = degree2_statistic(sample_null({n, 1, p, 0}, static_cast<std::uint64_t>(t)));
      sum += f;
      sumsq += f * f;
    }
    const double mean = sum / trials;
    const double var = sumsq / trials - mean * mean;
    const double model_var = std::pow(n, 3) * p * p / 2;
    EXPECT_LE(std::abs(mean), 3.5 * std::sqrt(model_var / trials));
    EXPECT_GE(var / model_var, 0.8);
    EXPECT_LE(var / model_var, 1.2);
  }
}

TEST(Degree2, PlantedMeanNearTwiceThreshold) {
  const ModelParams m{800, 400, 0.5, 0.2};
  const int trials = 150;
  double sum = 0;
  for (int t = 0; t < trials; ++t) sum += degree2_statistic(sample_planted(m, static_cast<std::uint64_t>(t)).graph);
  EXPECT_NEAR(sum / trials / (2 * degree2_threshold(m)), 1.0, 0.1);
}

TEST(Spectral, ZeroGraph) { EXPECT_EQ(spectral_statistic(DirectedAdjacency(5)), 0.0); }

TEST(Exhaustive, Examples) {
  EXPECT_EQ(exhaustive_detect_statistic(DirectedAdjacency(6), 2), 0.0);
  EXPECT_EQ(exhaustive_detect_statistic(acyclic_tournament(RankedSubset::identity(4), 4), 2), 6.0);
  EXPECT_THROW(exhaustive_detect_statistic(DirectedAdjacency(17), 2), std::invalid_argument);
  EXPECT_EQ(exhaustive_threshold({10, 4, 0.5, 0.25}), 0.5 * 0.5 * 0.25 * 16);
}

TEST(Exhaustive, MatchesBruteForceOverSubsets) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const int n = 7;
    const DirectedAdjacency y = random_graph(n, 0.7, s);
    for (double k : {1.0, 1.5, 3.0}) {
      std::int64_t best = 0;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) > 2 * k) continue;
        std::vector<Vertex> sub;
        for (int v = 0; v < n; ++v) {
          if (mask >> v & 1u) sub.push_back(v);
        }
        best = std::max(best, max_ordering_value_bruteforce(y, sub));
      }
      EXPECT_EQ(exhaustive_detect_statistic(y, k), static_cast<double>(best));
    }
  }
}

TEST(Exhaustive, MonotoneInSizeBound) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DirectedAdjacency y = random_graph(12, 0.8, s);
    double prev = -1;
    for (double k = 0.5; k <= 6; k += 0.5) {
      const double v = exhaustive_detect_statistic(y, k);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(RunDetection, DecisionIffAboveThreshold) {
  const ModelParams m{12, 6, 1.0, 0.5};
  const PlantedInstance inst = sample_planted(m, 5);
  for (auto kind : {DetectionKind::kDegree2, DetectionKind::kSpectral, DetectionKind::kExhaustive}) {
    const DetectionReport r = run_detection(inst.graph, m, kind);
    EXPECT_EQ(r.decision == Decision::kPlanted, r.statistic_value >= r.threshold);
    EXPECT_EQ(r.statistic_kind, kind);
  }
}

TEST(RunDetection, ExhaustiveFlagsPlantedOrderedClique) {
  const ModelParams m{12, 6, 1.0, 0.5};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PlantedInstance inst = sample_planted(m, s);
    if (inst.community.size() != 6) continue;
    EXPECT_EQ(run_detection(inst.graph, m, DetectionKind::kExhaustive).decision, Decision::kPlanted);
  }
}

TEST(RunDetection, SpectralNullAtModerateSize) {
  const ModelParams m{2000, 1, 1.0, 0.0};
  const DetectionReport r = run_detection(sample_null(m, 1), m, DetectionKind::kSpectral);
  EXPECT_EQ(r.decision, Decision::kNull);
  EXPECT_NEAR(r.statistic_value, 2.0, 0.1);
}

TEST(RunDetection, RejectsSizeMismatch) {
  EXPECT_THROW(run_detection(DirectedAdjacency(3), {4, 1, 0.5, 0.1}, DetectionKind::kDegree2),
               std::invalid_argument);
}

TEST(Calibration, PicksSeparatingThreshold) {
  const std::vector<double> null_v{0, 1, 2, 3}, planted_v{5, 6, 7};
  const Calibration c = calibrate_threshold(null_v, planted_v);
  EXPECT_EQ(c.total_error, 0.0);
  EXPECT_EQ(c.threshold, 5.0);
}

TEST(Calibration, OverlapCountsErrors) {
  const std::vector<double> null_v{0, 4}, planted_v{3, 10};
  const Calibration c = calibrate_threshold(null_v, planted_v);
  EXPECT_DOUBLE_EQ(c.total_error, 0.5);
  EXPECT_DOUBLE_EQ(c.false_alarm + c.missed, c.total_error);
}

TEST(DetectionKind, ParseAndPrint) {
  for (auto k : {DetectionKind::kDegree2, DetectionKind::kSpectral, DetectionKind::kExhaustive}) {
    EXPECT_EQ(parse_detection_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_detection_kind("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace prs
