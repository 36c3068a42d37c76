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

#include <cmath>
#include <sstream>

#include "prs/graph_io.hpp"
#include "prs/model.hpp"
#include "prs/rng.hpp"
#include "support/oracles.hpp"

namespace prs {
namespace {

TEST(Rng, CounterMatchesSequentialSplitMix) {
  // Reference SplitMix64 stepping: state += gamma; output mix(state).
  std::uint64_t state = 12345;
  CounterRng counter(12345);
  for (std::uint64_t t = 0; t < 100; ++t) {
    state += kGoldenGamma;
    EXPECT_EQ(counter.bits(t), splitmix64_mix(state));
  }
}

TEST(Rng, KnownSplitMixOutput) {
  // First output of SplitMix64 seeded with 0.
  EXPECT_EQ(CounterRng(0).bits(0), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  SequentialRng rng(7);
  std::vector<int> hits(10, 0);
  for (int t = 0; t < 10000; ++t) {
    const auto v = rng.below(10);
    ASSERT_LT(v, 10u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

TEST(ModelParams, ValidateRejectsOutOfRange) {
  EXPECT_NO_THROW((ModelParams{10, 5, 0.5, 0.25}.validate()));
  EXPECT_THROW((ModelParams{0, 1, 0.5, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((ModelParams{10, 0, 0.5, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((ModelParams{10, 11, 0.5, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((ModelParams{10, 5, 1.5, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((ModelParams{10, 5, 0.5, 0.6}.validate()), std::invalid_argument);
}

TEST(ModelParams, ExponentsRoundTrip) {
  for (int n : {50, 1000, 20000}) {
    for (double a : {0.1, 0.5, 0.9}) {
      for (double b : {0.3, 0.7, 1.0}) {
        for (double g : {0.0, 0.25, 0.8}) {
          const ModelParams m = ModelParams::from_exponents(n, a, b, g);
          const auto e = m.exponents();
          EXPECT_NEAR(e.alpha, a, 1e-12);
          EXPECT_NEAR(e.beta, b, 1e-12);
          EXPECT_NEAR(e.gamma, g, 1e-12);
        }
      }
    }
  }
}

TEST(DirectedAdjacency, FromEntriesValidates) {
  EXPECT_NO_THROW(DirectedAdjacency::from_entries(2, {0, 1, -1, 0}));
  EXPECT_THROW(DirectedAdjacency::from_entries(2, {0, 1, 1, 0}), std::invalid_argument);
  EXPECT_THROW(DirectedAdjacency::from_entries(2, {1, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(DirectedAdjacency::from_entries(2, {0, 2, -2, 0}), std::invalid_argument);
  EXPECT_THROW(DirectedAdjacency::from_entries(2, {0, 1, -1}), std::invalid_argument);
}

TEST(RankedSubset, FromRanksRejectsNonBijection) {
  EXPECT_THROW(RankedSubset::from_ranks({1, 2}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(RankedSubset::from_ranks({1, 2}, {1, 3}), std::invalid_argument);
  const RankedSubset r = RankedSubset::from_ranks({5, 2}, {1, 2});
  EXPECT_EQ(r.members(), (std::vector<Vertex>{2, 5}));
  EXPECT_EQ(r.order(), (std::vector<Vertex>{5, 2}));
  EXPECT_EQ(r.rank_of(5), 1);
  EXPECT_FALSE(r.rank_of(3).has_value());
}

TEST(SampleNull, ZeroDensityIsEmpty) {
  EXPECT_EQ(sample_null({30, 1, 0.0, 0.0}, 9).edge_count(), 0);
}

TEST(SampleNull, FullDensityIsTournament) {
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_TRUE(sample_null({50, 1, 1.0, 0.0}, s).is_tournament());
}

TEST(SampleNull, SameSeedSameGraphDifferentSeedDifferentGraph) {
  const ModelParams m{100, 1, 0.5, 0.0};
  EXPECT_EQ(sample_null(m, 42), sample_null(m, 42));
  EXPECT_NE(sample_null(m, 42), sample_null(m, 43));
}

TEST(SampleNull, PinnedOutputIsStable) {
  // Golden output guards the documented generator and pair order.
  std::ostringstream out;
  write_graph(out, sample_null({6, 1, 0.5, 0.0}, 2026));
  EXPECT_EQ(out.str(), "n 6\n2 1\n1 4\n1 6\n2 4\n6 2\n3 6\n5 4\n");
}

TEST(SamplePlanted, PinnedOutputIsStable) {
  std::ostringstream out;
  write_instance(out, sample_planted({6, 3, 0.8, 0.3}, 2026));
  EXPECT_EQ(out.str(),
            "n 6\nparams 3 0.80000000000000004 0.29999999999999999\nS 2 5\npi 2 1\n"
            "2 1\n3 1\n1 4\n1 6\n2 4\n5 2\n2 6\n5 3\n3 6\n5 4\n6 5\n");
}

TEST(SampleNull, BernoulliLawMonteCarlo) {
  // Pooled over trials: edge fraction p, orientation low->high 1/2.
  const int n = 2000;
  const ModelParams m{n, 1, 0.5, 0.0};
  double present = 0, low_high = 0, total = 0;
  for (std::uint64_t s = 0; s < 4; ++s) {
    const DirectedAdjacency y = sample_null(m, s);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        ++total;
        if (y(i, j) != 0) ++present;
        if (y(i, j) == 1) ++low_high;
      }
    }
  }
  EXPECT_NEAR(present / total, 0.5, 0.01);
  EXPECT_NEAR(low_high / present, 0.5, 0.01);
}

TEST(SampleNull, ErdosRenyiDensity) {
  const int n = 1500;
  const double p = 0.3;
  const DirectedAdjacency y = sample_null({n, 1, p, 0.0}, 77);
  const double pairs = n * (n - 1) / 2.0;
  EXPECT_NEAR(static_cast<double>(y.edge_count()) / pairs, p, 4 * std::sqrt(p / pairs));
}

TEST(SamplePlanted, SkewSymmetryAndBijection) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PlantedInstance inst = sample_planted({40, 15, 0.7, 0.3}, s);
    const auto& y = inst.graph;
    for (int i = 0; i < 40; ++i) {
      EXPECT_EQ(y(i, i), 0);
      for (int j = 0; j < 40; ++j) EXPECT_EQ(y(i, j), -y(j, i));
    }
    std::vector<int> ranks = inst.community.ranks();
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t t = 0; t < ranks.size(); ++t) EXPECT_EQ(ranks[t], static_cast<int>(t) + 1);
  }
}

TEST(SamplePlanted, FullBiasGivesAcyclicTournament) {
  const int n = 60;
  const PlantedInstance inst = sample_planted({n, double(n), 1.0, 0.5}, 3);
  ASSERT_EQ(inst.community.size(), static_cast<std::size_t>(n));
  EXPECT_EQ(inst.graph, acyclic_tournament(inst.community, n));
}

TEST(SamplePlanted, CommunitySizeIsBinomial) {
  const ModelParams m{400, 80, 0.5, 0.1};
  const int trials = 400;
  double sum = 0;
  for (int t = 0; t < trials; ++t) {
    sum += static_cast<double>(sample_planted(m, static_cast<std::uint64_t>(t)).community.size());
  }
  EXPECT_NEAR(sum / trials, m.k, 3 * std::sqrt(m.k) / std::sqrt(double(trials)));
}

TEST(SamplePlanted, ZeroBiasMatchesNullOrientation) {
  const int n = 200;
  const ModelParams m{n, 100, 0.6, 0.0};
  const int trials = 2000;
  // Orientation frequency of a few fixed pairs vs the null law (p/2 each way).
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {3, 150}, {17, 18}, {99, 199}};
  for (const auto& [i, j] : pairs) {
    double forward = 0;
    for (int t = 0; t < trials; ++t) {
      forward += sample_planted(m, static_cast<std::uint64_t>(t)).graph(i, j) == 1;
    }
    const double se = std::sqrt(0.3 * 0.7 / trials);
    EXPECT_NEAR(forward / trials, 0.3, 3.5 * se);
  }
}

TEST(SamplePlantedGiven, EmptyCommunityEqualsNull) {
  const ModelParams m{80, 10, 0.4, 0.3};
  for (std::uint64_t s = 0; s < 5; ++s) {
    EXPECT_EQ(sample_planted_given(m, RankedSubset{}, s).graph, sample_null(m, s));
  }
}

TEST(SamplePlantedGiven, ForcedEdge) {
  const ModelParams m{5, 2, 1.0, 0.5};
  const RankedSubset c = RankedSubset::from_order({0, 1});
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_EQ(sample_planted_given(m, c, s).graph(0, 1), 1);
}

TEST(SamplePlantedGiven, MeanMatchesTwoQTimesOrderingMatrix) {
  const int n = 1000;
  const double q = 0.1;
  const ModelParams m{n, double(n), 1.0, q};
  const RankedSubset id = RankedSubset::identity(n);
  const int trials = 400;
  std::vector<std::pair<int, int>> entries;
  for (int t = 0; t < 20; ++t) entries.emplace_back((t * 37) % n, (t * 53 + 11) % n);
  std::vector<double> sums(entries.size(), 0.0);
  for (int t = 0; t < trials; ++t) {
    const DirectedAdjacency y = sample_planted_given(m, id, static_cast<std::uint64_t>(t)).graph;
    for (std::size_t e = 0; e < entries.size(); ++e) sums[e] += y(entries[e].first, entries[e].second);
  }
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto [i, j] = entries[e];
    const double expect = i < j ? 2 * q : (i > j ? -2 * q : 0.0);
    const double se = std::sqrt((1 - 4 * q * q) / trials);
    EXPECT_NEAR(sums[e] / trials, expect, 3.5 * se + 1e-12) << i << "," << j;
  }
}

TEST(SamplePlantedGiven, RejectsOutOfRangeMembers) {
  EXPECT_THROW(sample_planted_given({5, 2, 1.0, 0.5}, RankedSubset::from_order({0, 7}), 1),
               std::out_of_range);
}

TEST(GraphIo, InstanceRoundTrip) {
  const PlantedInstance inst = sample_planted({30, 12, 0.5, 0.2}, 11);
  std::ostringstream out;
  write_instance(out, inst);
  std::istringstream in(out.str());
  const PlantedInstance back = read_instance(in);
  EXPECT_EQ(back, inst);
  std::ostringstream again;
  write_instance(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(GraphIo, GraphRoundTripAndOneIndexing) {
  DirectedAdjacency y(3);
  y.set_edge(0, 2);
  std::ostringstream out;
  write_graph(out, y);
  EXPECT_EQ(out.str(), "n 3\n1 3\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_graph(in), y);
}

TEST(GraphIo, RejectsMalformed) {
  for (const char* text : {"", "n 3\n1 4\n", "n 3\n1 2\n2 1\n", "n 3\n1 1\n", "n x\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_graph(in), FormatError) << text;
  }
}

}  // namespace
}  // namespace prs
