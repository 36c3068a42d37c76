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

#include <algorithm>
#include <numeric>

#include "prs/metrics.hpp"
#include "prs/rng.hpp"
#include "support/oracles.hpp"

namespace prs {
namespace {

using testing::kendall_tau_pairs;
using testing::random_graph;
using testing::random_ranking;

std::vector<Vertex> iota_vec(int n, int start = 0) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), start);
  return v;
}

TEST(Hamming, Examples) {
  const std::vector<Vertex> a{1, 2}, b{2, 3}, empty{};
  EXPECT_EQ(hamming(a, a), 0);
  EXPECT_EQ(hamming(a, b), 2);
  EXPECT_EQ(hamming(empty, iota_vec(9)), 9);
}

TEST(Hamming, TriangleInequality) {
  SequentialRng rng(5);
  const auto random_set = [&] {
    std::vector<Vertex> s;
    for (int v = 0; v < 30; ++v) {
      if (rng.uniform() < 0.4) s.push_back(v);
    }
    return s;
  };
  for (int t = 0; t < 200; ++t) {
    const auto a = random_set(), b = random_set(), c = random_set();
    EXPECT_LE(hamming(a, c), hamming(a, b) + hamming(b, c));
  }
}

TEST(KendallTau, Examples) {
  const RankedSubset id = RankedSubset::identity(5);
  EXPECT_EQ(kendall_tau(id, id), 0);
  EXPECT_EQ(kendall_tau(RankedSubset::identity(3), RankedSubset::from_order({2, 1, 0})), 3);
  // sigma on {1,2,3} = (1,2,3); tau on {2,3,4} with 3 above 2: one inverted pair.
  const RankedSubset sigma = RankedSubset::from_order({1, 2, 3});
  const RankedSubset tau = RankedSubset::from_order({3, 2, 4});
  EXPECT_EQ(kendall_tau(sigma, tau), 1);
  EXPECT_EQ(kendall_tau_pairs(sigma, tau), 1);
}

TEST(KendallTau, MatchesPairEnumerationOnRandomInstances) {
  SequentialRng rng(99);
  for (int t = 0; t < 300; ++t) {
    std::vector<Vertex> a, b;
    for (int v = 0; v < 40; ++v) {
      if (rng.uniform() < 0.6) a.push_back(v);
      if (rng.uniform() < 0.6) b.push_back(v);
    }
    const RankedSubset sa = random_ranking(a, rng());
    const RankedSubset sb = random_ranking(b, rng());
    const auto d = kendall_tau(sa, sb);
    EXPECT_EQ(d, kendall_tau_pairs(sa, sb));
    EXPECT_EQ(d, kendall_tau(sb, sa));
    const double common = static_cast<double>(a.size() + b.size() - hamming(a, b)) / 2.0;
    EXPECT_LE(static_cast<double>(d), pairs(common));
  }
}

TEST(Inversions, Examples) {
  EXPECT_EQ(inversions(std::vector<int>{1, 2, 3, 4}), 0);
  EXPECT_EQ(inversions(std::vector<int>{6, 5, 4, 3, 2, 1}), 15);
}

TEST(Inversions, MeanOverSym8IsFourteen) {
  std::vector<int> perm(8);
  std::iota(perm.begin(), perm.end(), 1);
  std::int64_t sum = 0, count = 0;
  do {
    sum += inversions(perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 40320);
  EXPECT_EQ(sum, 14 * count);
}

TEST(Inversions, EqualsKendallTauToIdentity) {
  SequentialRng rng(3);
  for (int t = 0; t < 50; ++t) {
    const RankedSubset r = random_ranking(iota_vec(12), rng());
    std::vector<int> perm = r.order();
    EXPECT_EQ(inversions(perm), kendall_tau(r, RankedSubset::identity(12)));
  }
}

TEST(Alignment, Examples) {
  const RankedSubset id = RankedSubset::identity(3);
  const DirectedAdjacency y = acyclic_tournament(id, 3);
  EXPECT_EQ(alignment(id, y), 3);
  EXPECT_EQ(alignment(RankedSubset::from_order({2, 1, 0}), y), -3);
}

TEST(Alignment, EqualsTwiceAgreementsMinusPairs) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const DirectedAdjacency y = random_graph(6, 1.0, s);
    const RankedSubset r = random_ranking(iota_vec(6), s + 100);
    std::int64_t agree = 0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        if (y(i, j) == 1 && *r.rank_of(i) < *r.rank_of(j)) ++agree;
      }
    }
    EXPECT_EQ(alignment(r, y), 2 * agree - 15);
  }
}

TEST(Alignment, ReversalNegatesOnTournaments) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DirectedAdjacency y = random_graph(25, 1.0, s);
    const RankedSubset r = random_ranking(iota_vec(25), s + 7);
    std::vector<Vertex> rev = r.order();
    std::reverse(rev.begin(), rev.end());
    EXPECT_EQ(alignment(r, y) + alignment(RankedSubset::from_order(rev), y), 0);
  }
}

TEST(Alignment, ArgmaxAlsoMaximisesAgreements) {
  // For tournaments the likelihood is monotone in alignment: the two argmax
  // sets coincide (checked exhaustively at n = 6).
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DirectedAdjacency y = random_graph(6, 1.0, s);
    std::vector<Vertex> order = iota_vec(6);
    std::int64_t best_align = INT64_MIN, best_agree = INT64_MIN;
    std::vector<std::vector<Vertex>> by_align, by_agree;
    do {
      const RankedSubset r = RankedSubset::from_order(order);
      const std::int64_t a = alignment(r, y);
      std::int64_t agree = 0;
      for (std::size_t x = 0; x < 6; ++x) {
        for (std::size_t z = x + 1; z < 6; ++z) agree += y(order[x], order[z]) == 1;
      }
      if (a > best_align) {
        best_align = a;
        by_align.clear();
      }
      if (a == best_align) by_align.push_back(order);
      if (agree > best_agree) {
        best_agree = agree;
        by_agree.clear();
      }
      if (agree == best_agree) by_agree.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));
    EXPECT_EQ(by_align, by_agree);
  }
}

}  // namespace
}  // namespace prs
