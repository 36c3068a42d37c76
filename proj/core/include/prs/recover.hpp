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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prs/metrics.hpp"
#include "prs/model.hpp"
#include "prs/spectral.hpp"

namespace prs {

/// Net wins s_i = sum_j Y_ij. Always sums to zero.
std::vector<std::int64_t> win_scores(const DirectedAdjacency& graph);

/// Ranks all vertices by descending net wins; on equal scores i is ranked
/// below j when i < j.
RankedSubset ranking_by_wins(const DirectedAdjacency& graph);

/// Polar form of s_i = v_i * conj(sum_{j in support} v_j) on a support.
struct AngularEmbedding {
  std::vector<Vertex> support;
  std::vector<double> magnitudes;  // r_i >= 0
  std::vector<double> angles;      // theta_i in [-pi, pi)
};

AngularEmbedding angular_embedding(std::span<const Complex> v,
                                   std::vector<Vertex> support);

/// {i : |v_i|^2 >= 1/(2k)}.
std::vector<Vertex> heavy_coordinates(std::span<const Complex> v, double k);

/// Support ordered by descending angle; equal angles put the lower index first.
std::vector<Vertex> order_by_angle(const AngularEmbedding& embedding);

/// Optional community-size estimate: factor * #{i : |v_i|^2 >= 1/n}.
double estimate_community_size(std::span<const Complex> v, double factor = 1.0);

/// Spectral community and ranking recovery from the top eigenvector of iY.
/// Propagates EigenSolverError. Returns an empty estimate when no coordinate
/// clears the 1/(2k) cut.
RankingEstimate spectral_recover(const DirectedAdjacency& graph, double k,
                                 const EigenSolverOptions& options = {});

/// Exact maximiser of sum_{i<j in subset} Y_ij pi(i,j) over orderings of a
/// vertex subset of size <= 22 (subset DP). On ties the DP places the smallest
/// vertex last.
struct OrderingResult {
  RankedSubset ordering;
  std::int64_t value = 0;
};

inline constexpr int kMaxOrderingSubset = 22;

OrderingResult max_acyclic_ordering_dp(const DirectedAdjacency& graph,
                                       std::span<const Vertex> subset);

/// The same DP evaluated once for every subset of `vertices` (size <= 22):
/// value(mask) is the best ordering value of the vertices selected by mask.
class SubsetOrderingTable {
 public:
  SubsetOrderingTable(const DirectedAdjacency& graph,
                      std::span<const Vertex> vertices);

  int width() const noexcept { return static_cast<int>(vertices_.size()); }
  std::int64_t value(std::uint32_t mask) const noexcept { return best_[mask]; }
  OrderingResult ordering(std::uint32_t mask) const;

  /// best value over subsets of each exact size 0..width().
  std::vector<std::int64_t> best_by_size() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::int16_t> best_;
  std::vector<std::uint8_t> last_;
};

/// Brute-force MLE-style recovery: best (support of size exactly k, ordering)
/// by alignment value. Ties go to the lexicographically smallest support.
/// Requires n <= 22 and 0 <= k <= n. The estimate's objective carries the
/// maximal value.
RankingEstimate mle_recover(const DirectedAdjacency& graph, int k);

/// Unique topological order of the subgraph induced on `vertices` (source
/// first), or nullopt when it contains a directed cycle.
std::optional<std::vector<Vertex>> acyclic_order(const DirectedAdjacency& graph,
                                                 std::span<const Vertex> vertices);

/// Spectral ordered-clique recovery for tournaments: rough support from the
/// eigenvector, angular split into halves L (extra element here) and R,
/// refinement by in-degree from L / out-degree into R against 3k/8, then an
/// acyclicity check. A cyclic refinement yields a failure-marked estimate.
RankingEstimate ordered_clique_recover(const DirectedAdjacency& graph, double k,
                                       const EigenSolverOptions& options = {});

struct EnhancedOptions {
  EigenSolverOptions eigen;
  /// Restricts the guessed sets B to subsets of this pool (all of [n] when
  /// empty).
  std::vector<Vertex> guess_pool;
  /// Worker threads for the loop over guesses.
  int threads = 1;
};

/// Guess-and-recover variant: for each b-subset B, run ordered_clique_recover
/// (size parameter k - b) on the vertices dominated by all of B, and keep the
/// largest acyclic B + S_B (ties: lexicographically smallest vertex set).
/// Requires a tournament and 0 <= b <= 3.
RankingEstimate ordered_clique_recover_enhanced(const DirectedAdjacency& graph,
                                                double k, int b,
                                                const EnhancedOptions& options = {});

/// The first `size` heavy coordinates of the top eigenvector in descending
/// angle order: a small candidate pool for the guesses of the enhanced
/// variant.
std::vector<Vertex> angular_guess_pool(const DirectedAdjacency& graph, double k,
                                       int size,
                                       const EigenSolverOptions& options = {});

/// V_B = {i not in B : every vertex of B beats i}.
std::vector<Vertex> dominated_by_all(const DirectedAdjacency& graph,
                                     std::span<const Vertex> guess);

}  // namespace prs
