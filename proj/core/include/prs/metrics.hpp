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
#include <string>

#include "prs/model.hpp"

namespace prs {

/// An algorithm's output (S^, pi^ on S^). A failure-marked estimate keeps
/// whatever partial support the algorithm reached but must not be scored as
/// a success.
struct RankingEstimate {
  RankedSubset ranking;
  bool failed = false;
  std::string failure_reason;
  int eigen_iterations = 0;
  /// Objective value reached, for algorithms that maximise one.
  std::optional<std::int64_t> objective;

  const std::vector<Vertex>& support() const noexcept { return ranking.members(); }
};

/// |a symmetric-difference b| for sorted vertex sets.
std::int64_t hamming(std::span<const Vertex> a, std::span<const Vertex> b);

/// Number of unordered pairs in the common support ordered one way by `sigma`
/// and the other way by `tau`. Merge-sort inversion count, O(m log m).
std::int64_t kendall_tau(const RankedSubset& sigma, const RankedSubset& tau);

/// Inversions of a permutation given as values: #{i < j : perm[i] > perm[j]}.
/// Values only need to be distinct.
std::int64_t inversions(std::span<const int> perm);

/// Sum over directed edges (i, j) of +1 if ranking puts i above j, else -1.
/// `ranking` must rank every vertex of the graph.
std::int64_t alignment(const RankedSubset& ranking, const DirectedAdjacency& graph);

/// C(m, 2) as a double (normalisers for error rates).
constexpr double pairs(double m) noexcept { return m * (m - 1.0) / 2.0; }

}  // namespace prs
