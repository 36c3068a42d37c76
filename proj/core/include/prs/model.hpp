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

namespace prs {

using Vertex = int;

/// Parameters (n, k, p, q) of the planted ranked subgraph model.
///
/// `k` is the expected community size: each vertex joins the community
/// independently with probability k/n, so the realized size is random.
struct ModelParams {
  int n = 0;
  double k = 0.0;
  double p = 0.0;
  double q = 0.0;

  /// Throws std::invalid_argument unless n >= 1, 0 < k <= n, p in [0,1] and
  /// q in [0, 1/2].
  void validate() const;

  /// Log-density exponents: q = n^-alpha, k = n^beta, p = n^-gamma.
  struct Exponents {
    double alpha;
    double beta;
    double gamma;
  };

  /// Requires n >= 2 and p, q > 0 so that every exponent is finite.
  Exponents exponents() const;

  static ModelParams from_exponents(int n, double alpha, double beta,
                                    double gamma);

  bool operator==(const ModelParams&) const = default;
};

/// Skew-symmetric observation matrix with entries in {-1, 0, +1}.
/// entry(i, j) = +1 encodes the edge i -> j. Dense, row-major, one byte per
/// entry.
class DirectedAdjacency {
 public:
  DirectedAdjacency() = default;
  explicit DirectedAdjacency(int n);

  /// Validates skew-symmetry, the zero diagonal and the {-1,0,1} alphabet.
  static DirectedAdjacency from_entries(int n, std::vector<std::int8_t> entries);

  int size() const noexcept { return n_; }

  std::int8_t operator()(Vertex i, Vertex j) const noexcept {
    return entries_[static_cast<std::size_t>(i) * n_ + j];
  }

  std::span<const std::int8_t> row(Vertex i) const noexcept {
    return {entries_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }

  const std::vector<std::int8_t>& entries() const noexcept { return entries_; }

  /// Sets the pair {from, to} to the single directed edge from -> to.
  void set_edge(Vertex from, Vertex to);
  void clear_pair(Vertex i, Vertex j);

  std::int64_t edge_count() const noexcept;
  bool is_tournament() const noexcept;

  /// Induced subgraph on `vertices`, relabelled 0..m-1 in the given order.
  DirectedAdjacency induced(std::span<const Vertex> vertices) const;

  /// Simultaneous relabelling: result(perm[i], perm[j]) = (*this)(i, j).
  DirectedAdjacency relabeled(std::span<const Vertex> perm) const;

  bool operator==(const DirectedAdjacency&) const = default;

 private:
  int n_ = 0;
  std::vector<std::int8_t> entries_;
};

/// A vertex set together with a bijection onto {1, ..., size}.
///
/// Members are stored sorted ascending; ranks()[t] is the (1-based) rank of
/// members()[t]. Rank 1 is the top of the hierarchy: under the planted model
/// pairs i, j with rank(i) < rank(j) favour the edge i -> j.
class RankedSubset {
 public:
  RankedSubset() = default;

  /// order[0] receives rank 1, order[1] rank 2, and so on.
  static RankedSubset from_order(std::vector<Vertex> order);

  /// Throws std::invalid_argument unless ranks is a bijection onto 1..m.
  static RankedSubset from_ranks(std::vector<Vertex> members,
                                 std::vector<int> ranks);

  static RankedSubset identity(int n);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  const std::vector<Vertex>& members() const noexcept { return members_; }
  const std::vector<int>& ranks() const noexcept { return ranks_; }

  /// Members listed from rank 1 downwards.
  std::vector<Vertex> order() const;

  bool contains(Vertex v) const noexcept;
  std::optional<int> rank_of(Vertex v) const noexcept;

  /// Dense rank lookup over [0, n): 0 for non-members.
  std::vector<int> rank_table(int n) const;

  bool operator==(const RankedSubset&) const = default;

 private:
  RankedSubset(std::vector<Vertex> members, std::vector<int> ranks)
      : members_(std::move(members)), ranks_(std::move(ranks)) {}

  std::vector<Vertex> members_;
  std::vector<int> ranks_;
};

/// Ground truth (S, pi_S) with the observed graph.
struct PlantedInstance {
  ModelParams params;
  RankedSubset community;
  DirectedAdjacency graph;

  bool operator==(const PlantedInstance&) const = default;
};

/// Null model Q: every unordered pair independently carries no edge with
/// probability 1-p and each orientation with probability p/2.
DirectedAdjacency sample_null(const ModelParams& params, std::uint64_t seed);

/// Planted model P: community, uniform ranking, then biased orientations.
PlantedInstance sample_planted(const ModelParams& params, std::uint64_t seed);

/// Planted model conditional on (S, pi_S).
PlantedInstance sample_planted_given(const ModelParams& params,
                                     RankedSubset community,
                                     std::uint64_t seed);

/// The acyclic tournament of `ranking` on [n]: i -> j iff rank(i) < rank(j).
/// Vertices outside the ranking have no edges.
DirectedAdjacency acyclic_tournament(const RankedSubset& ranking, int n);

}  // namespace prs
