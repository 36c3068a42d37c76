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

#include <boost/rational.hpp>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "prs/model.hpp"

namespace prs {

using Rational = boost::rational<std::int64_t>;

/// A set of unordered vertex pairs, stored normalised (i < j), sorted, unique.
class EdgeSet {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  /// V(A): sorted vertex support.
  std::vector<Vertex> vertices() const;

  /// Connected components as edge sets.
  std::vector<EdgeSet> components() const;

  /// Every connected component has an even number of edges.
  bool is_even() const;

  bool operator==(const EdgeSet&) const = default;

 private:
  std::vector<Edge> edges_;
};

inline constexpr int kMaxSignExpectationVertices = 10;

/// E over uniform orderings of V(a) of (-1)^{#edges {i<j} with pi(i) > pi(j)},
/// by enumerating all |V(a)|! relative orders. Requires |V(a)| <= 10.
Rational ordering_sign_expectation(const EdgeSet& a);

/// E_P[Y^a] = (k/n)^{|V(a)|} (2pq)^{|a|} prod_components sign expectation.
double planted_monomial_expectation(const EdgeSet& a, const ModelParams& params);

/// h_{A,B}(Y) = p^{-|A|/2} Y^A (p(1-p))^{-|B|/2} (Y.^2 - p)^B for disjoint A, B.
double basis_polynomial(const EdgeSet& a, const EdgeSet& b, double p,
                        const DirectedAdjacency& graph);

/// E_P[h_{A,empty}]; E_P[h_{A,B}] vanishes for nonempty B.
double planted_basis_expectation(const EdgeSet& a, const ModelParams& params);

struct LowDegParams {
  int degree = 0;  // D
  ModelParams model;
};

inline constexpr int kMaxAdvantageVertices = 7;
inline constexpr int kMaxAdvantageDegree = 6;

/// sqrt of sum over even edge sets A of [n] with |A| <= D of E_P[h_A]^2.
/// Requires n <= 7 and D <= 6.
double advantage_exact(const LowDegParams& params);

/// Q-probability of an observation.
double null_probability(const DirectedAdjacency& graph, double p);

/// P_{S,pi}-probability of an observation (community and ranking fixed).
double planted_probability(const DirectedAdjacency& graph, const RankedSubset& community,
                           double p, double q);

inline constexpr int kMaxChiSquareVertices = 4;

/// chi^2(P_{k'} || Q) from first principles: sum over all 3^{C(n,2)}
/// observations of P_{k'}[Y]^2 / Q[Y], minus 1, where P_{k'} averages over
/// every size-k' support and ranking. Requires n <= 4.
double chi2_exact(int n, int community_size, double p, double q);

/// The same divergence via the permutation-pair identity
/// E_{S,S'} E_{pi,pi'} (1+4pq^2)^{C(h,2)-d_KT} (1-4pq^2)^{d_KT} - 1,
/// h = |S cap S'|, enumerating supports and rankings.
double chi2_permutation_pairs(int n, int community_size, double p, double q);

inline constexpr int kMaxInversionMgfSize = 9;

/// E_{pi uniform on Sym([h])} (1+x)^{C(h,2) - 2 inv(pi)}, by enumeration.
double inversion_mgf(int h, double x);

/// exp(x^2 h^3 / 2) (1 + 2 sqrt(pi x^2 h^3 / 2)).
double inversion_mgf_bound(int h, double x);

/// All unordered pairs of [n] in lexicographic order.
std::vector<EdgeSet::Edge> all_pairs(int n);

}  // namespace prs
