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

#include "prs/lowdeg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "prs/metrics.hpp"

namespace prs {

EdgeSet::EdgeSet(std::vector<Edge> edges) {
  for (auto& [i, j] : edges) {
    if (i == j) throw std::invalid_argument("EdgeSet: self-loop");
    if (i < 0 || j < 0) throw std::invalid_argument("EdgeSet: negative vertex");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

std::vector<Vertex> EdgeSet::vertices() const {
  std::vector<Vertex> out;
  out.reserve(2 * edges_.size());
  for (const auto& [i, j] : edges_) {
    out.push_back(i);
    out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EdgeSet> EdgeSet::components() const {
  const std::vector<Vertex> verts = vertices();
  const auto local = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) -
                                    verts.begin());
  };
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [i, j] : edges_) parent[find(local(i))] = find(local(j));

  std::map<std::size_t, std::vector<Edge>> groups;
  for (const auto& e : edges_) groups[find(local(e.first))].push_back(e);
  // Order components by their smallest edge.
  std::vector<EdgeSet> out;
  for (auto& [root, es] : groups) out.emplace_back(std::move(es));
  std::sort(out.begin(), out.end(), [](const EdgeSet& a, const EdgeSet& b) {
    return a.edges().front() < b.edges().front();
  });
  return out;
}

bool EdgeSet::is_even() const {
  for (const auto& c : components()) {
    if (c.size() % 2 != 0) return false;
  }
  return true;
}

std::vector<EdgeSet::Edge> all_pairs(int n) {
  std::vector<EdgeSet::Edge> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

Rational ordering_sign_expectation(const EdgeSet& a) {
  const std::vector<Vertex> verts = a.vertices();
  const auto m = verts.size();
  if (m > static_cast<std::size_t>(kMaxSignExpectationVertices)) {
    throw std::invalid_argument("ordering_sign_expectation: |V(a)| exceeds 10");
  }
  if (a.empty()) return Rational(1);
  std::vector<std::pair<std::size_t, std::size_t>> local;
  for (const auto& [i, j] : a.edges()) {
    const auto li = static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), i) - verts.begin());
    const auto lj = static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), j) - verts.begin());
    local.emplace_back(li, lj);
  }
  std::vector<int> position(m);
  std::iota(position.begin(), position.end(), 0);
  std::int64_t total = 0;
  std::int64_t count = 0;
  do {
    int swaps = 0;
    for (const auto& [i, j] : local) swaps += position[i] > position[j];
    total += (swaps % 2 == 0) ? 1 : -1;
    ++count;
  } while (std::next_permutation(position.begin(), position.end()));
  return Rational(total, count);
}

namespace {

double rational_to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Sign expectation of a connected edge set, memoised on the order-preserving
// relabelling onto 0..m-1 (which leaves the expectation unchanged).
class SignCache {
 public:
  double operator()(const EdgeSet& component) {
    const std::vector<Vertex> verts = component.vertices();
    std::vector<EdgeSet::Edge> key;
    for (const auto& [i, j] : component.edges()) {
      key.emplace_back(
          static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), i) - verts.begin()),
          static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), j) - verts.begin()));
    }
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double value = rational_to_double(ordering_sign_expectation(component));
    cache_.emplace(std::move(key), value);
    return value;
  }

 private:
  std::map<std::vector<EdgeSet::Edge>, double> cache_;
};

double monomial_expectation(const EdgeSet& a, const ModelParams& params,
                            SignCache& cache) {
  double sign = 1.0;
  for (const auto& c : a.components()) {
    if (c.size() % 2 != 0) return 0.0;
    sign *= cache(c);
  }
  const double density = params.k / static_cast<double>(params.n);
  return std::pow(density, static_cast<double>(a.vertices().size())) *
         std::pow(2.0 * params.p * params.q, static_cast<double>(a.size())) * sign;
}

}  // namespace

double planted_monomial_expectation(const EdgeSet& a, const ModelParams& params) {
  params.validate();
  SignCache cache;
  return monomial_expectation(a, params, cache);
}

double planted_basis_expectation(const EdgeSet& a, const ModelParams& params) {
  params.validate();
  if (params.p <= 0.0) return a.empty() ? 1.0 : 0.0;
  SignCache cache;
  return monomial_expectation(a, params, cache) /
         std::pow(params.p, 0.5 * static_cast<double>(a.size()));
}

double basis_polynomial(const EdgeSet& a, const EdgeSet& b, double p,
                        const DirectedAdjacency& graph) {
  if (!(p > 0.0 && p < 1.0) && !b.empty()) {
    throw std::invalid_argument("basis_polynomial: B terms need 0 < p < 1");
  }
  if (!(p > 0.0)) throw std::invalid_argument("basis_polynomial: need p > 0");
  double value = 1.0;
  for (const auto& [i, j] : a.edges()) value *= graph(i, j) / std::sqrt(p);
  for (const auto& [i, j] : b.edges()) {
    if (std::binary_search(a.edges().begin(), a.edges().end(), EdgeSet::Edge{i, j})) {
      throw std::invalid_argument("basis_polynomial: A and B must be disjoint");
    }
    const double y2 = graph(i, j) * graph(i, j);
    value *= (y2 - p) / std::sqrt(p * (1.0 - p));
  }
  return value;
}

double advantage_exact(const LowDegParams& params) {
  params.model.validate();
  const int n = params.model.n;
  if (n > kMaxAdvantageVertices) throw std::invalid_argument("advantage_exact: n exceeds 7");
  if (params.degree < 0 || params.degree > kMaxAdvantageDegree) {
    throw std::invalid_argument("advantage_exact: D must be in 0..6");
  }
  const std::vector<EdgeSet::Edge> pairs = all_pairs(n);
  const double p = params.model.p;
  SignCache cache;
  double total = 0.0;
  std::vector<EdgeSet::Edge> chosen;
  // Depth-first over subsets of size <= D in lexicographic order.
  std::function<void(std::size_t)> visit = [&](std::size_t next) {
    const EdgeSet a(chosen);
    if (a.empty()) {
      total += 1.0;
    } else if (p > 0.0) {
      const double e = monomial_expectation(a, params.model, cache) /
                       std::pow(p, 0.5 * static_cast<double>(a.size()));
      total += e * e;
    }
    if (chosen.size() == static_cast<std::size_t>(params.degree)) return;
    for (std::size_t t = next; t < pairs.size(); ++t) {
      chosen.push_back(pairs[t]);
      visit(t + 1);
      chosen.pop_back();
    }
  };
  visit(0);
  return std::sqrt(total);
}

double null_probability(const DirectedAdjacency& graph, double p) {
  const int n = graph.size();
  double prob = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) prob *= graph(i, j) == 0 ? 1.0 - p : 0.5 * p;
  }
  return prob;
}

double planted_probability(const DirectedAdjacency& graph, const RankedSubset& community,
                           double p, double q) {
  const int n = graph.size();
  const std::vector<int> rank = community.rank_table(n);
  double prob = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int y = graph(i, j);
      if (y == 0) {
        prob *= 1.0 - p;
      } else if (rank[i] != 0 && rank[j] != 0) {
        const int favoured = rank[i] < rank[j] ? 1 : -1;
        prob *= p * (y == favoured ? 0.5 + q : 0.5 - q);
      } else {
        prob *= 0.5 * p;
      }
    }
  }
  return prob;
}

namespace {

std::vector<std::vector<Vertex>> combinations(int n, int size) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> current;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(current.size()) == size) {
      out.push_back(current);
      return;
    }
    for (int v = next; v < n; ++v) {
      current.push_back(v);
      rec(v + 1);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<RankedSubset> all_rankings(const std::vector<Vertex>& support) {
  std::vector<RankedSubset> out;
  std::vector<Vertex> order = support;
  do {
    out.push_back(RankedSubset::from_order(order));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<RankedSubset> all_ranked_supports(int n, int size) {
  std::vector<RankedSubset> out;
  for (const auto& support : combinations(n, size)) {
    for (auto& r : all_rankings(support)) out.push_back(std::move(r));
  }
  return out;
}

void check_chi2_args(int n, int community_size, double p, double q) {
  if (n < 1 || n > kMaxChiSquareVertices) throw std::invalid_argument("chi2: n must be in 1..4");
  if (community_size < 0 || community_size > n) {
    throw std::invalid_argument("chi2: community size must be in 0..n");
  }
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 0.5)) {
    throw std::invalid_argument("chi2: p must lie in [0,1] and q in [0,1/2]");
  }
}

}  // namespace

double chi2_exact(int n, int community_size, double p, double q) {
  check_chi2_args(n, community_size, p, q);
  const std::vector<EdgeSet::Edge> pairs = all_pairs(n);
  const std::vector<RankedSubset> hidden = all_ranked_supports(n, community_size);
  std::size_t total_obs = 1;
  for (std::size_t t = 0; t < pairs.size(); ++t) total_obs *= 3;

  double sum = 0.0;
  for (std::size_t code = 0; code < total_obs; ++code) {
    DirectedAdjacency y(n);
    std::size_t c = code;
    for (const auto& [i, j] : pairs) {
      const auto digit = c % 3;
      c /= 3;
      if (digit == 1) y.set_edge(i, j);
      if (digit == 2) y.set_edge(j, i);
    }
    const double qy = null_probability(y, p);
    if (qy == 0.0) continue;
    double py = 0.0;
    for (const auto& r : hidden) py += planted_probability(y, r, p, q);
    py /= static_cast<double>(hidden.size());
    sum += py * py / qy;
  }
  return sum - 1.0;
}

double chi2_permutation_pairs(int n, int community_size, double p, double q) {
  check_chi2_args(n, community_size, p, q);
  const std::vector<RankedSubset> hidden = all_ranked_supports(n, community_size);
  const double agree = 1.0 + 4.0 * p * q * q;
  const double disagree = 1.0 - 4.0 * p * q * q;
  double sum = 0.0;
  for (const auto& a : hidden) {
    for (const auto& b : hidden) {
      const auto h = static_cast<double>(hamming(a.members(), b.members()));
      const double common = (static_cast<double>(a.size() + b.size()) - h) / 2.0;
      const auto d = static_cast<double>(kendall_tau(a, b));
      sum += std::pow(agree, pairs(common) - d) * std::pow(disagree, d);
    }
  }
  const auto count = static_cast<double>(hidden.size());
  return sum / (count * count) - 1.0;
}

double inversion_mgf(int h, double x) {
  if (h < 0 || h > kMaxInversionMgfSize) throw std::invalid_argument("inversion_mgf: h must be in 0..9");
  std::vector<int> perm(static_cast<std::size_t>(h));
  std::iota(perm.begin(), perm.end(), 1);
  const double top = pairs(static_cast<double>(h));
  double sum = 0.0;
  std::int64_t count = 0;
  do {
    sum += std::pow(1.0 + x, top - 2.0 * static_cast<double>(inversions(perm)));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / static_cast<double>(count);
}

double inversion_mgf_bound(int h, double x) {
  const double h3 = std::pow(static_cast<double>(h), 3.0);
  return std::exp(0.5 * x * x * h3) *
         (1.0 + 2.0 * std::sqrt(std::numbers::pi * x * x * h3 / 2.0));
}

}  // namespace prs
