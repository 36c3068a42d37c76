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

#include "prs/recover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace prs {

std::vector<std::int64_t> win_scores(const DirectedAdjacency& graph) {
  const int n = graph.size();
  std::vector<std::int64_t> scores(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (const std::int8_t y : graph.row(i)) s += y;
    scores[i] = s;
  }
  return scores;
}

RankedSubset ranking_by_wins(const DirectedAdjacency& graph) {
  const std::vector<std::int64_t> scores = win_scores(graph);
  std::vector<Vertex> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a > b;
  });
  return RankedSubset::from_order(std::move(order));
}

std::vector<Vertex> heavy_coordinates(std::span<const Complex> v, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("recover: k must be positive");
  const double cut = 1.0 / (2.0 * k);
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::norm(v[i]) >= cut) out.push_back(static_cast<Vertex>(i));
  }
  return out;
}

AngularEmbedding angular_embedding(std::span<const Complex> v,
                                   std::vector<Vertex> support) {
  Complex x(0.0, 0.0);
  for (const Vertex i : support) x += v[i];
  AngularEmbedding emb;
  emb.magnitudes.reserve(support.size());
  emb.angles.reserve(support.size());
  for (const Vertex i : support) {
    const Complex s = v[i] * std::conj(x);
    double theta = std::arg(s);  // (-pi, pi]
    if (theta >= std::numbers::pi) theta = -std::numbers::pi;
    emb.magnitudes.push_back(std::abs(s));
    emb.angles.push_back(theta);
  }
  emb.support = std::move(support);
  return emb;
}

std::vector<Vertex> order_by_angle(const AngularEmbedding& embedding) {
  std::vector<std::size_t> idx(embedding.support.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (embedding.angles[a] != embedding.angles[b]) {
      return embedding.angles[a] > embedding.angles[b];
    }
    return embedding.support[a] < embedding.support[b];
  });
  std::vector<Vertex> order;
  order.reserve(idx.size());
  for (const std::size_t t : idx) order.push_back(embedding.support[t]);
  return order;
}

double estimate_community_size(std::span<const Complex> v, double factor) {
  const double cut = 1.0 / static_cast<double>(v.size());
  double count = 0.0;
  for (const auto& z : v) count += std::norm(z) >= cut ? 1.0 : 0.0;
  return factor * count;
}

RankingEstimate spectral_recover(const DirectedAdjacency& graph, double k,
                                 const EigenSolverOptions& options) {
  if (graph.size() < 2) throw std::invalid_argument("spectral_recover: need n >= 2");
  if (!(k > 0.0)) throw std::invalid_argument("spectral_recover: k must be positive");
  const EigenPair top = top_eigenpair(graph, options);
  RankingEstimate est;
  est.eigen_iterations = top.iterations;
  std::vector<Vertex> support = heavy_coordinates(top.vector, k);
  if (support.empty()) return est;
  const AngularEmbedding emb = angular_embedding(top.vector, std::move(support));
  est.ranking = RankedSubset::from_order(order_by_angle(emb));
  return est;
}

std::optional<std::vector<Vertex>> acyclic_order(const DirectedAdjacency& graph,
                                                 std::span<const Vertex> vertices) {
  // Kahn's algorithm on the induced subgraph; among available sources the
  // smallest vertex goes first (only matters for non-tournaments).
  std::vector<Vertex> verts(vertices.begin(), vertices.end());
  std::sort(verts.begin(), verts.end());
  const std::size_t m = verts.size();
  std::vector<int> indegree(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    const auto row = graph.row(verts[a]);
    for (std::size_t b = 0; b < m; ++b) indegree[a] += row[verts[b]] < 0;
  }
  std::vector<char> placed(m, 0);
  std::vector<Vertex> order;
  order.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t pick = m;
    for (std::size_t a = 0; a < m; ++a) {
      if (!placed[a] && indegree[a] == 0) {
        pick = a;
        break;
      }
    }
    if (pick == m) return std::nullopt;
    placed[pick] = 1;
    order.push_back(verts[pick]);
    const auto row = graph.row(verts[pick]);
    for (std::size_t b = 0; b < m; ++b) {
      if (row[verts[b]] > 0) --indegree[b];
    }
  }
  return order;
}

namespace {

void require_tournament(const DirectedAdjacency& graph, const char* who) {
  if (!graph.is_tournament()) {
    throw std::invalid_argument(std::string(who) + ": input must be a tournament (p = 1)");
  }
}

}  // namespace

RankingEstimate ordered_clique_recover(const DirectedAdjacency& graph, double k,
                                       const EigenSolverOptions& options) {
  const int n = graph.size();
  if (n < 2) throw std::invalid_argument("ordered_clique_recover: need n >= 2");
  if (!(k > 0.0)) throw std::invalid_argument("ordered_clique_recover: k must be positive");
  require_tournament(graph, "ordered_clique_recover");

  const EigenPair top = top_eigenpair(graph, options);
  RankingEstimate est;
  est.eigen_iterations = top.iterations;

  const AngularEmbedding emb =
      angular_embedding(top.vector, heavy_coordinates(top.vector, k));
  const std::vector<Vertex> by_angle = order_by_angle(emb);
  const std::size_t left_size = (by_angle.size() + 1) / 2;
  const std::span<const Vertex> left(by_angle.data(), left_size);
  const std::span<const Vertex> right(by_angle.data() + left_size,
                                      by_angle.size() - left_size);

  const double cut = 3.0 * k / 8.0;
  std::vector<Vertex> refined;
  for (int j = 0; j < n; ++j) {
    const auto row = graph.row(j);
    int in_from_left = 0;
    for (const Vertex i : left) in_from_left += row[i] < 0;
    int out_to_right = 0;
    for (const Vertex i : right) out_to_right += row[i] > 0;
    if (in_from_left >= cut || out_to_right >= cut) refined.push_back(j);
  }

  auto order = acyclic_order(graph, refined);
  if (!order) {
    est.failed = true;
    est.failure_reason = "refined support induces a cycle";
    est.ranking = RankedSubset::from_order(std::move(refined));
    return est;
  }
  est.ranking = RankedSubset::from_order(std::move(*order));
  return est;
}

std::vector<Vertex> dominated_by_all(const DirectedAdjacency& graph,
                                     std::span<const Vertex> guess) {
  std::vector<Vertex> out;
  const int n = graph.size();
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (const Vertex u : guess) {
      if (graph(u, i) <= 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(i);
  }
  return out;
}

namespace {

struct Candidate {
  std::vector<Vertex> order;   // source first
  std::vector<Vertex> sorted;  // support, ascending
  int eigen_iterations = 0;
};

bool better(const Candidate& a, const std::optional<Candidate>& b) {
  if (!b) return true;
  if (a.sorted.size() != b->sorted.size()) return a.sorted.size() > b->sorted.size();
  return a.sorted < b->sorted;
}

void next_combination(std::vector<std::size_t>& idx, std::size_t pool) {
  // Lexicographic successor; idx.front() == pool marks the end.
  const std::size_t b = idx.size();
  std::size_t t = b;
  while (t > 0 && idx[t - 1] == pool - b + (t - 1)) --t;
  if (t == 0) {
    idx.assign(b, pool);
    return;
  }
  ++idx[t - 1];
  for (std::size_t s = t; s < b; ++s) idx[s] = idx[s - 1] + 1;
}

}  // namespace

RankingEstimate ordered_clique_recover_enhanced(const DirectedAdjacency& graph,
                                                double k, int b,
                                                const EnhancedOptions& options) {
  const int n = graph.size();
  if (n < 2) throw std::invalid_argument("ordered_clique_recover_enhanced: need n >= 2");
  if (b < 0 || b > 3) throw std::invalid_argument("ordered_clique_recover_enhanced: b must be in 0..3");
  if (!(k - b > 0.0)) throw std::invalid_argument("ordered_clique_recover_enhanced: need k > b");
  require_tournament(graph, "ordered_clique_recover_enhanced");
  if (b == 0) return ordered_clique_recover(graph, k, options.eigen);

  std::vector<Vertex> pool = options.guess_pool;
  if (pool.empty()) {
    pool.resize(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
  } else {
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  }
  if (pool.size() < static_cast<std::size_t>(b)) {
    throw std::invalid_argument("ordered_clique_recover_enhanced: guess pool smaller than b");
  }

  // All guesses in lexicographic order.
  std::vector<std::vector<Vertex>> guesses;
  {
    std::vector<std::size_t> idx(static_cast<std::size_t>(b));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (b == 0 || idx.front() < pool.size()) {
      std::vector<Vertex> guess;
      for (const std::size_t t : idx) guess.push_back(pool[t]);
      guesses.push_back(std::move(guess));
      if (b == 0) break;
      next_combination(idx, pool.size());
    }
  }

  auto evaluate = [&](std::size_t begin, std::size_t end) {
    std::optional<Candidate> best;
    int iterations = 0;
    for (std::size_t g = begin; g < end; ++g) {
      const std::vector<Vertex>& guess = guesses[g];
      const std::vector<Vertex> dominated = dominated_by_all(graph, guess);
      std::vector<Vertex> found;
      if (dominated.size() >= 2) {
        RankingEstimate sub;
        try {
          sub = ordered_clique_recover(graph.induced(dominated),
                                       k - static_cast<double>(b), options.eigen);
        } catch (const EigenSolverError&) {
          continue;
        }
        iterations += sub.eigen_iterations;
        if (sub.failed) continue;
        for (const Vertex local : sub.ranking.members()) found.push_back(dominated[local]);
      } else {
        found = dominated;
      }
      found.insert(found.end(), guess.begin(), guess.end());
      auto order = acyclic_order(graph, found);
      if (!order) continue;
      Candidate cand{std::move(*order), {}, 0};
      cand.sorted = cand.order;
      std::sort(cand.sorted.begin(), cand.sorted.end());
      if (better(cand, best)) best = std::move(cand);
    }
    if (best) best->eigen_iterations = iterations;
    return best;
  };

  const std::size_t workers = static_cast<std::size_t>(
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1,
                              std::max<std::size_t>(guesses.size(), 1)));
  std::vector<std::optional<Candidate>> partial(workers);
  if (workers == 1) {
    partial[0] = evaluate(0, guesses.size());
  } else {
    std::vector<std::jthread> pool_threads;
    const std::size_t chunk = (guesses.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(guesses.size(), w * chunk);
      const std::size_t hi = std::min(guesses.size(), lo + chunk);
      pool_threads.emplace_back([&, w, lo, hi] { partial[w] = evaluate(lo, hi); });
    }
  }

  std::optional<Candidate> best;
  int iterations = 0;
  for (auto& cand : partial) {
    if (!cand) continue;
    iterations += cand->eigen_iterations;
    if (better(*cand, best)) best = std::move(cand);
  }
  RankingEstimate est;
  est.eigen_iterations = iterations;
  if (!best) {
    est.failed = true;
    est.failure_reason = "no guess produced an acyclic candidate";
    return est;
  }
  est.ranking = RankedSubset::from_order(std::move(best->order));
  return est;
}

RankingEstimate mle_recover(const DirectedAdjacency& graph, int k) {
  const int n = graph.size();
  if (n > kMaxOrderingSubset) throw std::invalid_argument("mle_recover: n exceeds 22");
  if (k < 0 || k > n) throw std::invalid_argument("mle_recover: need 0 <= k <= n");
  std::vector<Vertex> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), 0);
  std::optional<OrderingResult> best;
  while (true) {
    OrderingResult r = max_acyclic_ordering_dp(graph, subset);
    if (!best || r.value > best->value) best = std::move(r);
    // Lexicographic successor of the k-subset of [n].
    int t = k;
    while (t > 0 && subset[t - 1] == n - k + t - 1) --t;
    if (t == 0) break;
    ++subset[t - 1];
    for (int s = t; s < k; ++s) subset[s] = subset[s - 1] + 1;
  }
  RankingEstimate est;
  est.ranking = std::move(best->ordering);
  est.objective = best->value;
  return est;
}

std::vector<Vertex> angular_guess_pool(const DirectedAdjacency& graph, double k,
                                       int size, const EigenSolverOptions& options) {
  if (size < 0) throw std::invalid_argument("angular_guess_pool: negative size");
  RankingEstimate est = spectral_recover(graph, k, options);
  std::vector<Vertex> order = est.ranking.order();
  if (order.size() > static_cast<std::size_t>(size)) order.resize(static_cast<std::size_t>(size));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace prs
