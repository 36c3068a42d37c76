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

#include "prs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "prs/rng.hpp"

namespace prs {

void ModelParams::validate() const {
  if (n < 1) throw std::invalid_argument("model: n must be positive");
  if (!(k > 0.0 && k <= static_cast<double>(n))) {
    throw std::invalid_argument("model: k must satisfy 0 < k <= n (k=" +
                                std::to_string(k) + ")");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("model: p must lie in [0, 1]");
  }
  if (!(q >= 0.0 && q <= 0.5)) {
    throw std::invalid_argument("model: q must lie in [0, 1/2] (q=" +
                                std::to_string(q) + ")");
  }
}

ModelParams::Exponents ModelParams::exponents() const {
  if (n < 2 || p <= 0.0 || q <= 0.0) {
    throw std::invalid_argument(
        "model: exponents need n >= 2 and p, q > 0");
  }
  const double log_n = std::log(static_cast<double>(n));
  return {-std::log(q) / log_n, std::log(k) / log_n, -std::log(p) / log_n};
}

ModelParams ModelParams::from_exponents(int n, double alpha, double beta,
                                        double gamma) {
  const auto nd = static_cast<double>(n);
  return {n, std::pow(nd, beta), std::pow(nd, -gamma), std::pow(nd, -alpha)};
}

DirectedAdjacency::DirectedAdjacency(int n)
    : n_(n), entries_(static_cast<std::size_t>(std::max(n, 0)) * std::max(n, 0), 0) {
  if (n < 0) throw std::invalid_argument("adjacency: negative dimension");
}

DirectedAdjacency DirectedAdjacency::from_entries(
    int n, std::vector<std::int8_t> entries) {
  if (n < 0 || entries.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("adjacency: entry count does not match n*n");
  }
  for (int i = 0; i < n; ++i) {
    if (entries[static_cast<std::size_t>(i) * n + i] != 0) {
      throw std::invalid_argument("adjacency: nonzero diagonal");
    }
    for (int j = i + 1; j < n; ++j) {
      const int a = entries[static_cast<std::size_t>(i) * n + j];
      const int b = entries[static_cast<std::size_t>(j) * n + i];
      if (a < -1 || a > 1 || a != -b) {
        throw std::invalid_argument("adjacency: not skew-symmetric in {-1,0,1}");
      }
    }
  }
  DirectedAdjacency g;
  g.n_ = n;
  g.entries_ = std::move(entries);
  return g;
}

void DirectedAdjacency::set_edge(Vertex from, Vertex to) {
  if (from == to || from < 0 || to < 0 || from >= n_ || to >= n_) {
    throw std::out_of_range("adjacency: invalid edge");
  }
  entries_[static_cast<std::size_t>(from) * n_ + to] = 1;
  entries_[static_cast<std::size_t>(to) * n_ + from] = -1;
}

void DirectedAdjacency::clear_pair(Vertex i, Vertex j) {
  entries_[static_cast<std::size_t>(i) * n_ + j] = 0;
  entries_[static_cast<std::size_t>(j) * n_ + i] = 0;
}

std::int64_t DirectedAdjacency::edge_count() const noexcept {
  std::int64_t nonzero = 0;
  for (auto e : entries_) nonzero += (e != 0);
  return nonzero / 2;
}

bool DirectedAdjacency::is_tournament() const noexcept {
  return edge_count() == static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
}

DirectedAdjacency DirectedAdjacency::induced(
    std::span<const Vertex> vertices) const {
  const auto m = static_cast<int>(vertices.size());
  DirectedAdjacency sub(m);
  for (int a = 0; a < m; ++a) {
    const auto src = row(vertices[a]);
    auto* dst = sub.entries_.data() + static_cast<std::size_t>(a) * m;
    for (int b = 0; b < m; ++b) dst[b] = src[vertices[b]];
  }
  return sub;
}

DirectedAdjacency DirectedAdjacency::relabeled(
    std::span<const Vertex> perm) const {
  if (perm.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("adjacency: relabelling has wrong length");
  }
  DirectedAdjacency out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      out.entries_[static_cast<std::size_t>(perm[i]) * n_ + perm[j]] =
          (*this)(i, j);
    }
  }
  return out;
}

RankedSubset RankedSubset::from_order(std::vector<Vertex> order) {
  std::vector<int> ranks(order.size());
  std::iota(ranks.begin(), ranks.end(), 1);
  return from_ranks(std::move(order), std::move(ranks));
}

RankedSubset RankedSubset::from_ranks(std::vector<Vertex> members,
                                      std::vector<int> ranks) {
  if (members.size() != ranks.size()) {
    throw std::invalid_argument("ranking: members and ranks differ in length");
  }
  const std::size_t m = members.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return members[a] < members[b]; });
  std::vector<Vertex> sorted_members(m);
  std::vector<int> sorted_ranks(m);
  std::vector<char> seen(m, 0);
  for (std::size_t t = 0; t < m; ++t) {
    sorted_members[t] = members[idx[t]];
    sorted_ranks[t] = ranks[idx[t]];
    if (sorted_members[t] < 0) {
      throw std::invalid_argument("ranking: negative vertex");
    }
    if (t > 0 && sorted_members[t] == sorted_members[t - 1]) {
      throw std::invalid_argument("ranking: repeated vertex");
    }
    const int r = sorted_ranks[t];
    if (r < 1 || static_cast<std::size_t>(r) > m || seen[r - 1]) {
      throw std::invalid_argument("ranking: ranks are not a bijection onto 1..m");
    }
    seen[r - 1] = 1;
  }
  return RankedSubset(std::move(sorted_members), std::move(sorted_ranks));
}

RankedSubset RankedSubset::identity(int n) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return from_order(std::move(order));
}

std::vector<Vertex> RankedSubset::order() const {
  std::vector<Vertex> out(members_.size());
  for (std::size_t t = 0; t < members_.size(); ++t) {
    out[ranks_[t] - 1] = members_[t];
  }
  return out;
}

bool RankedSubset::contains(Vertex v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::optional<int> RankedSubset::rank_of(Vertex v) const noexcept {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) return std::nullopt;
  return ranks_[static_cast<std::size_t>(it - members_.begin())];
}

std::vector<int> RankedSubset::rank_table(int n) const {
  std::vector<int> table(static_cast<std::size_t>(n), 0);
  for (std::size_t t = 0; t < members_.size(); ++t) {
    if (members_[t] >= n) {
      throw std::out_of_range("ranking: member outside [0, n)");
    }
    table[members_[t]] = ranks_[t];
  }
  return table;
}

namespace {

// Orients every pair i < j from one uniform draw at counter i*n + j of the
// edge stream. `rank` is 0 outside the community.
//
//   inside the community, a = higher-ranked endpoint, b = the other:
//     u < p(1/2+q)  -> a -> b
//     u < p         -> b -> a
//   otherwise:
//     u < p/2       -> i -> j
//     u < p         -> j -> i
//   else no edge.
DirectedAdjacency sample_edges(const ModelParams& params,
                               std::span<const int> rank, std::uint64_t seed) {
  const int n = params.n;
  const CounterRng rng(derive_key(seed, Stream::kEdges));
  const double favoured = params.p * (0.5 + params.q);
  const double half = params.p * 0.5;
  const double present = params.p;
  std::vector<std::int8_t> entries(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * n;
    for (int j = i + 1; j < n; ++j) {
      const double u = rng.uniform(base + j);
      std::int8_t y = 0;  // orientation relative to i -> j
      if (rank[i] != 0 && rank[j] != 0) {
        const std::int8_t forward = rank[i] < rank[j] ? 1 : -1;
        if (u < favoured) {
          y = forward;
        } else if (u < present) {
          y = static_cast<std::int8_t>(-forward);
        }
      } else if (u < half) {
        y = 1;
      } else if (u < present) {
        y = -1;
      }
      entries[base + j] = y;
      entries[static_cast<std::size_t>(j) * n + i] = static_cast<std::int8_t>(-y);
    }
  }
  return DirectedAdjacency::from_entries(n, std::move(entries));
}

}  // namespace

DirectedAdjacency sample_null(const ModelParams& params, std::uint64_t seed) {
  params.validate();
  const std::vector<int> no_ranks(static_cast<std::size_t>(params.n), 0);
  return sample_edges(params, no_ranks, seed);
}

PlantedInstance sample_planted(const ModelParams& params, std::uint64_t seed) {
  params.validate();
  const int n = params.n;
  const CounterRng membership(derive_key(seed, Stream::kCommunity));
  const double rate = params.k / static_cast<double>(n);
  std::vector<Vertex> members;
  for (int i = 0; i < n; ++i) {
    if (membership.uniform(static_cast<std::uint64_t>(i)) < rate) {
      members.push_back(i);
    }
  }
  // Uniform ranking: Fisher-Yates over the sorted members.
  SequentialRng shuffle(derive_key(seed, Stream::kRanking));
  std::vector<Vertex> order = members;
  for (std::size_t t = order.size(); t > 1; --t) {
    const auto s = static_cast<std::size_t>(shuffle.below(t));
    std::swap(order[t - 1], order[s]);
  }
  return sample_planted_given(params, RankedSubset::from_order(std::move(order)),
                              seed);
}

PlantedInstance sample_planted_given(const ModelParams& params,
                                     RankedSubset community,
                                     std::uint64_t seed) {
  params.validate();
  const std::vector<int> rank = community.rank_table(params.n);
  DirectedAdjacency graph = sample_edges(params, rank, seed);
  return {params, std::move(community), std::move(graph)};
}

DirectedAdjacency acyclic_tournament(const RankedSubset& ranking, int n) {
  const std::vector<int> rank = ranking.rank_table(n);
  DirectedAdjacency g(n);
  for (const Vertex i : ranking.members()) {
    for (const Vertex j : ranking.members()) {
      if (rank[i] < rank[j]) g.set_edge(i, j);
    }
  }
  return g;
}

}  // namespace prs
