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

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "prs/recover.hpp"

namespace prs {

namespace {

// from[v]: local vertices u with u -> v; to[v]: local vertices u with v -> u.
struct LocalMasks {
  std::vector<std::uint32_t> from;
  std::vector<std::uint32_t> to;
};

LocalMasks local_masks(const DirectedAdjacency& graph,
                       std::span<const Vertex> vertices) {
  const auto m = vertices.size();
  LocalMasks masks{std::vector<std::uint32_t>(m, 0), std::vector<std::uint32_t>(m, 0)};
  for (std::size_t a = 0; a < m; ++a) {
    const auto row = graph.row(vertices[a]);
    for (std::size_t b = 0; b < m; ++b) {
      const std::int8_t y = row[vertices[b]];
      if (y > 0) masks.from[b] |= 1u << a;
      if (y < 0) masks.to[b] |= 1u << a;
    }
  }
  return masks;
}

void check_width(std::size_t m) {
  if (m > static_cast<std::size_t>(kMaxOrderingSubset)) {
    throw std::invalid_argument("ordering DP: subset of size " + std::to_string(m) +
                                " exceeds the cap of " +
                                std::to_string(kMaxOrderingSubset));
  }
}

}  // namespace

SubsetOrderingTable::SubsetOrderingTable(const DirectedAdjacency& graph,
                                         std::span<const Vertex> vertices)
    : vertices_(vertices.begin(), vertices.end()) {
  const std::size_t m = vertices_.size();
  check_width(m);
  for (const Vertex v : vertices_) {
    if (v < 0 || v >= graph.size()) throw std::out_of_range("ordering DP: vertex out of range");
  }
  const LocalMasks masks = local_masks(graph, vertices_);
  const std::uint32_t full = m == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
  best_.assign(static_cast<std::size_t>(full) + 1, 0);
  last_.assign(static_cast<std::size_t>(full) + 1, 0);
  // best(M) = max over v in M placed last of best(M \ v) + sum_{u in M\v} Y_uv.
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    int best = -1'000'000;
    std::uint8_t arg = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t others = mask & ~(1u << v);
      const int gain = std::popcount(others & masks.from[v]) -
                       std::popcount(others & masks.to[v]);
      const int value = best_[others] + gain;
      if (value > best) {
        best = value;
        arg = static_cast<std::uint8_t>(v);
      }
    }
    best_[mask] = static_cast<std::int16_t>(best);
    last_[mask] = arg;
  }
}

OrderingResult SubsetOrderingTable::ordering(std::uint32_t mask) const {
  std::vector<Vertex> order;
  std::int64_t value = best_[mask];
  while (mask != 0) {
    const int v = last_[mask];
    order.push_back(vertices_[static_cast<std::size_t>(v)]);
    mask &= ~(1u << v);
  }
  std::reverse(order.begin(), order.end());
  return {RankedSubset::from_order(std::move(order)), value};
}

std::vector<std::int64_t> SubsetOrderingTable::best_by_size() const {
  const std::size_t m = vertices_.size();
  std::vector<std::int64_t> out(m + 1, INT64_MIN);
  for (std::size_t mask = 0; mask < best_.size(); ++mask) {
    const auto s = static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(mask)));
    out[s] = std::max<std::int64_t>(out[s], best_[mask]);
  }
  return out;
}

OrderingResult max_acyclic_ordering_dp(const DirectedAdjacency& graph,
                                       std::span<const Vertex> subset) {
  check_width(subset.size());
  std::vector<Vertex> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("ordering DP: repeated vertex");
  }
  const SubsetOrderingTable table(graph, sorted);
  const std::uint32_t full =
      sorted.empty() ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << sorted.size()) - 1);
  return table.ordering(full);
}

}  // namespace prs
