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

#include "prs/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace prs {

std::int64_t hamming(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::int64_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return static_cast<std::int64_t>(a.size() + b.size()) - 2 * common;
}

namespace {

std::int64_t merge_count(std::vector<int>& values, std::vector<int>& scratch,
                         std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = merge_count(values, scratch, lo, mid) +
                       merge_count(values, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t out = lo;
  while (i < mid && j < hi) {
    if (values[j] < values[i]) {
      // values[j] precedes every remaining element of the left half.
      count += static_cast<std::int64_t>(mid - i);
      scratch[out++] = values[j++];
    } else {
      scratch[out++] = values[i++];
    }
  }
  while (i < mid) scratch[out++] = values[i++];
  while (j < hi) scratch[out++] = values[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

std::int64_t inversions(std::span<const int> perm) {
  std::vector<int> values(perm.begin(), perm.end());
  std::vector<int> scratch(values.size());
  return merge_count(values, scratch, 0, values.size());
}

std::int64_t kendall_tau(const RankedSubset& sigma, const RankedSubset& tau) {
  // Common members with both ranks, then sort by sigma-rank and count
  // inversions of the tau-ranks.
  std::vector<std::pair<int, int>> common;
  const auto& ma = sigma.members();
  const auto& mb = tau.members();
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < ma.size() && ib < mb.size()) {
    if (ma[ia] < mb[ib]) {
      ++ia;
    } else if (mb[ib] < ma[ia]) {
      ++ib;
    } else {
      common.emplace_back(sigma.ranks()[ia], tau.ranks()[ib]);
      ++ia;
      ++ib;
    }
  }
  std::sort(common.begin(), common.end());
  std::vector<int> tau_ranks(common.size());
  std::transform(common.begin(), common.end(), tau_ranks.begin(),
                 [](const auto& pr) { return pr.second; });
  return inversions(tau_ranks);
}

std::int64_t alignment(const RankedSubset& ranking,
                       const DirectedAdjacency& graph) {
  const int n = graph.size();
  if (ranking.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("alignment: ranking must cover every vertex");
  }
  const std::vector<int> rank = ranking.rank_table(n);
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const auto row = graph.row(i);
    const int ri = rank[i];
    for (int j = i + 1; j < n; ++j) {
      // Y_ij * pi(i,j) with pi(i,j) = +1 iff i is ranked above j.
      total += ri < rank[j] ? row[j] : -row[j];
    }
  }
  return total;
}

}  // namespace prs
