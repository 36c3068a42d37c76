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

#include "prs/detect.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "prs/recover.hpp"

namespace prs {

std::string_view to_string(DetectionKind kind) noexcept {
  switch (kind) {
    case DetectionKind::kDegree2:
      return "degree2";
    case DetectionKind::kSpectral:
      return "spectral";
    case DetectionKind::kExhaustive:
      return "exhaustive";
  }
  return "unknown";
}

std::string_view to_string(Decision decision) noexcept {
  return decision == Decision::kPlanted ? "planted" : "null";
}

DetectionKind parse_detection_kind(std::string_view name) {
  if (name == "degree2") return DetectionKind::kDegree2;
  if (name == "spectral") return DetectionKind::kSpectral;
  if (name == "exhaustive") return DetectionKind::kExhaustive;
  throw std::invalid_argument("unknown detection statistic '" + std::string(name) + "'");
}

double degree2_statistic(const DirectedAdjacency& graph) {
  const int n = graph.size();
  std::int64_t twice = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t r = 0;
    std::int64_t w = 0;
    for (const std::int8_t y : graph.row(i)) {
      r += y;
      w += y * y;
    }
    twice += r * r - w;
  }
  return static_cast<double>(twice / 2);
}

double degree2_threshold(const ModelParams& params) {
  params.validate();
  const double k = params.k;
  return 0.5 * (2.0 / 3.0) * k * k * k * params.p * params.p * params.q * params.q;
}

double spectral_statistic(const DirectedAdjacency& graph,
                          const EigenSolverOptions& options) {
  if (graph.size() < 2) throw std::invalid_argument("spectral_statistic: need n >= 2");
  return sigma_max(graph, options).value / std::sqrt(static_cast<double>(graph.size()));
}

double exhaustive_detect_statistic(const DirectedAdjacency& graph, double k) {
  const int n = graph.size();
  if (n > kMaxExhaustiveVertices) {
    throw std::invalid_argument("exhaustive_detect_statistic: n exceeds 16");
  }
  if (k < 0.0) throw std::invalid_argument("exhaustive_detect_statistic: negative k");
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  const SubsetOrderingTable table(graph, all);
  const std::vector<std::int64_t> by_size = table.best_by_size();
  const double bound = 2.0 * k;
  std::int64_t best = 0;  // the empty set
  for (std::size_t s = 0; s < by_size.size(); ++s) {
    if (static_cast<double>(s) <= bound) best = std::max(best, by_size[s]);
  }
  return static_cast<double>(best);
}

double exhaustive_threshold(const ModelParams& params) {
  params.validate();
  return 0.5 * params.p * params.q * params.k * params.k;
}

DetectionReport run_detection(const DirectedAdjacency& graph,
                              const ModelParams& params, DetectionKind kind,
                              const EigenSolverOptions& options) {
  params.validate();
  if (graph.size() != params.n) {
    throw std::invalid_argument("run_detection: graph size differs from params.n");
  }
  DetectionReport report;
  report.statistic_kind = kind;
  switch (kind) {
    case DetectionKind::kDegree2:
      report.statistic_value = degree2_statistic(graph);
      report.threshold = degree2_threshold(params);
      break;
    case DetectionKind::kSpectral: {
      if (graph.size() < 2) throw std::invalid_argument("spectral detection: need n >= 2");
      const SingularValue sv = sigma_max(graph, options);
      report.statistic_value = sv.value / std::sqrt(static_cast<double>(graph.size()));
      report.threshold = 2.0 + kSpectralMargin;
      report.eigen_iterations = sv.iterations;
      break;
    }
    case DetectionKind::kExhaustive:
      report.statistic_value = exhaustive_detect_statistic(graph, params.k);
      report.threshold = exhaustive_threshold(params);
      break;
  }
  report.decision = report.statistic_value >= report.threshold ? Decision::kPlanted
                                                               : Decision::kNull;
  return report;
}

Calibration calibrate_threshold(std::span<const double> null_values,
                                std::span<const double> planted_values) {
  if (null_values.empty() || planted_values.empty()) {
    throw std::invalid_argument("calibrate_threshold: need samples from both models");
  }
  std::vector<double> nulls(null_values.begin(), null_values.end());
  std::vector<double> planted(planted_values.begin(), planted_values.end());
  std::sort(nulls.begin(), nulls.end());
  std::sort(planted.begin(), planted.end());
  std::vector<double> candidates = nulls;
  candidates.insert(candidates.end(), planted.begin(), planted.end());
  candidates.push_back(std::numeric_limits<double>::infinity());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  Calibration best{0.0, std::numeric_limits<double>::infinity(), 0.0, 0.0};
  const auto nn = static_cast<double>(nulls.size());
  const auto np = static_cast<double>(planted.size());
  for (const double t : candidates) {
    const auto null_hits = nulls.end() - std::lower_bound(nulls.begin(), nulls.end(), t);
    const auto planted_misses = std::lower_bound(planted.begin(), planted.end(), t) - planted.begin();
    const double fa = static_cast<double>(null_hits) / nn;
    const double miss = static_cast<double>(planted_misses) / np;
    if (fa + miss < best.total_error) best = {t, fa + miss, fa, miss};
  }
  return best;
}

}  // namespace prs
