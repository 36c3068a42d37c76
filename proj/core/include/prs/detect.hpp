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

#include <span>
#include <string_view>

#include "prs/model.hpp"
#include "prs/spectral.hpp"

namespace prs {

enum class DetectionKind { kDegree2, kSpectral, kExhaustive };
enum class Decision { kNull, kPlanted };

std::string_view to_string(DetectionKind kind) noexcept;
std::string_view to_string(Decision decision) noexcept;
DetectionKind parse_detection_kind(std::string_view name);

struct DetectionReport {
  double statistic_value = 0.0;
  double threshold = 0.0;
  Decision decision = Decision::kNull;  // kPlanted iff statistic >= threshold
  DetectionKind statistic_kind = DetectionKind::kDegree2;
  int eigen_iterations = 0;
};

/// f(Y) = sum_i sum_{j<l; j,l != i} Y_ij Y_il = (1/2) sum_i (r_i^2 - w_i) with
/// row sums r_i and row supports w_i. O(n^2), exact in integers.
double degree2_statistic(const DirectedAdjacency& graph);

/// Midpoint of E_Q[f] = 0 and the asymptotic E_P[f] = (2/3) k^3 p^2 q^2.
double degree2_threshold(const ModelParams& params);

/// sigma_max(Y) / sqrt(n).
double spectral_statistic(const DirectedAdjacency& graph,
                          const EigenSolverOptions& options = {});

/// Fixed margin above the bulk edge 2 used by the spectral decision rule.
/// The sub-sqrt(n) fluctuations of lambda_max are not resolved in general;
/// 0.1 keeps both error rates small from n ~ 2000 upwards.
inline constexpr double kSpectralMargin = 0.1;

inline constexpr int kMaxExhaustiveVertices = 16;

/// max over S^ with |S^| <= 2k and orderings of S^ of
/// sum_{i<j in S^} Y_ij pi(i,j). Requires n <= 16.
double exhaustive_detect_statistic(const DirectedAdjacency& graph, double k);

/// (1/2) p q k^2.
double exhaustive_threshold(const ModelParams& params);

DetectionReport run_detection(const DirectedAdjacency& graph,
                              const ModelParams& params, DetectionKind kind,
                              const EigenSolverOptions& options = {});

/// Threshold minimising the empirical total error
/// #{null >= t}/|null| + #{planted < t}/|planted| over paired samples.
/// Candidates are the observed values (plus +infinity); the smallest
/// minimiser wins.
struct Calibration {
  double threshold = 0.0;
  double total_error = 0.0;
  double false_alarm = 0.0;
  double missed = 0.0;
};
Calibration calibrate_threshold(std::span<const double> null_values,
                                std::span<const double> planted_values);

}  // namespace prs
