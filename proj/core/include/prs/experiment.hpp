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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prs/model.hpp"

namespace prs {

inline constexpr std::string_view kArtifactVersion = "prs 0.1.0";

enum class Algorithm {
  kDegree2,
  kSpectralStat,
  kExhaustive,
  kRbw,
  kSpectral,
  kMle,
  kOrderedClique,
  kOrderedCliqueEnhanced,
};

/// Ids: degree2, spectral_stat, exhaustive, rbw, spectral, mle,
/// ordered_clique, ordered_clique_enhanced.
std::string_view to_string(Algorithm algorithm) noexcept;
Algorithm parse_algorithm(std::string_view id);
bool is_detection(Algorithm algorithm) noexcept;

enum class ModelKind { kNull, kPlanted };
std::string_view to_string(ModelKind model) noexcept;

/// Inclusive grid {min, min + h, ..., max} with `steps` points.
struct GridRange {
  double min = 0.5;
  double max = 0.5;
  int steps = 1;

  std::vector<double> values() const;
  bool operator==(const GridRange&) const = default;
};

struct SweepConfig {
  GridRange alpha;
  GridRange beta;
  GridRange gamma;
  std::vector<int> n;
  int trials = 1;
  std::vector<Algorithm> algorithms;
  std::uint64_t base_seed = 0;
  /// Per-trial CSV path; the JSON summary goes to "<output>.summary.json".
  std::string output;
  int threads = 1;
  /// Guess size for ordered_clique_enhanced.
  int enhanced_b = 2;
  /// Guess pool size for ordered_clique_enhanced (0: all vertices).
  int enhanced_pool = 0;
  /// Record wall-clock times (makes output non-reproducible).
  bool timing = false;

  /// Throws std::invalid_argument on exponents outside (0, 1), steps < 1,
  /// trials < 1, an empty size list or an empty algorithm list.
  void validate() const;

  bool operator==(const SweepConfig&) const = default;
};

/// Parses the JSON config document. Missing fields keep their defaults;
/// unknown fields are rejected. Throws std::invalid_argument.
SweepConfig parse_sweep_config(std::string_view json_text);

/// Canonical JSON (fixed key order, no whitespace) of every config field.
std::string canonical_json(const SweepConfig& config);

/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_hash(const SweepConfig& config);

/// One grid point; `params` may be invalid (e.g. q > 1/2), in which case
/// every trial of the cell becomes a failure row.
struct Cell {
  int index = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  ModelParams params;
};

/// Grid in the nesting order alpha, beta, gamma, n (n innermost).
std::vector<Cell> enumerate_cells(const SweepConfig& config);

struct TrialRecord {
  std::string algorithm;
  int cell = 0;
  int trial = 0;
  int n = 0;
  double k = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  ModelKind model = ModelKind::kPlanted;
  /// Realised community size (planted model only).
  std::optional<std::int64_t> community_size;
  std::optional<double> statistic;
  std::optional<double> threshold;
  std::optional<std::string> decision;
  std::optional<std::int64_t> d_h;
  std::optional<std::int64_t> d_kt;
  /// d_H / k and d_KT / C(k, 2), clamped to [0, 1].
  std::optional<double> normalized_hamming;
  std::optional<double> normalized_kt;
  bool failed = false;
  std::string message;
  std::optional<double> wall_ms;
  std::optional<std::int64_t> eigen_iterations;

  bool operator==(const TrialRecord&) const = default;
};

struct TrialOptions {
  std::uint64_t base_seed = 0;
  int enhanced_b = 2;
  int enhanced_pool = 0;
  bool timing = false;
};

/// Seed of the sampled model: mix(mix(mix(base, cell), trial), model), with
/// model 0 for null and 1 for planted. Paired null/planted samples and all
/// algorithms of a cell share the trial seed.
std::uint64_t trial_seed(std::uint64_t base_seed, int cell, int trial, ModelKind model);

TrialRecord run_trial(const Cell& cell, Algorithm algorithm, int trial, ModelKind model,
                      const TrialOptions& options);

/// Fixed CSV column list.
const std::vector<std::string>& csv_columns();
std::string csv_header_line();
std::string to_csv_row(const TrialRecord& record);
/// Throws std::invalid_argument on malformed rows.
TrialRecord parse_csv_row(std::string_view line);

struct CellSummary {
  Cell cell;
  std::string algorithm;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  // Detection.
  std::optional<double> false_alarm;
  std::optional<double> missed;
  std::optional<double> total_error;
  // Recovery.
  std::optional<double> mean_normalized_hamming;
  std::optional<double> mean_normalized_kt;
  std::optional<double> exact_rate;
  /// Detection: 1 - total_error / 2. Recovery: fraction of non-failed trials
  /// with both normalised errors <= 0.1.
  double success_rate = 0.0;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  std::vector<CellSummary> summaries;
  std::int64_t expected_trials = 0;
};

/// Runs every trial (parallel over `config.threads`, collected in index
/// order). Never throws on single-trial failures.
SweepResult run_sweep(const SweepConfig& config);

void write_csv(std::ostream& out, const SweepConfig& config,
               const std::vector<TrialRecord>& records);
std::string summary_json(const SweepConfig& config, const SweepResult& result);

/// Validates, runs and writes the CSV and summary files named by
/// config.output. Returns the result.
SweepResult run_sweep_to_files(const SweepConfig& config);

}  // namespace prs
