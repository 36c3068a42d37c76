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

#include "prs/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "prs/detect.hpp"
#include "prs/graph_io.hpp"
#include "prs/metrics.hpp"
#include "prs/recover.hpp"
#include "prs/rng.hpp"

namespace prs {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::pair<Algorithm, std::string_view>, 8> kAlgorithmIds{{
    {Algorithm::kDegree2, "degree2"},
    {Algorithm::kSpectralStat, "spectral_stat"},
    {Algorithm::kExhaustive, "exhaustive"},
    {Algorithm::kRbw, "rbw"},
    {Algorithm::kSpectral, "spectral"},
    {Algorithm::kMle, "mle"},
    {Algorithm::kOrderedClique, "ordered_clique"},
    {Algorithm::kOrderedCliqueEnhanced, "ordered_clique_enhanced"},
}};

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return {buf.data(), end};
}

double parse_double(std::string_view s) {
  double x = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  }
  return x;
}

template <typename Int>
Int parse_int(std::string_view s) {
  Int x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  return x;
}

GridRange parse_range(const Json& j, const char* name) {
  GridRange r;
  if (j.is_number()) {
    r.min = r.max = j.get<double>();
    return r;
  }
  if (!j.is_object()) throw std::invalid_argument(std::string(name) + ": expected number or object");
  for (const auto& [key, value] : j.items()) {
    if (key == "min") {
      r.min = value.get<double>();
    } else if (key == "max") {
      r.max = value.get<double>();
    } else if (key == "steps") {
      r.steps = value.get<int>();
    } else {
      throw std::invalid_argument(std::string(name) + ": unknown field '" + key + "'");
    }
  }
  return r;
}

Json range_json(const GridRange& r) {
  return Json{{"min", r.min}, {"max", r.max}, {"steps", r.steps}};
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  for (const auto& [a, id] : kAlgorithmIds) {
    if (a == algorithm) return id;
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view id) {
  for (const auto& [a, name] : kAlgorithmIds) {
    if (name == id) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(id) + "'");
}

bool is_detection(Algorithm algorithm) noexcept {
  return algorithm == Algorithm::kDegree2 || algorithm == Algorithm::kSpectralStat ||
         algorithm == Algorithm::kExhaustive;
}

std::string_view to_string(ModelKind model) noexcept {
  return model == ModelKind::kNull ? "null" : "planted";
}

std::vector<double> GridRange::values() const {
  if (steps < 1) throw std::invalid_argument("grid: steps must be >= 1");
  if (steps == 1) return {min};
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int t = 0; t < steps; ++t) {
    out[static_cast<std::size_t>(t)] = min + (max - min) * t / (steps - 1);
  }
  out.back() = max;
  return out;
}

void SweepConfig::validate() const {
  for (const auto* r : {&alpha, &beta, &gamma}) {
    if (r->steps < 1) throw std::invalid_argument("config: steps must be >= 1");
    if (!(r->min >= 0.0 && r->min <= 1.0 && r->max >= 0.0 && r->max <= 1.0)) {
      throw std::invalid_argument("config: exponents must lie in [0, 1]");
    }
    if (r->steps > 1 && r->max < r->min) throw std::invalid_argument("config: max < min");
  }
  if (n.empty()) throw std::invalid_argument("config: n must list at least one size");
  for (int size : n) {
    if (size < 2) throw std::invalid_argument("config: sizes must be >= 2");
  }
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("config: no algorithms");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  if (enhanced_b < 0 || enhanced_b > 3) throw std::invalid_argument("config: enhanced_b must be in 0..3");
  if (enhanced_pool < 0) throw std::invalid_argument("config: enhanced_pool must be >= 0");
}

SweepConfig parse_sweep_config(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
  SweepConfig c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "alpha") {
        c.alpha = parse_range(value, "alpha");
      } else if (key == "beta") {
        c.beta = parse_range(value, "beta");
      } else if (key == "gamma") {
        c.gamma = parse_range(value, "gamma");
      } else if (key == "n") {
        c.n = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
      } else if (key == "trials") {
        c.trials = value.get<int>();
      } else if (key == "algorithms") {
        c.algorithms.clear();
        for (const auto& id : value) c.algorithms.push_back(parse_algorithm(id.get<std::string>()));
      } else if (key == "base_seed") {
        c.base_seed = value.get<std::uint64_t>();
      } else if (key == "output") {
        c.output = value.get<std::string>();
      } else if (key == "threads") {
        c.threads = value.get<int>();
      } else if (key == "enhanced_b") {
        c.enhanced_b = value.get<int>();
      } else if (key == "enhanced_pool") {
        c.enhanced_pool = value.get<int>();
      } else if (key == "timing") {
        c.timing = value.get<bool>();
      } else {
        throw std::invalid_argument("config: unknown field '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

std::string canonical_json(const SweepConfig& config) {
  Json algos = Json::array();
  for (Algorithm a : config.algorithms) algos.push_back(std::string(to_string(a)));
  const Json doc{
      {"alpha", range_json(config.alpha)},
      {"beta", range_json(config.beta)},
      {"gamma", range_json(config.gamma)},
      {"n", config.n},
      {"trials", config.trials},
      {"algorithms", algos},
      {"base_seed", config.base_seed},
      {"enhanced_b", config.enhanced_b},
      {"enhanced_pool", config.enhanced_pool},
      {"timing", config.timing},
  };
  return doc.dump();
}

std::string config_hash(const SweepConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_json(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return buf.data();
}

std::vector<Cell> enumerate_cells(const SweepConfig& config) {
  std::vector<Cell> cells;
  for (double a : config.alpha.values()) {
    for (double b : config.beta.values()) {
      for (double g : config.gamma.values()) {
        for (int size : config.n) {
          Cell c;
          c.index = static_cast<int>(cells.size());
          c.alpha = a;
          c.beta = b;
          c.gamma = g;
          c.params = ModelParams::from_exponents(size, a, b, g);
          cells.push_back(c);
        }
      }
    }
  }
  return cells;
}

std::uint64_t trial_seed(std::uint64_t base_seed, int cell, int trial, ModelKind model) {
  const std::uint64_t s = mix_seed(mix_seed(base_seed, static_cast<std::uint64_t>(cell)),
                                   static_cast<std::uint64_t>(trial));
  return mix_seed(s, model == ModelKind::kNull ? 0 : 1);
}

namespace {

void score(TrialRecord& rec, const RankingEstimate& est, const RankedSubset& truth, double k) {
  rec.d_h = hamming(est.support(), truth.members());
  rec.d_kt = kendall_tau(est.ranking, truth);
  rec.normalized_hamming = clamp_unit(static_cast<double>(*rec.d_h) / k);
  const double norm = pairs(k);
  rec.normalized_kt = norm > 0.0 ? clamp_unit(static_cast<double>(*rec.d_kt) / norm)
                                 : (*rec.d_kt == 0 ? 0.0 : 1.0);
  if (est.eigen_iterations > 0) rec.eigen_iterations = est.eigen_iterations;
  if (est.failed) {
    rec.failed = true;
    rec.message = est.failure_reason;
  }
}

void run_algorithm(TrialRecord& rec, const ModelParams& params, Algorithm algorithm,
                   ModelKind model, const TrialOptions& options) {
  EigenSolverOptions eig;
  eig.seed = rec.seed;
  if (is_detection(algorithm)) {
    DirectedAdjacency graph;
    if (model == ModelKind::kNull) {
      graph = sample_null(params, rec.seed);
    } else {
      PlantedInstance inst = sample_planted(params, rec.seed);
      rec.community_size = static_cast<std::int64_t>(inst.community.size());
      graph = std::move(inst.graph);
    }
    const DetectionKind kind = algorithm == Algorithm::kDegree2      ? DetectionKind::kDegree2
                               : algorithm == Algorithm::kSpectralStat ? DetectionKind::kSpectral
                                                                      : DetectionKind::kExhaustive;
    const auto start = std::chrono::steady_clock::now();
    const DetectionReport report = run_detection(graph, params, kind, eig);
    if (options.timing) {
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    rec.statistic = report.statistic_value;
    rec.threshold = report.threshold;
    rec.decision = std::string(to_string(report.decision));
    if (kind == DetectionKind::kSpectral) rec.eigen_iterations = report.eigen_iterations;
    return;
  }

  if (model != ModelKind::kPlanted) {
    throw std::invalid_argument("recovery algorithms run on the planted model only");
  }
  const PlantedInstance inst = sample_planted(params, rec.seed);
  rec.community_size = static_cast<std::int64_t>(inst.community.size());
  const auto start = std::chrono::steady_clock::now();
  RankingEstimate est;
  switch (algorithm) {
    case Algorithm::kRbw:
      est.ranking = ranking_by_wins(inst.graph);
      break;
    case Algorithm::kSpectral:
      est = spectral_recover(inst.graph, params.k, eig);
      break;
    case Algorithm::kMle:
      est = mle_recover(inst.graph, static_cast<int>(std::lround(params.k)));
      if (est.objective) rec.statistic = static_cast<double>(*est.objective);
      break;
    case Algorithm::kOrderedClique:
      est = ordered_clique_recover(inst.graph, params.k, eig);
      break;
    case Algorithm::kOrderedCliqueEnhanced: {
      EnhancedOptions enh;
      enh.eigen = eig;
      if (options.enhanced_pool > 0) {
        enh.guess_pool = angular_guess_pool(inst.graph, params.k, options.enhanced_pool, eig);
      }
      est = ordered_clique_recover_enhanced(inst.graph, params.k, options.enhanced_b, enh);
      break;
    }
    default:
      throw std::logic_error("unreachable algorithm");
  }
  if (options.timing) {
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  score(rec, est, inst.community, params.k);
}

}  // namespace

TrialRecord run_trial(const Cell& cell, Algorithm algorithm, int trial, ModelKind model,
                      const TrialOptions& options) {
  TrialRecord rec;
  rec.algorithm = std::string(to_string(algorithm));
  rec.cell = cell.index;
  rec.trial = trial;
  rec.n = cell.params.n;
  rec.k = cell.params.k;
  rec.p = cell.params.p;
  rec.q = cell.params.q;
  rec.model = model;
  rec.seed = trial_seed(options.base_seed, cell.index, trial, model);
  try {
    cell.params.validate();
    run_algorithm(rec, cell.params, algorithm, model, options);
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.message = e.what();
  }
  return rec;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "algorithm", "cell",      "trial",     "n",      "k",
      "p",         "q",         "seed",      "model",  "community_size",
      "statistic", "threshold", "decision",  "d_h",    "d_kt",
      "norm_h",    "norm_kt",   "failed",    "message", "wall_ms",
      "eigen_iterations"};
  return cols;
}

std::string csv_header_line() {
  std::string line;
  for (const auto& c : csv_columns()) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw std::invalid_argument("csv: unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

template <typename T>
std::string opt_int(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string opt_double(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<std::int64_t> read_opt_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_int<std::int64_t>(s);
}

std::optional<double> read_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

std::string to_csv_row(const TrialRecord& r) {
  const std::vector<std::string> fields{
      r.algorithm,
      std::to_string(r.cell),
      std::to_string(r.trial),
      std::to_string(r.n),
      format_double(r.k),
      format_double(r.p),
      format_double(r.q),
      std::to_string(r.seed),
      std::string(to_string(r.model)),
      opt_int(r.community_size),
      opt_double(r.statistic),
      opt_double(r.threshold),
      r.decision.value_or(""),
      opt_int(r.d_h),
      opt_int(r.d_kt),
      opt_double(r.normalized_hamming),
      opt_double(r.normalized_kt),
      r.failed ? "1" : "0",
      quote(r.message),
      opt_double(r.wall_ms),
      opt_int(r.eigen_iterations),
  };
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

TrialRecord parse_csv_row(std::string_view line) {
  const std::vector<std::string> f = split_csv(line);
  if (f.size() != csv_columns().size()) {
    throw std::invalid_argument("csv: expected " + std::to_string(csv_columns().size()) +
                                " fields, got " + std::to_string(f.size()));
  }
  TrialRecord r;
  r.algorithm = f[0];
  r.cell = parse_int<int>(f[1]);
  r.trial = parse_int<int>(f[2]);
  r.n = parse_int<int>(f[3]);
  r.k = parse_double(f[4]);
  r.p = parse_double(f[5]);
  r.q = parse_double(f[6]);
  r.seed = parse_int<std::uint64_t>(f[7]);
  if (f[8] == "null") {
    r.model = ModelKind::kNull;
  } else if (f[8] == "planted") {
    r.model = ModelKind::kPlanted;
  } else {
    throw std::invalid_argument("csv: bad model '" + f[8] + "'");
  }
  r.community_size = read_opt_int(f[9]);
  r.statistic = read_opt_double(f[10]);
  r.threshold = read_opt_double(f[11]);
  if (!f[12].empty()) r.decision = f[12];
  r.d_h = read_opt_int(f[13]);
  r.d_kt = read_opt_int(f[14]);
  r.normalized_hamming = read_opt_double(f[15]);
  r.normalized_kt = read_opt_double(f[16]);
  if (f[17] != "0" && f[17] != "1") throw std::invalid_argument("csv: bad failed flag");
  r.failed = f[17] == "1";
  r.message = f[18];
  r.wall_ms = read_opt_double(f[19]);
  r.eigen_iterations = read_opt_int(f[20]);
  return r;
}

namespace {

struct Task {
  std::size_t cell;
  Algorithm algorithm;
  int trial;
  ModelKind model;
};

CellSummary summarize(const Cell& cell, Algorithm algorithm,
                      const std::vector<const TrialRecord*>& recs) {
  CellSummary s;
  s.cell = cell;
  s.algorithm = std::string(to_string(algorithm));
  s.trials = static_cast<std::int64_t>(recs.size());
  for (const auto* r : recs) s.failures += r->failed;
  if (recs.empty()) return s;
  if (is_detection(algorithm)) {
    // Failed trials count as wrong decisions.
    double nulls = 0, planted = 0, alarms = 0, misses = 0;
    for (const auto* r : recs) {
      const bool says_planted = !r->failed && r->decision == std::string("planted");
      const bool says_null = !r->failed && r->decision == std::string("null");
      if (r->model == ModelKind::kNull) {
        ++nulls;
        alarms += !says_null;
      } else {
        ++planted;
        misses += !says_planted;
      }
    }
    s.false_alarm = nulls > 0 ? alarms / nulls : 0.0;
    s.missed = planted > 0 ? misses / planted : 0.0;
    s.total_error = *s.false_alarm + *s.missed;
    s.success_rate = 1.0 - *s.total_error / 2.0;
    return s;
  }
  double sum_h = 0, sum_kt = 0, scored = 0, exact = 0, good = 0;
  for (const auto* r : recs) {
    if (r->normalized_hamming && r->normalized_kt) {
      sum_h += *r->normalized_hamming;
      sum_kt += *r->normalized_kt;
      ++scored;
    }
    if (!r->failed && r->d_h == 0 && r->d_kt == 0) ++exact;
    if (!r->failed && r->normalized_hamming && *r->normalized_hamming <= 0.1 &&
        *r->normalized_kt <= 0.1) {
      ++good;
    }
  }
  if (scored > 0) {
    s.mean_normalized_hamming = sum_h / scored;
    s.mean_normalized_kt = sum_kt / scored;
  }
  const auto total = static_cast<double>(recs.size());
  s.exact_rate = exact / total;
  s.success_rate = good / total;
  return s;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<Cell> cells = enumerate_cells(config);
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (Algorithm a : config.algorithms) {
      for (int t = 0; t < config.trials; ++t) {
        if (is_detection(a)) tasks.push_back({c, a, t, ModelKind::kNull});
        tasks.push_back({c, a, t, ModelKind::kPlanted});
      }
    }
  }

  TrialOptions opts;
  opts.base_seed = config.base_seed;
  opts.enhanced_b = config.enhanced_b;
  opts.enhanced_pool = config.enhanced_pool;
  opts.timing = config.timing;

  SweepResult result;
  result.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      result.records[i] = run_trial(cells[t.cell], t.algorithm, t.trial, t.model, opts);
    }
  };
  {
    const auto workers = static_cast<std::size_t>(
        std::min<std::size_t>(static_cast<std::size_t>(config.threads), tasks.size()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  std::int64_t per_cell = 0;
  for (Algorithm a : config.algorithms) per_cell += is_detection(a) ? 2 : 1;
  result.expected_trials = static_cast<std::int64_t>(cells.size()) * config.trials * per_cell;

  std::size_t pos = 0;
  for (const Cell& cell : cells) {
    for (Algorithm a : config.algorithms) {
      std::vector<const TrialRecord*> group;
      const std::size_t count = static_cast<std::size_t>(config.trials) * (is_detection(a) ? 2 : 1);
      for (std::size_t i = 0; i < count; ++i) group.push_back(&result.records[pos + i]);
      pos += count;
      result.summaries.push_back(summarize(cell, a, group));
    }
  }
  return result;
}

void write_csv(std::ostream& out, const SweepConfig& config,
               const std::vector<TrialRecord>& records) {
  out << "# artifact: " << kArtifactVersion << '\n'
      << "# config_hash: " << config_hash(config) << '\n'
      << "# base_seed: " << config.base_seed << '\n'
      << "# config: " << canonical_json(config) << '\n'
      << csv_header_line() << '\n';
  for (const auto& r : records) out << to_csv_row(r) << '\n';
}

std::string summary_json(const SweepConfig& config, const SweepResult& result) {
  Json cells = Json::array();
  for (const auto& s : result.summaries) {
    Json row{
        {"cell", s.cell.index},
        {"alpha", s.cell.alpha},
        {"beta", s.cell.beta},
        {"gamma", s.cell.gamma},
        {"n", s.cell.params.n},
        {"k", s.cell.params.k},
        {"p", s.cell.params.p},
        {"q", s.cell.params.q},
        {"algorithm", s.algorithm},
        {"trials", s.trials},
        {"failures", s.failures},
        {"success_rate", s.success_rate},
    };
    if (s.total_error) {
      row["false_alarm"] = *s.false_alarm;
      row["missed"] = *s.missed;
      row["total_error"] = *s.total_error;
    }
    if (s.exact_rate) row["exact_rate"] = *s.exact_rate;
    if (s.mean_normalized_hamming) {
      row["mean_norm_h"] = *s.mean_normalized_hamming;
      row["mean_norm_kt"] = *s.mean_normalized_kt;
    }
    cells.push_back(std::move(row));
  }
  const auto executed = static_cast<std::int64_t>(result.records.size());
  const Json doc{
      {"header",
       {{"artifact", kArtifactVersion}, {"config_hash", config_hash(config)}, {"base_seed", config.base_seed}}},
      {"cells", cells},
      {"footer",
       {{"total_trials", executed},
        {"expected_trials", result.expected_trials},
        {"consistent", executed == result.expected_trials}}},
  };
  return doc.dump(2) + "\n";
}

SweepResult run_sweep_to_files(const SweepConfig& config) {
  config.validate();
  if (config.output.empty()) throw std::invalid_argument("config: output path required");
  SweepResult result = run_sweep(config);
  std::ostringstream csv;
  write_csv(csv, config, result.records);
  save_text(config.output, csv.str());
  save_text(config.output + ".summary.json", summary_json(config, result));
  return result;
}

}  // namespace prs
