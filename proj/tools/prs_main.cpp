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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prs/detect.hpp"
#include "prs/experiment.hpp"
#include "prs/graph_io.hpp"
#include "prs/lowdeg.hpp"
#include "prs/metrics.hpp"
#include "prs/recover.hpp"
#include "prs/spectral.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitAlgorithm = 3;

using Json = nlohmann::ordered_json;

struct InvalidConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgorithmFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --n/--k/--p/--q or --alpha/--beta/--gamma (with --n).
struct ParamFlags {
  std::optional<int> n;
  std::optional<double> k, p, q;
  std::optional<double> alpha, beta, gamma;

  void add(CLI::App* app) {
    app->add_option("--n", n, "number of vertices");
    app->add_option("--k", k, "expected community size");
    app->add_option("--p", p, "edge density");
    app->add_option("--q", q, "ranking bias");
    app->add_option("--alpha", alpha, "q = n^-alpha");
    app->add_option("--beta", beta, "k = n^beta");
    app->add_option("--gamma", gamma, "p = n^-gamma");
  }

  bool any() const { return k || p || q || alpha || beta || gamma; }

  // Explicit values win over exponents; `fallback` fills what is missing.
  prs::ModelParams resolve(std::optional<prs::ModelParams> fallback = std::nullopt) const {
    prs::ModelParams m;
    if (fallback) m = *fallback;
    if (n) m.n = *n;
    if (m.n < 1) throw InvalidConfig("--n is required");
    const auto nd = static_cast<double>(m.n);
    if (beta) m.k = std::pow(nd, *beta);
    if (gamma) m.p = std::pow(nd, -*gamma);
    if (alpha) m.q = std::pow(nd, -*alpha);
    if (k) m.k = *k;
    if (p) m.p = *p;
    if (q) m.q = *q;
    try {
      m.validate();
    } catch (const std::invalid_argument& e) {
      throw InvalidConfig(e.what());
    }
    return m;
  }
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    prs::save_text(out_path, text);
  }
}

prs::ParsedFile load_input(const std::string& path) {
  std::istringstream in(prs::load_text(path));
  try {
    return prs::parse_file(in);
  } catch (const prs::FormatError& e) {
    throw InvalidConfig(path + ": " + e.what());
  }
}

int cmd_sample(const ParamFlags& flags, const std::string& model, std::uint64_t seed,
               const std::string& out) {
  const prs::ModelParams params = flags.resolve();
  std::ostringstream text;
  if (model == "null") {
    prs::write_graph(text, prs::sample_null(params, seed));
  } else if (model == "planted") {
    prs::write_instance(text, prs::sample_planted(params, seed));
  } else {
    throw InvalidConfig("--model must be null or planted");
  }
  emit(out, text.str());
  return 0;
}

int cmd_detect(const ParamFlags& flags, const std::string& in_path, const std::string& algo,
               std::uint64_t seed, const std::string& out) {
  const prs::ParsedFile file = load_input(in_path);
  prs::ModelParams params = flags.resolve(file.params.value_or(prs::ModelParams{file.n, 0, 0, 0}));
  if (params.n != file.n) throw InvalidConfig("--n does not match the input graph");
  prs::DetectionKind kind{};
  try {
    kind = prs::parse_detection_kind(algo);
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(e.what());
  }
  prs::EigenSolverOptions eig;
  eig.seed = seed;
  prs::DetectionReport report;
  try {
    report = prs::run_detection(file.graph, params, kind, eig);
  } catch (const std::exception& e) {
    throw AlgorithmFailure(e.what());
  }
  Json doc{
      {"algorithm", std::string(prs::to_string(kind))},
      {"n", params.n},
      {"k", params.k},
      {"p", params.p},
      {"q", params.q},
      {"statistic", report.statistic_value},
      {"threshold", report.threshold},
      {"decision", std::string(prs::to_string(report.decision))},
  };
  if (kind == prs::DetectionKind::kSpectral) doc["eigen_iterations"] = report.eigen_iterations;
  emit(out, doc.dump(2) + "\n");
  return 0;
}

int cmd_recover(const ParamFlags& flags, const std::string& in_path, const std::string& algo,
                std::uint64_t seed, int b, int pool, const std::string& out) {
  const prs::ParsedFile file = load_input(in_path);
  prs::ModelParams params = flags.resolve(file.params.value_or(prs::ModelParams{file.n, 0, 0, 0}));
  if (params.n != file.n) throw InvalidConfig("--n does not match the input graph");
  prs::Algorithm a{};
  try {
    a = prs::parse_algorithm(algo);
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(e.what());
  }
  if (prs::is_detection(a)) throw InvalidConfig("'" + algo + "' is a detection algorithm");
  prs::EigenSolverOptions eig;
  eig.seed = seed;
  prs::RankingEstimate est;
  try {
    switch (a) {
      case prs::Algorithm::kRbw:
        est.ranking = prs::ranking_by_wins(file.graph);
        break;
      case prs::Algorithm::kSpectral:
        est = prs::spectral_recover(file.graph, params.k, eig);
        break;
      case prs::Algorithm::kMle:
        est = prs::mle_recover(file.graph, static_cast<int>(std::lround(params.k)));
        break;
      case prs::Algorithm::kOrderedClique:
        est = prs::ordered_clique_recover(file.graph, params.k, eig);
        break;
      default: {
        prs::EnhancedOptions enh;
        enh.eigen = eig;
        if (pool > 0) enh.guess_pool = prs::angular_guess_pool(file.graph, params.k, pool, eig);
        est = prs::ordered_clique_recover_enhanced(file.graph, params.k, b, enh);
      }
    }
  } catch (const std::exception& e) {
    throw AlgorithmFailure(e.what());
  }
  std::ostringstream text;
  if (file.ranking && file.params) {
    text << "# d_h " << prs::hamming(est.support(), file.ranking->members()) << '\n'
         << "# d_kt " << prs::kendall_tau(est.ranking, *file.ranking) << '\n';
  }
  prs::write_estimate(text, {file.n, est.ranking, est.failed, est.failure_reason});
  emit(out, text.str());
  if (est.failed) {
    std::cerr << "prs recover: " << est.failure_reason << '\n';
    return kExitAlgorithm;
  }
  return 0;
}

std::vector<prs::EdgeSet::Edge> parse_edges(const std::string& spec) {
  // "1-2,2-3": 1-indexed vertex pairs.
  std::vector<prs::EdgeSet::Edge> edges;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw InvalidConfig("bad edge '" + item + "'");
    try {
      edges.emplace_back(std::stoi(item.substr(0, dash)) - 1, std::stoi(item.substr(dash + 1)) - 1);
    } catch (const std::exception&) {
      throw InvalidConfig("bad edge '" + item + "'");
    }
  }
  return edges;
}

struct OracleFlags {
  std::string kind;
  std::string edges;
  int degree = 2;
  int size = 0;
  int h = 0;
  double x = 0.0;
  int l = 0;
};

int cmd_oracle(const ParamFlags& flags, const OracleFlags& o, const std::string& out) {
  Json doc{{"oracle", o.kind}};
  try {
    if (o.kind == "sign") {
      const prs::Rational r = prs::ordering_sign_expectation(prs::EdgeSet(parse_edges(o.edges)));
      doc["numerator"] = r.numerator();
      doc["denominator"] = r.denominator();
    } else if (o.kind == "monomial") {
      doc["value"] = prs::planted_monomial_expectation(prs::EdgeSet(parse_edges(o.edges)),
                                                       flags.resolve());
    } else if (o.kind == "advantage") {
      doc["degree"] = o.degree;
      doc["value"] = prs::advantage_exact({o.degree, flags.resolve()});
    } else if (o.kind == "chi2") {
      const prs::ModelParams m = flags.resolve();
      doc["exact"] = prs::chi2_exact(m.n, o.size, m.p, m.q);
      doc["permutation_pairs"] = prs::chi2_permutation_pairs(m.n, o.size, m.p, m.q);
    } else if (o.kind == "mgf") {
      doc["h"] = o.h;
      doc["x"] = o.x;
      doc["exact"] = prs::inversion_mgf(o.h, o.x);
      doc["bound"] = prs::inversion_mgf_bound(o.h, o.x);
    } else if (o.kind == "eigs") {
      Json values = Json::array();
      for (const auto& e : prs::analytic_ordering_eigs(o.l)) values.push_back(e.value);
      doc["l"] = o.l;
      doc["eigenvalues"] = values;
    } else {
      throw InvalidConfig("unknown oracle '" + o.kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(e.what());
  }
  emit(out, doc.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const std::string& config_path, std::uint64_t seed, const std::string& out,
              std::optional<int> threads, bool timing) {
  prs::SweepConfig config;
  try {
    config = prs::parse_sweep_config(prs::load_text(config_path));
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(e.what());
  }
  config.base_seed = seed;
  if (!out.empty()) config.output = out;
  if (threads) config.threads = *threads;
  if (timing) config.timing = true;
  try {
    config.validate();
    if (config.output.empty()) throw std::invalid_argument("sweep: --out or config output required");
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(e.what());
  }
  const prs::SweepResult result = prs::run_sweep_to_files(config);
  std::int64_t failures = 0;
  for (const auto& r : result.records) failures += r.failed;
  std::cerr << "prs sweep: " << result.records.size() << " trials, " << failures
            << " failure rows\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planted ranked subgraph toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out, in, algo, model = "planted", config_path;
  int b = 2;
  int pool = 0;
  std::optional<int> threads;
  bool timing = false;
  ParamFlags params;
  OracleFlags oracle;

  auto* sample = app.add_subcommand("sample", "sample a null graph or planted instance");
  params.add(sample);
  sample->add_option("--model", model, "null or planted")->capture_default_str();
  sample->add_option("--seed", seed, "64-bit seed")->required();
  sample->add_option("--out", out, "output file (default stdout)");
  sample->add_option("--config", config_path, "unused; accepted for symmetry");

  auto* detect = app.add_subcommand("detect", "run a detection statistic on a graph file");
  params.add(detect);
  detect->add_option("--in", in, "graph or instance file")->required();
  detect->add_option("--algo", algo, "degree2, spectral or exhaustive")->required();
  detect->add_option("--seed", seed, "eigensolver seed")->required();
  detect->add_option("--out", out, "report file (default stdout)");

  auto* recover = app.add_subcommand("recover", "recover the community and its ranking");
  params.add(recover);
  recover->add_option("--in", in, "graph or instance file")->required();
  recover->add_option("--algo", algo,
                      "rbw, spectral, mle, ordered_clique or ordered_clique_enhanced")
      ->required();
  recover->add_option("--seed", seed, "eigensolver seed")->required();
  recover->add_option("--b", b, "guess size for ordered_clique_enhanced")->capture_default_str();
  recover->add_option("--pool", pool, "guess pool size (0: all vertices)")->capture_default_str();
  recover->add_option("--out", out, "estimate file (default stdout)");

  auto* orc = app.add_subcommand("oracle", "exact small-instance oracles");
  params.add(orc);
  orc->add_option("kind", oracle.kind, "sign, monomial, advantage, chi2, mgf or eigs")->required();
  orc->add_option("--edges", oracle.edges, "edge set, e.g. 1-2,2-3");
  orc->add_option("--degree", oracle.degree, "degree bound D")->capture_default_str();
  orc->add_option("--size", oracle.size, "community size for chi2");
  orc->add_option("--perm-size", oracle.h, "permutation size h for mgf");
  orc->add_option("--x", oracle.x, "mgf argument");
  orc->add_option("--l", oracle.l, "ordering matrix size for eigs");
  orc->add_option("--out", out, "output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over the exponent grid");
  sweep->add_option("--config", config_path, "JSON sweep config")->required();
  sweep->add_option("--seed", seed, "base seed")->required();
  sweep->add_option("--out", out, "CSV path (summary written next to it)");
  sweep->add_option("--threads", threads, "worker threads");
  sweep->add_flag("--timing", timing, "record wall-clock times (non-reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*sample) return cmd_sample(params, model, seed, out);
    if (*detect) return cmd_detect(params, in, algo, seed, out);
    if (*recover) return cmd_recover(params, in, algo, seed, b, pool, out);
    if (*orc) return cmd_oracle(params, oracle, out);
    if (*sweep) return cmd_sweep(config_path, seed, out, threads, timing);
  } catch (const InvalidConfig& e) {
    std::cerr << "prs: invalid configuration: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const AlgorithmFailure& e) {
    std::cerr << "prs: algorithm failure: " << e.what() << '\n';
    return kExitAlgorithm;
  } catch (const std::exception& e) {
    std::cerr << "prs: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
