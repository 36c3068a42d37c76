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

#include "prs/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace prs {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_ranking_lines(std::ostream& out, const RankedSubset& r) {
  out << 'S';
  for (const Vertex v : r.members()) out << ' ' << v + 1;
  out << "\npi";
  for (const int rank : r.ranks()) out << ' ' << rank;
  out << '\n';
}

void write_edges(std::ostream& out, const DirectedAdjacency& g) {
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    const auto row = g.row(i);
    for (int j = i + 1; j < n; ++j) {
      if (row[j] > 0) {
        out << i + 1 << ' ' << j + 1 << '\n';
      } else if (row[j] < 0) {
        out << j + 1 << ' ' << i + 1 << '\n';
      }
    }
  }
}

long parse_int(const std::string& token, int line_no) {
  long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) +
                      ": expected an integer, got '" + token + "'");
  }
  return value;
}

double parse_double(const std::string& token, int line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw FormatError("line " + std::to_string(line_no) +
                      ": expected a number, got '" + token + "'");
  }
  return value;
}

}  // namespace

ParsedFile parse_file(std::istream& in) {
  ParsedFile file;
  std::string line;
  int line_no = 0;
  bool have_n = false;
  std::vector<Vertex> support;
  std::vector<int> ranks;
  bool have_support = false;
  bool have_ranks = false;
  std::vector<std::int8_t> entries;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;

    std::vector<std::string> rest;
    for (std::string tok; ls >> tok;) rest.push_back(tok);

    if (head == "n") {
      if (have_n || rest.size() != 1) {
        throw FormatError("line " + std::to_string(line_no) + ": bad 'n' line");
      }
      const long n = parse_int(rest[0], line_no);
      if (n < 0 || n > 1'000'000) {
        throw FormatError("line " + std::to_string(line_no) + ": bad dimension");
      }
      file.n = static_cast<int>(n);
      entries.assign(static_cast<std::size_t>(n) * n, 0);
      have_n = true;
      continue;
    }
    if (!have_n) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": the first line must be 'n <n>'");
    }
    if (head == "params") {
      if (rest.size() != 3) {
        throw FormatError("line " + std::to_string(line_no) + ": bad 'params' line");
      }
      file.params = ModelParams{file.n, parse_double(rest[0], line_no),
                                parse_double(rest[1], line_no),
                                parse_double(rest[2], line_no)};
    } else if (head == "S") {
      for (const auto& tok : rest) {
        const long v = parse_int(tok, line_no);
        if (v < 1 || v > file.n) {
          throw FormatError("line " + std::to_string(line_no) +
                            ": vertex out of range");
        }
        support.push_back(static_cast<Vertex>(v - 1));
      }
      have_support = true;
    } else if (head == "pi") {
      for (const auto& tok : rest) ranks.push_back(static_cast<int>(parse_int(tok, line_no)));
      have_ranks = true;
    } else if (head == "status") {
      if (rest.empty() || (rest[0] != "ok" && rest[0] != "failed")) {
        throw FormatError("line " + std::to_string(line_no) + ": bad 'status' line");
      }
      file.has_status = true;
      file.failed = rest[0] == "failed";
      for (std::size_t t = 1; t < rest.size(); ++t) {
        if (t > 1) file.failure_reason += ' ';
        file.failure_reason += rest[t];
      }
    } else {
      if (!rest.empty() && rest.size() != 1) {
        throw FormatError("line " + std::to_string(line_no) + ": bad edge line");
      }
      if (rest.empty()) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": unknown record '" + head + "'");
      }
      const long u = parse_int(head, line_no);
      const long v = parse_int(rest[0], line_no);
      if (u < 1 || v < 1 || u > file.n || v > file.n || u == v) {
        throw FormatError("line " + std::to_string(line_no) + ": invalid edge");
      }
      const auto a = static_cast<std::size_t>(u - 1);
      const auto b = static_cast<std::size_t>(v - 1);
      const auto nn = static_cast<std::size_t>(file.n);
      if (entries[a * nn + b] != 0) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": pair listed twice");
      }
      entries[a * nn + b] = 1;
      entries[b * nn + a] = -1;
    }
  }
  if (!have_n) throw FormatError("empty file: missing 'n <n>' line");
  if (have_support != have_ranks) {
    throw FormatError("'S' and 'pi' lines must appear together");
  }
  if (have_support) {
    try {
      file.ranking = RankedSubset::from_ranks(std::move(support), std::move(ranks));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  file.graph = DirectedAdjacency::from_entries(file.n, std::move(entries));
  return file;
}

void write_graph(std::ostream& out, const DirectedAdjacency& graph) {
  out << "n " << graph.size() << '\n';
  write_edges(out, graph);
}

DirectedAdjacency read_graph(std::istream& in) { return parse_file(in).graph; }

void write_instance(std::ostream& out, const PlantedInstance& instance) {
  out << "n " << instance.graph.size() << '\n';
  out << "params " << format_double(instance.params.k) << ' '
      << format_double(instance.params.p) << ' '
      << format_double(instance.params.q) << '\n';
  write_ranking_lines(out, instance.community);
  write_edges(out, instance.graph);
}

PlantedInstance read_instance(std::istream& in) {
  ParsedFile file = parse_file(in);
  if (!file.params) throw FormatError("instance file lacks a 'params' line");
  if (!file.ranking) throw FormatError("instance file lacks 'S'/'pi' lines");
  return {*file.params, std::move(*file.ranking), std::move(file.graph)};
}

void write_estimate(std::ostream& out, const EstimateFile& estimate) {
  out << "n " << estimate.n << '\n';
  out << "status " << (estimate.failed ? "failed" : "ok");
  if (estimate.failed && !estimate.failure_reason.empty()) {
    out << ' ' << estimate.failure_reason;
  }
  out << '\n';
  write_ranking_lines(out, estimate.ranking);
}

EstimateFile read_estimate(std::istream& in) {
  ParsedFile file = parse_file(in);
  EstimateFile est;
  est.n = file.n;
  est.ranking = file.ranking.value_or(RankedSubset{});
  est.failed = file.failed;
  est.failure_reason = file.failure_reason;
  return est;
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string load_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace prs
