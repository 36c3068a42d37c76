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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "prs/model.hpp"

namespace prs {

/// Text formats (all vertex labels 1-indexed):
///
///   n <n>                       dimension, first line
///   params <k> <p> <q>          instance files only
///   S <v1> <v2> ...             community / estimated support
///   pi <r1> <r2> ...            rank of v1, v2, ... (1-based)
///   status ok|failed [reason]   estimate files only
///   <u> <v>                     directed edge u -> v
///
/// Lines starting with '#' are comments. Edges are written in canonical order
/// (lexicographic over pairs u < v); pairs without a line carry no edge.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_graph(std::ostream& out, const DirectedAdjacency& graph);
DirectedAdjacency read_graph(std::istream& in);

void write_instance(std::ostream& out, const PlantedInstance& instance);
PlantedInstance read_instance(std::istream& in);

struct EstimateFile {
  int n = 0;
  RankedSubset ranking;
  bool failed = false;
  std::string failure_reason;
};

void write_estimate(std::ostream& out, const EstimateFile& estimate);
EstimateFile read_estimate(std::istream& in);

/// Everything a file may contain; missing sections stay empty.
struct ParsedFile {
  int n = 0;
  std::optional<ModelParams> params;
  std::optional<RankedSubset> ranking;
  DirectedAdjacency graph;
  bool has_status = false;
  bool failed = false;
  std::string failure_reason;
};

ParsedFile parse_file(std::istream& in);

void save_text(const std::filesystem::path& path, const std::string& text);
std::string load_text(const std::filesystem::path& path);

}  // namespace prs
