// Copyright 2026 The geomatch Authors.
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


// Text formats. An instance file holds one segment per line, `x1 y1 x2 y2`,
// with integer or p/q tokens; `#` starts a comment and blank lines are
// ignored. Point ids are 2i and 2i+1 for the i-th segment line. A sequence
// file holds several matchings of one point set, each introduced by a line
// `== step k ==` (k = 0, 1, ...); step 0 fixes the point ids.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geomatch/error.hpp"
#include "geomatch/geometry.hpp"

namespace geomatch {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parsed but not yet validated geometry.
struct InstanceFile {
  std::vector<Vec2> points;
  std::vector<Segment> edges;
};

InstanceFile parse_instance(const std::string& text);
// General position, then non-crossing (CollinearTriple, DuplicatePoint,
// CrossingEdges).
Matching to_matching(const InstanceFile& file);
// Segments in edge order, each from its smaller id.
std::string serialize_instance(const Matching& m);

struct SequenceFile {
  PointSetPtr points;
  std::vector<std::vector<Segment>> steps;
};

SequenceFile parse_sequence(const std::string& text);
std::string serialize_sequence(const std::vector<Matching>& steps);

// True when the text contains a step header line.
bool looks_like_sequence(const std::string& text);

// Edges of `file` expressed over the ids of `base`, matching by coordinates.
// Throws MismatchedVertexSet when the point sets differ.
Matching rebase(const InstanceFile& file, const PointSetPtr& base);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace geomatch
