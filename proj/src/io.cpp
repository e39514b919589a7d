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


#include "geomatch/io.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace geomatch {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  int column = 0;
};

// Whitespace-separated tokens of one line, comment stripped.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t end = line.find('#');
  if (end == std::string::npos) end = line.size();
  size_t i = 0;
  while (i < end) {
    while (i < end && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= end) break;
    size_t j = i;
    while (j < end && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

Scalar parse_scalar(const Token& t, int line) {
  static const std::regex number(R"(-?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(t.text, number)) throw ParseError(line, t.column, "expected an integer or p/q, got '" + t.text + "'");
  Scalar s;
  s.set_str(t.text, 10);
  if (s.get_den() == 0) throw ParseError(line, t.column, "zero denominator in '" + t.text + "'");
  s.canonicalize();
  return s;
}

struct SegmentLine {
  int line = 0;
  Vec2 a, b;
};

SegmentLine parse_segment(const std::vector<Token>& tokens, int line, size_t line_length) {
  if (tokens.size() != 4) {
    int column = tokens.size() > 4 ? tokens[4].column : static_cast<int>(line_length) + 1;
    throw ParseError(line, column, "expected 4 coordinates, got " + std::to_string(tokens.size()));
  }
  return {line, Vec2(parse_scalar(tokens[0], line), parse_scalar(tokens[1], line)),
          Vec2(parse_scalar(tokens[2], line), parse_scalar(tokens[3], line))};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

const std::regex& step_header() {
  static const std::regex header(R"(\s*==\s*step\s+([0-9]+)\s*==\s*)");
  return header;
}

std::string coord(const Scalar& s) { return s.get_str(); }

void append_segment(std::string& out, const Vec2& a, const Vec2& b) {
  out += coord(a.x) + " " + coord(a.y) + " " + coord(b.x) + " " + coord(b.y) + "\n";
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  InstanceFile file;
  std::vector<std::string> lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    int line = static_cast<int>(i) + 1;
    if (std::regex_match(lines[i], step_header()))
      throw ParseError(line, 1, "step header in an instance file");
    std::vector<Token> tokens = tokenize(lines[i]);
    if (tokens.empty()) continue;
    SegmentLine s = parse_segment(tokens, line, lines[i].size());
    int id = static_cast<int>(file.points.size());
    file.points.push_back(s.a);
    file.points.push_back(s.b);
    file.edges.emplace_back(id, id + 1);
  }
  return file;
}

Matching to_matching(const InstanceFile& file) {
  PointSetPtr base = make_point_set(file.points);
  validate_general_position(*base);
  return Matching(base, file.edges);
}

std::string serialize_instance(const Matching& m) {
  std::string out;
  for (const Segment& s : m.edges()) append_segment(out, m.point(s.a), m.point(s.b));
  return out;
}

bool looks_like_sequence(const std::string& text) {
  for (const std::string& line : split_lines(text))
    if (std::regex_match(line, step_header())) return true;
  return false;
}

SequenceFile parse_sequence(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::vector<std::vector<SegmentLine>> steps;
  for (size_t i = 0; i < lines.size(); ++i) {
    int line = static_cast<int>(i) + 1;
    std::smatch match;
    if (std::regex_match(lines[i], match, step_header())) {
      if (std::stoul(match[1].str()) != steps.size())
        throw ParseError(line, 1, "expected step " + std::to_string(steps.size()));
      steps.emplace_back();
      continue;
    }
    std::vector<Token> tokens = tokenize(lines[i]);
    if (tokens.empty()) continue;
    if (steps.empty()) throw ParseError(line, tokens[0].column, "segment before the first step header");
    steps.back().push_back(parse_segment(tokens, line, lines[i].size()));
  }
  if (steps.empty()) throw ParseError(static_cast<int>(lines.size()) + 1, 1, "no step header");

  SequenceFile file;
  std::vector<Vec2> pts;
  std::map<Vec2, int> id_of;
  for (const SegmentLine& s : steps[0]) {
    for (const Vec2& p : {s.a, s.b}) {
      if (id_of.count(p)) throw ParseError(s.line, 1, "point " + to_string(p) + " appears twice in step 0");
      id_of[p] = static_cast<int>(pts.size());
      pts.push_back(p);
    }
  }
  file.points = make_point_set(std::move(pts));
  for (const auto& step : steps) {
    std::vector<Segment> edges;
    for (const SegmentLine& s : step) {
      auto a = id_of.find(s.a), b = id_of.find(s.b);
      if (a == id_of.end() || b == id_of.end())
        throw ParseError(s.line, 1, "point " + to_string(a == id_of.end() ? s.a : s.b) + " is not a point of step 0");
      if (a->second == b->second) throw ParseError(s.line, 1, "segment with equal endpoints");
      edges.emplace_back(a->second, b->second);
    }
    std::sort(edges.begin(), edges.end());
    file.steps.push_back(std::move(edges));
  }
  return file;
}

std::string serialize_sequence(const std::vector<Matching>& steps) {
  std::string out;
  for (size_t k = 0; k < steps.size(); ++k) {
    out += "== step " + std::to_string(k) + " ==\n";
    for (const Segment& s : steps[k].edges()) append_segment(out, steps[k].point(s.a), steps[k].point(s.b));
  }
  return out;
}

Matching rebase(const InstanceFile& file, const PointSetPtr& base) {
  std::map<Vec2, int> id_of;
  for (int i = 0; i < base->size(); ++i) id_of[(*base)[i]] = i;
  if (static_cast<int>(file.points.size()) != base->size())
    throw Error(ErrorCode::MismatchedVertexSet, "point counts differ");
  std::vector<int> ids;
  for (const Vec2& p : file.points) {
    auto it = id_of.find(p);
    if (it == id_of.end()) throw Error(ErrorCode::MismatchedVertexSet, "point " + to_string(p) + " is not in the first instance");
    ids.push_back(it->second);
  }
  std::vector<Segment> edges;
  for (const Segment& s : file.edges) edges.emplace_back(ids[static_cast<size_t>(s.a)], ids[static_cast<size_t>(s.b)]);
  return Matching(base, std::move(edges));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

}  // namespace geomatch
