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

// Brute-force ground truth for small instances. Every routine has an explicit
// size guard and throws TooLarge beyond it.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "geomatch/geometry.hpp"

namespace geomatch {

inline constexpr int kEnumerateGuard = 16;
inline constexpr int kDistanceGuard = 12;
inline constexpr int kGraphMatchingGuard = 24;

// All non-crossing perfect matchings of the point set, in lexicographic
// order of their edge lists.
std::vector<Matching> enumerate_ncpm(const PointSetPtr& points, int guard = kEnumerateGuard);

// A perfect matching disjoint from and compatible with `m`, if one exists.
// Equivalent to filtering enumerate_ncpm, with the filter applied per edge.
std::optional<Matching> find_disjoint_compatible_pm(const Matching& m, int guard = kEnumerateGuard);
bool has_disjoint_compatible_pm(const Matching& m, int guard = kEnumerateGuard);

// Shortest transformation length between two perfect matchings, by breadth
// first search over the compatibility graph of all non-crossing perfect
// matchings. Throws TooLarge, Unreachable.
int transformation_distance(const Matching& a, const Matching& b, int guard = kDistanceGuard);

struct VisibilityGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (u, v) with u < v, sorted
  std::vector<std::vector<bool>> adjacent;

  bool has_edge(int u, int v) const { return adjacent[static_cast<size_t>(u)][static_cast<size_t>(v)]; }
};

// u ~ v iff the segment uv crosses no edge of `m`; with `minus_m`, edges of
// `m` themselves are removed.
VisibilityGraph visibility_graph(const Matching& m, bool minus_m);

// Perfect matching of the abstract graph, by backtracking with memoized
// failures over vertex subsets.
bool graph_perfect_matching_exists(const VisibilityGraph& g, int guard = kGraphMatchingGuard);

}  // namespace geomatch
