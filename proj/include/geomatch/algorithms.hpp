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

// End-to-end constructions on perfect matchings: transformations through the
// canonical matching, disjoint compatible matchings for axis-parallel and
// convex-hull-connected inputs, the 4/5 partial matching, matchings of left
// and right endpoints, the two-trees search, and instance generators.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geomatch/geometry.hpp"
#include "geomatch/matching_engine.hpp"
#include "geomatch/orientation.hpp"
#include "geomatch/subdivision.hpp"

namespace geomatch {

// ---------------------------------------------------------------------------
// Transformations

// Pairs the points consecutively in x order. Throws OddCount,
// DistinctXRequired.
Matching canonical_matching(const PointSetPtr& points);

// Perfect matching of the vertices of `m` strictly on the chosen side of the
// oriented line pq (left when `left`), crossing no edge of `m`. Throws
// VertexOnLine, OddCut.
Matching halfplane_matching(const Matching& m, const Vec2& p, const Vec2& q, bool left);

// halfplane_matching on both sides, merged. No output edge crosses the line.
Matching even_cut_matching(const Matching& m, const Vec2& p, const Vec2& q);

struct TransformationSequence {
  std::vector<Matching> matchings;

  int length() const { return static_cast<int>(matchings.size()) - 1; }
};

// ceil(log2 n) for n >= 1.
int ceil_log2(int n);

// Sequence from a perfect matching to the canonical matching of its points,
// by recursive vertical cuts. Throws DistinctXRequired, NotPerfect.
TransformationSequence transform_to_canonical(const Matching& m);

// m -> canonical -> m2 with repeated matchings (and the loops between them)
// removed. Throws MismatchedVertexSet, NotPerfect, DistinctXRequired.
TransformationSequence transform(const Matching& m, const Matching& m2);

// ---------------------------------------------------------------------------
// Disjoint compatible matchings

// Extension, dual and per-edge colors (Red/Green or Red/Blue).
struct ColoredDual {
  Extension extension;
  DualMultigraph dual;

  std::vector<int> edges_of(EdgeColor c) const;
  Multigraph subgraph(EdgeColor c) const;
};

// Horizontal segments extended first, then vertical ones; edges through
// left/bottom endpoints are red, through right/top endpoints green. Red and
// green are asserted to be spanning trees. Throws NotAxisParallel,
// NotPerfect.
ColoredDual hv_two_trees(const Matching& m);

struct HvResult {
  ColoredDual dual;
  EvenOrientation orientation;
  Matching matching;
};

// Throws NotAxisParallel, NotPerfect, OddMatching.
HvResult hv_disjoint_matching(const Matching& m);

// Throws NotCHC, OddMatching, NotPerfect.
Matching chc_disjoint_matching(const Matching& m);

struct FourFifthsReport {
  Matching matching;
  ColoredDual dual;
  int n = 0;
  int guarantee = 0;  // ceil((4n - 1) / 5)
  int achieved = 0;
  int odd_components = 0;  // f(R)
  std::vector<int> removed_edges;  // dual edge ids
};

// Right endpoints extended first, then left ones; red = right endpoint edges,
// blue = left endpoint edges. Throws OddN, VerticalSegment, NotPerfect.
FourFifthsReport four_fifths_matching(const Matching& m);

struct CrossingsResult {
  Matching left;   // over the left endpoints
  Matching right;  // over the right endpoints
};

// Throws OddMatching, VerticalSegment, NotPerfect.
CrossingsResult crossings_matchings(const Matching& m);

struct TwoTreesResult {
  bool found = false;
  int orders_tried = 0;
  std::uint64_t partition_nodes = 0;
  std::vector<ExtensionDirective> directives;
  std::optional<ColoredDual> dual;  // witness colors: Red = first tree, Green = second
  std::optional<Matching> matching;  // for even matchings with a witness
};

TwoTreesResult two_trees_search(const Matching& m, int max_orders);

// ---------------------------------------------------------------------------
// Generators

enum class Flavor { General, AxisParallel, CHC };

const char* to_string(Flavor f);

// Deterministic per seed. General instances also have distinct
// x-coordinates. Throws GenerationFailed.
Matching gen_random_matching(int n, std::uint64_t seed, Flavor flavor);

// k horizontal chords of a circle of the given radius, through rational
// points. Ids 2i and 2i+1 are the left and right ends of chord i.
Matching gen_parallel_chords(int k, const Scalar& radius);

// 2n+1 segments: n long "blue" segments (ids 0..2n-1) built by extending a
// random matching, and one short "red" segment per region (ids 2n..4n+1).
Matching gen_general_odd(int n, std::uint64_t seed = 1);

}  // namespace geomatch
