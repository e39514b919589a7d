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

// Building blocks that produce matchings: perfect matchings of points in
// convex position, blocker-constrained search, and assembly of a matching from
// an even orientation of a dual multigraph.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "geomatch/geometry.hpp"
#include "geomatch/orientation.hpp"
#include "geomatch/subdivision.hpp"

namespace geomatch {

// Perfect matching of `points` (in convex position) sharing no edge with
// `boundary` and crossing none of its edges. `boundary` edges must join
// hull-consecutive points of `points`. Throws OddCount, NotConvexPosition,
// TwoPointsAlreadyMatched.
Matching convex_disjoint_matching(const PointSetPtr& base, const std::vector<int>& points,
                                  const std::vector<Segment>& boundary);

// As above without the disjointness requirement; edges of `boundary` are
// avoided when possible and reused only when forced.
Matching convex_compatible_matching(const PointSetPtr& base, const std::vector<int>& points,
                                    const std::vector<Segment>& boundary);

struct ConstrainedMatchProblem {
  PointSetPtr base;
  std::vector<int> points;
  // Closed segments no output edge may cross; touching at a common endpoint
  // is allowed.
  std::vector<std::pair<Vec2, Vec2>> blockers;
  std::optional<ConvexPolygon> region;
  std::vector<Segment> forbidden;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

// Perfect matching of prob.points whose edges avoid the blockers, stay in the
// region and are pairwise non-crossing. Exhaustive backtracking: nullopt means
// no such matching exists. Candidate partners are tried shortest first.
std::optional<Matching> constrained_matching(const ConstrainedMatchProblem& prob, SearchStats* stats = nullptr);

// Matching vertex sets S_y per cell from the heads of `o` (head -1 leaves the
// vertex out). Throws SameSegmentIndegreeTwo when `require_disjoint` is set
// and a cell receives exactly both endpoints of one segment.
struct CellAssignment {
  std::vector<int> cell_of_vertex;           // per point id, -1 when unassigned
  std::vector<std::vector<int>> cell_points;  // per cell, sorted ids
};

CellAssignment assign_cells(const Matching& m, const DualMultigraph& g, const EvenOrientation& o);

// Matches every S_y inside its cell: convex_disjoint_matching (or the
// compatible variant) against the edges of `m` with both ends in S_y.
Matching assemble_from_orientation(const Matching& m, const ConvexSubdivision& sub, const DualMultigraph& g,
                                   const EvenOrientation& o, bool require_disjoint);

}  // namespace geomatch
