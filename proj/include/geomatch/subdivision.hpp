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

// Segment extensions inside a convex region.
//
// Each directive prolongs a matching segment by a ray from one (or both) of
// its endpoints. Rays are shot strictly in directive order and stop at the
// first thing they meet: a matching segment, an earlier ray, or the region
// boundary. Once every in-region endpoint has been extended, the walls cut the
// region into |M1| + |M2| + 1 convex cells, and every in-region matching
// vertex sits on the boundary of exactly two of them. The dual multigraph has
// one vertex per cell and one edge per in-region matching vertex.

#pragma once

#include <optional>
#include <vector>

#include "geomatch/geometry.hpp"
#include "geomatch/orientation.hpp"

namespace geomatch {

// Convex region in which a matching is extended. Boundary edges lying on a
// clipping box are flagged: a ray stopping there "went to infinity".
class Region {
 public:
  static Region box(const BoundingBox& box);
  static Region polygon(ConvexPolygon polygon);
  // Closed halfplane to the left of the oriented line through p and q (or to
  // the right, when `left` is false), clipped to `box`.
  static Region halfplane(const Vec2& p, const Vec2& q, bool left, const BoundingBox& box);

  const ConvexPolygon& polygon() const { return polygon_; }
  bool is_clip_edge(int edge) const { return clip_[static_cast<size_t>(edge)]; }

 private:
  ConvexPolygon polygon_;
  std::vector<bool> clip_;
};

struct ExtensionDirective {
  Segment segment;
  std::optional<int> from_endpoint;  // nullopt = both directions
  int order_index = 0;

  static ExtensionDirective both(Segment s, int order) { return {s, std::nullopt, order}; }
  static ExtensionDirective from(Segment s, int endpoint, int order) { return {s, endpoint, order}; }
};

enum class StopKind { Segment, Extension, Boundary };

struct Ray {
  int directive = 0;  // index into the order-sorted directive list
  Segment segment;
  int endpoint = 0;  // matching vertex the ray starts at
  Vec2 origin;
  Vec2 terminus;
  StopKind stop = StopKind::Boundary;
  // Segment index (into Extension::pieces), ray index, or region edge index.
  int blocker = -1;
  bool went_to_infinity = false;
};

// The part of a matching segment inside the region. For a segment with one
// endpoint outside, `from` is where it enters the region.
struct SegmentPiece {
  Segment segment;
  Vec2 from;
  Vec2 to;
  bool both_inside = true;
};

struct ExtensionGeometry {
  std::vector<ExtensionDirective> directives;  // sorted by order_index
  std::vector<SegmentPiece> pieces;            // one per segment meeting the region
  std::vector<Ray> rays;                       // in shooting order
};

struct IncidentCells {
  int left = -1;   // cell left of the segment line oriented from its lexicographically smaller endpoint
  int right = -1;
};

struct ConvexSubdivision {
  Region region;
  std::vector<ConvexPolygon> cells;
  // Matching vertex ids on each cell boundary, counterclockwise.
  std::vector<std::vector<int>> cell_vertices;
  // Indexed by point id; {-1, -1} for vertices outside the region.
  std::vector<IncidentCells> incidence;
  std::vector<int> region_vertices;  // sorted ids of in-region matching vertices
  int extended_segments = 0;         // |M1| + |M2|
};

struct Extension {
  ExtensionGeometry geometry;
  ConvexSubdivision subdivision;
};

// Shoots the rays only. Requires the region rule (every segment meeting the
// region has an endpoint inside) but not that every endpoint is extended, so
// it also serves for one-sided "slit" constructions.
ExtensionGeometry shoot_rays(const Matching& m, const Region& region, std::vector<ExtensionDirective> directives);

// Rays plus the resulting convex subdivision. Every in-region endpoint must be
// covered by some directive (InvalidDirectives otherwise).
Extension extend(const Matching& m, const Region& region, std::vector<ExtensionDirective> directives);

// Every segment meeting the region, both directions, in segment order.
std::vector<ExtensionDirective> default_directives(const Matching& m, const Region& region);

enum class EndpointRole { LeftEnd, RightEnd, BottomEnd, TopEnd };
enum class EdgeColor { None, Red, Green, Blue };

const char* to_string(EndpointRole role);
const char* to_string(EdgeColor color);

struct DualEdge {
  int u = -1;  // left cell
  int v = -1;  // right cell
  int vertex = -1;
  Segment segment;
  EndpointRole role = EndpointRole::LeftEnd;
  EdgeColor color = EdgeColor::None;
};

struct DualMultigraph {
  int num_cells = 0;
  std::vector<DualEdge> edges;  // ordered by matching vertex id
  std::vector<int> edge_of_vertex;  // point id -> dual edge id, -1 outside

  Multigraph graph() const;
  bool connected() const;
};

// LeftEnd / RightEnd by x; vertical segments get BottomEnd / TopEnd.
EndpointRole endpoint_role(const Matching& m, int vertex);

DualMultigraph dual_multigraph(const ConvexSubdivision& sub, const Matching& m);

}  // namespace geomatch
