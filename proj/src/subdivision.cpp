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

#include "geomatch/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace geomatch {

namespace {

// Parameter interval [lo, hi] of a + t (b - a), t in [0, 1] (or [0, inf)
// when `ray`), inside the closed convex polygon. Empty when lo > hi.
struct ClipInterval {
  Scalar lo = 0;
  Scalar hi = 0;
  bool bounded_hi = true;
  bool empty = false;
  int exit_edge = -1;
};

ClipInterval clip(const ConvexPolygon& poly, const Vec2& a, const Vec2& dir, bool ray) {
  ClipInterval out;
  out.lo = 0;
  out.hi = 1;
  out.bounded_hi = !ray;
  const auto& v = poly.vertices();
  for (size_t i = 0; i < v.size(); ++i) {
    Vec2 w = v[(i + 1) % v.size()] - v[i];
    Scalar num = cross(w, a - v[i]);
    Scalar den = cross(w, dir);
    int s = sgn(den);
    if (s == 0) {
      if (sgn(num) < 0) out.empty = true;
      continue;
    }
    Scalar t = -num / den;
    if (s > 0) {
      if (t > out.lo) out.lo = t;
    } else if (!out.bounded_hi || t < out.hi) {
      out.hi = t;
      out.bounded_hi = true;
      out.exit_edge = static_cast<int>(i);
    }
  }
  if (out.bounded_hi && out.lo > out.hi) out.empty = true;
  return out;
}

bool strictly_inside(const ConvexPolygon& poly, const Vec2& p) { return poly.contains_interior(p); }

// Direction-angle order: counterclockwise from the positive x axis.
bool angle_less(const Vec2& a, const Vec2& b) {
  auto half = [](const Vec2& d) { return (sgn(d.y) > 0 || (sgn(d.y) == 0 && sgn(d.x) > 0)) ? 0 : 1; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return sgn(cross(a, b)) > 0;
}

struct Classified {
  std::vector<SegmentPiece> pieces;
  std::vector<int> piece_of_point;  // point id -> piece index or -1
  std::vector<char> inside;         // per point id
};

Classified classify(const Matching& m, const Region& region) {
  const ConvexPolygon& poly = region.polygon();
  Classified c;
  c.piece_of_point.assign(static_cast<size_t>(m.base().size()), -1);
  c.inside.assign(static_cast<size_t>(m.base().size()), 0);
  for (int id : m.vertices()) {
    const Vec2& p = m.point(id);
    if (strictly_inside(poly, p)) {
      c.inside[static_cast<size_t>(id)] = 1;
    } else if (poly.contains(p)) {
      throw Error(ErrorCode::InvalidRegion, "matching vertex " + std::to_string(id) + " lies on the region boundary",
                  {id});
    }
  }
  for (const Segment& s : m.edges()) {
    bool ia = c.inside[static_cast<size_t>(s.a)], ib = c.inside[static_cast<size_t>(s.b)];
    const Vec2& pa = m.point(s.a);
    const Vec2& pb = m.point(s.b);
    if (ia && ib) {
      c.pieces.push_back({s, pa, pb, true});
    } else if (ia || ib) {
      int in = ia ? s.a : s.b;
      int out = s.other(in);
      const Vec2& pin = m.point(in);
      ClipInterval ci = clip(poly, pin, m.point(out) - pin, false);
      check_internal(!ci.empty, "segment with an inside endpoint misses the region");
      c.pieces.push_back({s, pin + ci.hi * (m.point(out) - pin), pin, false});
    } else {
      ClipInterval ci = clip(poly, pa, pb - pa, false);
      if (!ci.empty && ci.lo < ci.hi) {
        Scalar mid = (ci.lo + ci.hi) / 2;
        if (strictly_inside(poly, pa + mid * (pb - pa)))
          throw Error(ErrorCode::SegmentOutsideRegionRule,
                      "segment " + std::to_string(s.a) + "-" + std::to_string(s.b) +
                          " crosses the region without an endpoint inside",
                      {s.a, s.b});
      }
      continue;
    }
    int idx = static_cast<int>(c.pieces.size()) - 1;
    c.piece_of_point[static_cast<size_t>(s.a)] = idx;
    c.piece_of_point[static_cast<size_t>(s.b)] = idx;
  }
  return c;
}

// Side of p relative to the line e + t d from doubles: +1 / -1 when certain,
// 0 when rounding could matter (same error bound as the orientation filter).
int quick_side(const double e[2], const double d[2], double m, const Vec2& p) {
  double px = p.x.get_d(), py = p.y.get_d();
  double mm = std::max({m, std::fabs(px), std::fabs(py)});
  if (!(mm > 1e-100 && mm < 1e100)) return 0;
  double c = d[0] * (py - e[1]) - d[1] * (px - e[0]);
  double bound = 128 * std::numeric_limits<double>::epsilon() * mm * mm;
  return c > bound ? 1 : (c < -bound ? -1 : 0);
}

// Ray e + t d against the closed segment [p, q]. Sets t and u (position on
// [p, q]) and returns true on a hit with t > 0.
bool ray_hits(const Vec2& e, const Vec2& d, const Vec2& p, const Vec2& q, Scalar& t, Scalar& u) {
  const double ed[2] = {e.x.get_d(), e.y.get_d()}, dd[2] = {d.x.get_d(), d.y.get_d()};
  const double m = std::max({std::fabs(ed[0]), std::fabs(ed[1]), std::fabs(dd[0]), std::fabs(dd[1])});
  int sp = quick_side(ed, dd, m, p);
  if (sp != 0 && sp == quick_side(ed, dd, m, q)) return false;
  Vec2 w = q - p;
  Scalar den = cross(d, w);
  if (sgn(den) == 0) {
    if (sgn(cross(p - e, d)) == 0 && (on_segment(p, q, e) || sgn(dot(p - e, d)) > 0 || sgn(dot(q - e, d)) > 0))
      throw Error(ErrorCode::DegenerateIncidence, "ray runs along another wall");
    return false;
  }
  // Signs and bounds are decided on numerators; divide only on a hit.
  const int sd = sgn(den);
  Vec2 pe = p - e;
  Scalar nu = cross(pe, d);
  if (sgn(nu) * sd < 0 || (sd > 0 ? nu > den : nu < den)) return false;
  Scalar nt = cross(pe, w);
  if (sgn(nt) * sd <= 0) return false;
  t = nt / den;
  u = nu / den;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Region

Region Region::box(const BoundingBox& b) {
  Region r;
  r.polygon_ = b.polygon();
  r.clip_.assign(static_cast<size_t>(r.polygon_.size()), true);
  return r;
}

Region Region::polygon(ConvexPolygon polygon) {
  Region r;
  r.polygon_ = std::move(polygon);
  r.clip_.assign(static_cast<size_t>(r.polygon_.size()), false);
  return r;
}

Region Region::halfplane(const Vec2& p, const Vec2& q, bool left, const BoundingBox& b) {
  if (p == q) throw Error(ErrorCode::InvalidRegion, "halfplane line needs two distinct points");
  auto keep = [&](const Vec2& x) {
    int s = static_cast<int>(orientation_test(p, q, x));
    return left ? s >= 0 : s <= 0;
  };
  std::vector<Vec2> in = b.polygon().vertices();
  std::vector<Vec2> out;
  for (size_t i = 0; i < in.size(); ++i) {
    const Vec2& cur = in[i];
    const Vec2& nxt = in[(i + 1) % in.size()];
    bool kc = keep(cur), kn = keep(nxt);
    if (kc) out.push_back(cur);
    if (kc != kn) {
      auto x = line_intersection(cur, nxt, p, q);
      check_internal(x.has_value(), "box edge parallel to a line it crosses");
      out.push_back(*x);
    }
  }
  Region r;
  try {
    r.polygon_ = ConvexPolygon(std::move(out));
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidRegion, "halfplane misses the bounding box");
  }
  const auto& v = r.polygon_.vertices();
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& c = v[(i + 1) % v.size()];
    bool on_box = (a.x == b.xmin && c.x == b.xmin) || (a.x == b.xmax && c.x == b.xmax) ||
                  (a.y == b.ymin && c.y == b.ymin) || (a.y == b.ymax && c.y == b.ymax);
    r.clip_.push_back(on_box);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rays

std::vector<ExtensionDirective> default_directives(const Matching& m, const Region& region) {
  Classified c = classify(m, region);
  std::vector<ExtensionDirective> out;
  for (const SegmentPiece& p : c.pieces)
    out.push_back(ExtensionDirective::both(p.segment, static_cast<int>(out.size())));
  return out;
}

ExtensionGeometry shoot_rays(const Matching& m, const Region& region, std::vector<ExtensionDirective> directives) {
  Classified c = classify(m, region);
  std::sort(directives.begin(), directives.end(),
            [](const ExtensionDirective& a, const ExtensionDirective& b) { return a.order_index < b.order_index; });
  for (size_t i = 0; i + 1 < directives.size(); ++i)
    if (directives[i].order_index == directives[i + 1].order_index)
      throw Error(ErrorCode::InvalidDirectives, "duplicate order_index " + std::to_string(directives[i].order_index));

  ExtensionGeometry g;
  g.pieces = c.pieces;
  std::set<int> shot;  // endpoints already extended
  const ConvexPolygon& poly = region.polygon();

  for (size_t di = 0; di < directives.size(); ++di) {
    const ExtensionDirective& d = directives[di];
    if (!m.contains(d.segment))
      throw Error(ErrorCode::InvalidDirectives, "directive segment is not in the matching", {d.segment.a, d.segment.b});
    int piece = c.piece_of_point[static_cast<size_t>(d.segment.a)];
    if (piece < 0)
      throw Error(ErrorCode::InvalidDirectives, "directive segment does not meet the region", {d.segment.a, d.segment.b});
    std::vector<int> origins;
    if (d.from_endpoint) {
      int e = *d.from_endpoint;
      if (!d.segment.has(e))
        throw Error(ErrorCode::InvalidDirectives, "directive endpoint not on its segment", {e});
      if (!c.inside[static_cast<size_t>(e)])
        throw Error(ErrorCode::InvalidDirectives, "directive endpoint outside the region", {e});
      origins.push_back(e);
    } else {
      for (int e : {d.segment.a, d.segment.b})
        if (c.inside[static_cast<size_t>(e)]) origins.push_back(e);
    }
    for (int e : origins) {
      if (!shot.insert(e).second)
        throw Error(ErrorCode::InvalidDirectives, "endpoint " + std::to_string(e) + " extended twice", {e});
      const Vec2& origin = m.point(e);
      Vec2 dir = origin - m.point(d.segment.other(e));

      Ray ray;
      ray.directive = static_cast<int>(di);
      ray.segment = d.segment;
      ray.endpoint = e;
      ray.origin = origin;

      ClipInterval exit = clip(poly, origin, dir, true);
      check_internal(exit.bounded_hi && exit.exit_edge >= 0, "ray does not leave a bounded region");
      Scalar best = exit.hi;
      ray.stop = StopKind::Boundary;
      ray.blocker = exit.exit_edge;
      bool vertex_hit = false;  // best hit passes through a matching vertex

      Scalar t, u;
      for (size_t pi = 0; pi < g.pieces.size(); ++pi) {
        const SegmentPiece& sp = g.pieces[pi];
        if (sp.segment == d.segment) continue;
        if (!ray_hits(origin, dir, sp.from, sp.to, t, u)) continue;
        // Piece endpoints that are matching vertices: `to` always, `from`
        // only for fully inside segments.
        bool at_vertex = u == 1 || (sgn(u) == 0 && sp.both_inside);
        if (t < best || (t == best && ray.stop != StopKind::Segment)) {
          if (t < best) vertex_hit = false;
          best = t;
          ray.stop = StopKind::Segment;
          ray.blocker = static_cast<int>(pi);
        }
        if (t == best && at_vertex) vertex_hit = true;
      }
      for (size_t ri = 0; ri < g.rays.size(); ++ri) {
        const Ray& other = g.rays[ri];
        if (other.segment == d.segment) continue;
        if (!ray_hits(origin, dir, other.origin, other.terminus, t, u)) continue;
        if (t < best) {
          vertex_hit = false;
          best = t;
          ray.stop = StopKind::Extension;
          ray.blocker = static_cast<int>(ri);
        }
        if (t == best && sgn(u) == 0) vertex_hit = true;
      }
      if (vertex_hit)
        throw Error(ErrorCode::DegenerateIncidence,
                    "ray from vertex " + std::to_string(e) + " passes through another matching vertex", {e});
      ray.terminus = origin + best * dir;
      ray.went_to_infinity = ray.stop == StopKind::Boundary && region.is_clip_edge(ray.blocker);
      g.rays.push_back(std::move(ray));
    }
  }
  g.directives = std::move(directives);
  return g;
}

// ---------------------------------------------------------------------------
// Subdivision: planar face walk over the final walls.

namespace {

struct LexLess {
  bool operator()(const Vec2& a, const Vec2& b) const { return a < b; }
};

struct Arrangement {
  std::vector<Vec2> coords;
  std::vector<int> point_id;  // matching vertex id at this arrangement vertex, or -1
  std::map<Vec2, int, LexLess> index;

  int vertex(const Vec2& p) {
    auto [it, inserted] = index.emplace(p, static_cast<int>(coords.size()));
    if (inserted) {
      coords.push_back(p);
      point_id.push_back(-1);
    }
    return it->second;
  }
};

}  // namespace

Extension extend(const Matching& m, const Region& region, std::vector<ExtensionDirective> directives) {
  Extension out;
  out.geometry = shoot_rays(m, region, std::move(directives));
  const ExtensionGeometry& g = out.geometry;
  ConvexSubdivision& sub = out.subdivision;
  sub.region = region;
  sub.extended_segments = static_cast<int>(g.pieces.size());
  sub.incidence.assign(static_cast<size_t>(m.base().size()), IncidentCells{});

  std::set<int> extended;
  for (const Ray& r : g.rays) extended.insert(r.endpoint);
  for (const SegmentPiece& p : g.pieces) {
    std::vector<int> inner = p.both_inside ? std::vector<int>{p.segment.a, p.segment.b}
                                           : std::vector<int>{m.point(p.segment.a) == p.to ? p.segment.a : p.segment.b};
    for (int v : inner) {
      if (!extended.count(v))
        throw Error(ErrorCode::InvalidDirectives,
                    "in-region endpoint " + std::to_string(v) + " is never extended", {v});
      sub.region_vertices.push_back(v);
    }
  }
  std::sort(sub.region_vertices.begin(), sub.region_vertices.end());

  // Walls: segment pieces, rays, region boundary.
  std::vector<std::pair<Vec2, Vec2>> walls;
  for (const SegmentPiece& p : g.pieces) walls.emplace_back(p.from, p.to);
  for (const Ray& r : g.rays) walls.emplace_back(r.origin, r.terminus);
  const auto& rv = region.polygon().vertices();
  for (size_t i = 0; i < rv.size(); ++i) walls.emplace_back(rv[i], rv[(i + 1) % rv.size()]);

  Arrangement arr;
  for (auto& [a, b] : walls) {
    arr.vertex(a);
    arr.vertex(b);
  }
  for (int v : sub.region_vertices) arr.point_id[static_cast<size_t>(arr.vertex(m.point(v)))] = v;

  // Split every wall at the arrangement vertices lying on it.
  std::set<std::pair<int, int>> undirected;
  for (auto& [a, b] : walls) {
    if (a == b) continue;
    Vec2 dir = b - a;
    std::vector<std::pair<Scalar, int>> on;
    for (int vi = 0; vi < static_cast<int>(arr.coords.size()); ++vi) {
      const Vec2& c = arr.coords[static_cast<size_t>(vi)];
      if (on_segment(a, b, c)) on.emplace_back(dot(c - a, dir), vi);
    }
    std::sort(on.begin(), on.end());
    for (size_t i = 0; i + 1 < on.size(); ++i)
      undirected.emplace(std::min(on[i].second, on[i + 1].second), std::max(on[i].second, on[i + 1].second));
  }

  // Half-edges 2k (lo -> hi) and 2k + 1 (hi -> lo).
  std::vector<int> from, to;
  for (auto [a, b] : undirected) {
    from.push_back(a);
    to.push_back(b);
    from.push_back(b);
    to.push_back(a);
  }
  const int nh = static_cast<int>(from.size());
  auto hdir = [&](int h) { return arr.coords[static_cast<size_t>(to[h])] - arr.coords[static_cast<size_t>(from[h])]; };
  std::vector<std::vector<int>> out_edges(arr.coords.size());
  for (int h = 0; h < nh; ++h) out_edges[static_cast<size_t>(from[h])].push_back(h);
  std::vector<int> pos(static_cast<size_t>(nh));
  for (auto& lst : out_edges) {
    std::sort(lst.begin(), lst.end(), [&](int x, int y) { return angle_less(hdir(x), hdir(y)); });
    for (size_t i = 0; i < lst.size(); ++i) pos[static_cast<size_t>(lst[i])] = static_cast<int>(i);
  }
  auto next = [&](int h) {
    int twin = h ^ 1;
    const auto& lst = out_edges[static_cast<size_t>(to[h])];
    int i = pos[static_cast<size_t>(twin)];
    return lst[static_cast<size_t>((i + static_cast<int>(lst.size()) - 1) % static_cast<int>(lst.size()))];
  };

  std::vector<int> face_of(static_cast<size_t>(nh), -1);
  int outer_faces = 0;
  for (int h0 = 0; h0 < nh; ++h0) {
    if (face_of[static_cast<size_t>(h0)] != -1) continue;
    std::vector<int> cycle;
    for (int h = h0; face_of[static_cast<size_t>(h)] == -1; h = next(h)) {
      face_of[static_cast<size_t>(h)] = -3;  // in progress
      cycle.push_back(h);
    }
    Scalar a2 = 0;
    for (int h : cycle) a2 += cross(arr.coords[static_cast<size_t>(from[h])], arr.coords[static_cast<size_t>(to[h])]);
    if (sgn(a2) <= 0) {
      ++outer_faces;
      for (int h : cycle) face_of[static_cast<size_t>(h)] = -2;
      continue;
    }
    int cell = static_cast<int>(sub.cells.size());
    std::vector<Vec2> poly;
    std::vector<int> verts;
    for (int h : cycle) {
      face_of[static_cast<size_t>(h)] = cell;
      poly.push_back(arr.coords[static_cast<size_t>(from[h])]);
      int pid = arr.point_id[static_cast<size_t>(from[h])];
      if (pid >= 0) verts.push_back(pid);
    }
    try {
      sub.cells.emplace_back(std::move(poly));
    } catch (const Error&) {
      throw Error(ErrorCode::Internal, "extension produced a non-convex cell");
    }
    sub.cell_vertices.push_back(std::move(verts));
  }
  check_internal(outer_faces == 1, "extension walls are not connected");
  check_internal(static_cast<int>(sub.cells.size()) == sub.extended_segments + 1,
                 "cell count differs from extended segments + 1");

  for (int v : sub.region_vertices) {
    int av = arr.vertex(m.point(v));
    int w = m.partner(v);
    const Vec2& pv = m.point(v);
    const Vec2& pw = m.point(w);
    Vec2 along = pv < pw ? pw - pv : pv - pw;
    int forward = -1;
    for (int h : out_edges[static_cast<size_t>(av)])
      if (sgn(cross(hdir(h), along)) == 0 && sgn(dot(hdir(h), along)) > 0) forward = h;
    check_internal(forward >= 0, "matching vertex is not interior to its wall");
    int left = face_of[static_cast<size_t>(forward)];
    int right = face_of[static_cast<size_t>(forward ^ 1)];
    check_internal(left >= 0 && right >= 0 && left != right, "matching vertex not between two cells");
    sub.incidence[static_cast<size_t>(v)] = {left, right};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dual

const char* to_string(EndpointRole role) {
  switch (role) {
    case EndpointRole::LeftEnd: return "left";
    case EndpointRole::RightEnd: return "right";
    case EndpointRole::BottomEnd: return "bottom";
    case EndpointRole::TopEnd: return "top";
  }
  return "?";
}

const char* to_string(EdgeColor color) {
  switch (color) {
    case EdgeColor::None: return "none";
    case EdgeColor::Red: return "red";
    case EdgeColor::Green: return "green";
    case EdgeColor::Blue: return "blue";
  }
  return "?";
}

EndpointRole endpoint_role(const Matching& m, int vertex) {
  const Vec2& p = m.point(vertex);
  const Vec2& q = m.point(m.partner(vertex));
  if (p.x != q.x) return p.x < q.x ? EndpointRole::LeftEnd : EndpointRole::RightEnd;
  return p.y < q.y ? EndpointRole::BottomEnd : EndpointRole::TopEnd;
}

Multigraph DualMultigraph::graph() const {
  Multigraph g;
  g.num_vertices = num_cells;
  for (const DualEdge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

bool DualMultigraph::connected() const {
  Multigraph g = graph();
  std::vector<int> label = component_labels(g);
  return std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
}

DualMultigraph dual_multigraph(const ConvexSubdivision& sub, const Matching& m) {
  DualMultigraph d;
  d.num_cells = static_cast<int>(sub.cells.size());
  d.edge_of_vertex.assign(static_cast<size_t>(m.base().size()), -1);
  for (int v : sub.region_vertices) {
    const IncidentCells& inc = sub.incidence[static_cast<size_t>(v)];
    DualEdge e;
    e.u = inc.left;
    e.v = inc.right;
    e.vertex = v;
    e.segment = Segment(v, m.partner(v));
    e.role = endpoint_role(m, v);
    d.edge_of_vertex[static_cast<size_t>(v)] = static_cast<int>(d.edges.size());
    d.edges.push_back(e);
  }
  check_internal(d.connected(), "dual multigraph is disconnected");
  return d;
}

}  // namespace geomatch
