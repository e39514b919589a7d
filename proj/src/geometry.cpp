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

#include "geomatch/geometry.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace geomatch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CollinearTriple: return "CollinearTriple";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::MismatchedVertexSet: return "MismatchedVertexSet";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InvalidSegment: return "InvalidSegment";
    case ErrorCode::VertexReused: return "VertexReused";
    case ErrorCode::CrossingEdges: return "CrossingEdges";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::InvalidRegion: return "InvalidRegion";
    case ErrorCode::SegmentOutsideRegionRule: return "SegmentOutsideRegionRule";
    case ErrorCode::DegenerateIncidence: return "DegenerateIncidence";
    case ErrorCode::InvalidDirectives: return "InvalidDirectives";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::OddTree: return "OddTree";
    case ErrorCode::OddComponentInPart: return "OddComponentInPart";
    case ErrorCode::NotConvexPosition: return "NotConvexPosition";
    case ErrorCode::OddCount: return "OddCount";
    case ErrorCode::TwoPointsAlreadyMatched: return "TwoPointsAlreadyMatched";
    case ErrorCode::SameSegmentIndegreeTwo: return "SameSegmentIndegreeTwo";
    case ErrorCode::DistinctXRequired: return "DistinctXRequired";
    case ErrorCode::VertexOnLine: return "VertexOnLine";
    case ErrorCode::OddCut: return "OddCut";
    case ErrorCode::NotPerfect: return "NotPerfect";
    case ErrorCode::NotAxisParallel: return "NotAxisParallel";
    case ErrorCode::OddMatching: return "OddMatching";
    case ErrorCode::NotCHC: return "NotCHC";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::VerticalSegment: return "VerticalSegment";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Scalar cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

Scalar dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

std::string to_string(const Vec2& p) {
  return "(" + p.x.get_str() + "," + p.y.get_str() + ")";
}

namespace {

// Sign of the orientation determinant from double approximations, or 0 when
// rounding could flip it. Each conversion is within one ulp, so with M the
// largest magnitude the computed determinant is off by less than 64 eps M^2.
int filtered_orientation(const Vec2& p, const Vec2& q, const Vec2& r) {
  const double c[6] = {p.x.get_d(), p.y.get_d(), q.x.get_d(), q.y.get_d(), r.x.get_d(), r.y.get_d()};
  double m = 0;
  for (double v : c) m = std::max(m, std::fabs(v));
  if (!(m > 1e-100 && m < 1e100)) return 0;
  double det = (c[2] - c[0]) * (c[5] - c[1]) - (c[3] - c[1]) * (c[4] - c[0]);
  double bound = 128 * std::numeric_limits<double>::epsilon() * m * m;
  return det > bound ? 1 : (det < -bound ? -1 : 0);
}

}  // namespace

Orientation orientation_test(const Vec2& p, const Vec2& q, const Vec2& r) {
  if (int f = filtered_orientation(p, q, r)) return f > 0 ? Orientation::Left : Orientation::Right;
  Scalar det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  int s = sgn(det);
  return s > 0 ? Orientation::Left : (s < 0 ? Orientation::Right : Orientation::Collinear);
}

namespace {

int orient_sign(const Vec2& p, const Vec2& q, const Vec2& r) {
  return static_cast<int>(orientation_test(p, q, r));
}

const Scalar& min_of(const Scalar& a, const Scalar& b) { return a < b ? a : b; }
const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

bool boxes_overlap(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  if (max_of(a.x, b.x) < min_of(c.x, d.x) || max_of(c.x, d.x) < min_of(a.x, b.x)) return false;
  if (max_of(a.y, b.y) < min_of(c.y, d.y) || max_of(c.y, d.y) < min_of(a.y, b.y)) return false;
  return true;
}

}  // namespace

bool on_segment(const Vec2& p, const Vec2& q, const Vec2& r) {
  if (!(min_of(p.x, q.x) <= r.x && r.x <= max_of(p.x, q.x) && min_of(p.y, q.y) <= r.y && r.y <= max_of(p.y, q.y)))
    return false;
  return orient_sign(p, q, r) == 0;
}

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  if (!boxes_overlap(a, b, c, d)) return false;
  int o1 = orient_sign(a, b, c);
  int o2 = orient_sign(a, b, d);
  if (o1 == 0 && o2 == 0) {
    // Collinear: crossing iff the overlap has positive length. Project on the
    // dominant axis.
    bool use_x = a.x != b.x;
    auto key = [&](const Vec2& p) -> const Scalar& { return use_x ? p.x : p.y; };
    const Scalar& lo = max_of(min_of(key(a), key(b)), min_of(key(c), key(d)));
    const Scalar& hi = min_of(max_of(key(a), key(b)), max_of(key(c), key(d)));
    return lo < hi;
  }
  bool shared = a == c || a == d || b == c || b == d;
  if (shared) return false;  // distinct lines meet at most once, at the shared endpoint
  int o3 = orient_sign(c, d, a);
  int o4 = orient_sign(c, d, b);
  if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return o1 != o2 && o3 != o4;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

std::optional<Vec2> line_intersection(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  Vec2 r = b - a;
  Vec2 s = d - c;
  Scalar denom = cross(r, s);
  if (sgn(denom) == 0) return std::nullopt;
  Scalar t = cross(c - a, s) / denom;
  return a + t * r;
}

Segment::Segment(int u, int v) : a(std::min(u, v)), b(std::max(u, v)) {
  if (u == v) throw Error(ErrorCode::InvalidSegment, "segment endpoints coincide", {u});
}

namespace {

bool small_integer(const Scalar& s) {
  return s.get_den() == 1 && mpz_cmpabs_ui(s.get_num_mpz_t(), 1UL << 30) < 0;
}

void throw_collinear(int i, int j, int k) {
  std::ostringstream os;
  os << "points " << i << ", " << j << ", " << k << " are collinear";
  throw Error(ErrorCode::CollinearTriple, os.str(), {i, j, k});
}

}  // namespace

void validate_general_position(const PointSet& points, std::span<const int> ids) {
  std::vector<int> order(ids.begin(), ids.end());
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return points[i] < points[j] || (points[i] == points[j] && i < j); });
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    if (points[order[i]] == points[order[i + 1]]) {
      int lo = std::min(order[i], order[i + 1]), hi = std::max(order[i], order[i + 1]);
      throw Error(ErrorCode::DuplicatePoint, "points " + std::to_string(lo) + " and " + std::to_string(hi) + " coincide",
                  {lo, hi});
    }
  }
  std::vector<int> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  bool fast = std::all_of(sorted.begin(), sorted.end(),
                          [&](int id) { return small_integer(points[id].x) && small_integer(points[id].y); });
  if (fast) {
    std::vector<long long> xs(n), ys(n);
    for (size_t i = 0; i < n; ++i) {
      xs[i] = points[sorted[i]].x.get_num().get_si();
      ys[i] = points[sorted[i]].y.get_num().get_si();
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        long long dx = xs[j] - xs[i], dy = ys[j] - ys[i];
        for (size_t k = j + 1; k < n; ++k)
          if (dx * (ys[k] - ys[i]) == dy * (xs[k] - xs[i])) throw_collinear(sorted[i], sorted[j], sorted[k]);
      }
    return;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k)
        if (orientation_test(points[sorted[i]], points[sorted[j]], points[sorted[k]]) == Orientation::Collinear)
          throw_collinear(sorted[i], sorted[j], sorted[k]);
}

void validate_general_position(const PointSet& points) {
  std::vector<int> ids(static_cast<size_t>(points.size()));
  std::iota(ids.begin(), ids.end(), 0);
  validate_general_position(points, ids);
}

// ---------------------------------------------------------------------------
// Matching

Matching::Matching(PointSetPtr base, std::vector<Segment> edges) {
  *this = trusted(std::move(base), std::move(edges));
  // Sweep by min x so only x-overlapping pairs are tested.
  std::vector<int> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  auto lo = [&](int e) -> const Scalar& { return min_of(point(edges_[e].a).x, point(edges_[e].b).x); };
  auto hi = [&](int e) -> const Scalar& { return max_of(point(edges_[e].a).x, point(edges_[e].b).x); };
  std::sort(order.begin(), order.end(), [&](int i, int j) { return lo(i) < lo(j); });
  for (size_t i = 0; i < order.size(); ++i) {
    const Segment& s = edges_[order[i]];
    for (size_t j = i + 1; j < order.size() && lo(order[j]) <= hi(order[i]); ++j) {
      const Segment& t = edges_[order[j]];
      if (segments_cross(point(s.a), point(s.b), point(t.a), point(t.b)))
        throw Error(ErrorCode::CrossingEdges,
                    "segments " + std::to_string(s.a) + "-" + std::to_string(s.b) + " and " + std::to_string(t.a) +
                        "-" + std::to_string(t.b) + " cross",
                    {s.a, s.b, t.a, t.b});
    }
  }
}

Matching Matching::trusted(PointSetPtr base, std::vector<Segment> edges) {
  Matching m;
  m.base_ = std::move(base);
  m.edges_ = std::move(edges);
  std::sort(m.edges_.begin(), m.edges_.end());
  m.index_partners();
  return m;
}

void Matching::index_partners() {
  check_internal(base_ != nullptr, "matching without a point set");
  partner_.assign(static_cast<size_t>(base_->size()), -1);
  for (const Segment& s : edges_) {
    for (int id : {s.a, s.b})
      if (id < 0 || id >= base_->size())
        throw Error(ErrorCode::InvalidSegment, "point id " + std::to_string(id) + " out of range", {id});
    for (int id : {s.a, s.b})
      if (partner_[static_cast<size_t>(id)] >= 0)
        throw Error(ErrorCode::VertexReused, "point " + std::to_string(id) + " is matched twice", {id});
    partner_[static_cast<size_t>(s.a)] = s.b;
    partner_[static_cast<size_t>(s.b)] = s.a;
  }
}

bool Matching::contains(const Segment& s) const { return std::binary_search(edges_.begin(), edges_.end(), s); }

bool Matching::is_perfect() const { return base_ && 2 * size() == base_->size(); }

std::vector<int> Matching::vertices() const {
  std::vector<int> out;
  out.reserve(2 * edges_.size());
  for (const Segment& s : edges_) {
    out.push_back(s.a);
    out.push_back(s.b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Matching::same_base(const Matching& a, const Matching& b) {
  if (a.base_ == b.base_) return true;
  if (!a.base_ || !b.base_) return false;
  return *a.base_ == *b.base_;
}

namespace {

void require_same_base(const Matching& m, const Matching& m2) {
  if (!Matching::same_base(m, m2)) throw Error(ErrorCode::MismatchedVertexSet, "matchings over different point sets");
}

}  // namespace

bool compatible(const Matching& m, const Matching& m2) {
  require_same_base(m, m2);
  std::vector<Segment> all = m.edges();
  all.insert(all.end(), m2.edges().begin(), m2.edges().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const PointSet& pts = m.base();
  std::vector<int> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  auto lo = [&](int e) -> const Scalar& { return min_of(pts[all[e].a].x, pts[all[e].b].x); };
  auto hi = [&](int e) -> const Scalar& { return max_of(pts[all[e].a].x, pts[all[e].b].x); };
  std::sort(order.begin(), order.end(), [&](int i, int j) { return lo(i) < lo(j); });
  for (size_t i = 0; i < order.size(); ++i) {
    const Segment& s = all[order[i]];
    for (size_t j = i + 1; j < order.size() && lo(order[j]) <= hi(order[i]); ++j) {
      const Segment& t = all[order[j]];
      if (segments_cross(pts[s.a], pts[s.b], pts[t.a], pts[t.b])) return false;
    }
  }
  return true;
}

bool disjoint(const Matching& m, const Matching& m2) {
  require_same_base(m, m2);
  for (const Segment& s : m.edges())
    if (m2.contains(s)) return false;
  return true;
}

Matching merge(const Matching& m, const Matching& m2) {
  require_same_base(m, m2);
  std::vector<Segment> all = m.edges();
  all.insert(all.end(), m2.edges().begin(), m2.edges().end());
  return Matching::trusted(m.base_ptr(), std::move(all));
}

// ---------------------------------------------------------------------------
// Polygons and hulls

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
  std::vector<Vec2> v;
  for (auto& p : vertices)
    if (v.empty() || !(v.back() == p)) v.push_back(std::move(p));
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();
  // Drop collinear vertices until stable.
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (size_t i = 0; i < v.size(); ++i) {
      const Vec2& prev = v[(i + v.size() - 1) % v.size()];
      const Vec2& next = v[(i + 1) % v.size()];
      if (orientation_test(prev, v[i], next) == Orientation::Collinear) {
        v.erase(v.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) throw Error(ErrorCode::NotConvex, "polygon has zero area");
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& prev = v[(i + v.size() - 1) % v.size()];
    const Vec2& next = v[(i + 1) % v.size()];
    if (orientation_test(prev, v[i], next) != Orientation::Left)
      throw Error(ErrorCode::NotConvex, "polygon is not counterclockwise strictly convex at " + to_string(v[i]));
  }
  // A locally convex CCW polygon can still wind twice; total turning check.
  Scalar a2 = 0;
  for (size_t i = 0; i < v.size(); ++i) a2 += cross(v[i], v[(i + 1) % v.size()]);
  if (sgn(a2) <= 0) throw Error(ErrorCode::NotConvex, "polygon has non-positive area");
  size_t lowest = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[lowest]) lowest = i;
  std::rotate(v.begin(), v.begin() + static_cast<long>(lowest), v.end());
  for (size_t i = 1; i + 1 < v.size(); ++i)
    if (orientation_test(v[0], v[i], v[i + 1]) != Orientation::Left)
      throw Error(ErrorCode::NotConvex, "polygon winds more than once");
  vertices_ = std::move(v);
}

bool ConvexPolygon::contains(const Vec2& p) const {
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (orientation_test(vertices_[i], vertices_[(i + 1) % vertices_.size()], p) == Orientation::Right) return false;
  return true;
}

bool ConvexPolygon::contains_interior(const Vec2& p) const {
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (orientation_test(vertices_[i], vertices_[(i + 1) % vertices_.size()], p) != Orientation::Left) return false;
  return true;
}

Scalar ConvexPolygon::area2() const {
  Scalar a2 = 0;
  for (size_t i = 0; i < vertices_.size(); ++i) a2 += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  return a2;
}

Vec2 ConvexPolygon::vertex_centroid() const {
  Vec2 c(0, 0);
  for (const Vec2& p : vertices_) c = c + p;
  Scalar inv(1, static_cast<unsigned long>(vertices_.size()));
  return inv * c;
}

ConvexPolygon BoundingBox::polygon() const {
  return ConvexPolygon({Vec2(xmin, ymin), Vec2(xmax, ymin), Vec2(xmax, ymax), Vec2(xmin, ymax)});
}

bool BoundingBox::contains_interior(const Vec2& p) const {
  return xmin < p.x && p.x < xmax && ymin < p.y && p.y < ymax;
}

BoundingBox bounding_box(const PointSet& points) {
  if (points.size() == 0) return {-1, 1, -1, 1};
  Scalar xmin = points[0].x, xmax = xmin, ymin = points[0].y, ymax = ymin;
  for (const Vec2& p : points.points()) {
    if (p.x < xmin) xmin = p.x;
    if (p.x > xmax) xmax = p.x;
    if (p.y < ymin) ymin = p.y;
    if (p.y > ymax) ymax = p.y;
  }
  Scalar spread = max_of(xmax - xmin, ymax - ymin);
  Scalar margin = spread + 1;
  return {xmin - margin, xmax + margin, ymin - margin, ymax + margin};
}

Hull convex_hull(const PointSet& points, std::span<const int> ids) {
  if (ids.size() < 3) throw Error(ErrorCode::TooFewPoints, "convex hull needs at least 3 points");
  std::vector<int> order(ids.begin(), ids.end());
  std::sort(order.begin(), order.end(), [&](int i, int j) { return points[i] < points[j]; });
  // Andrew's monotone chain, strict turns only.
  std::vector<int> chain(2 * order.size());
  size_t k = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    while (k >= 2 && orientation_test(points[chain[k - 2]], points[chain[k - 1]], points[order[i]]) != Orientation::Left)
      --k;
    chain[k++] = order[i];
  }
  for (size_t i = order.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t &&
           orientation_test(points[chain[k - 2]], points[chain[k - 1]], points[order[i - 1]]) != Orientation::Left)
      --k;
    chain[k++] = order[i - 1];
  }
  chain.resize(k - 1);
  Hull h;
  std::vector<Vec2> poly;
  for (int id : chain) poly.push_back(points[id]);
  h.polygon = ConvexPolygon(std::move(poly));
  h.hull_ids = chain;
  std::vector<int> on_hull = chain;
  std::sort(on_hull.begin(), on_hull.end());
  for (int id : ids)
    if (!std::binary_search(on_hull.begin(), on_hull.end(), id)) h.interior_ids.push_back(id);
  std::sort(h.interior_ids.begin(), h.interior_ids.end());
  return h;
}

Hull convex_hull(const PointSet& points) {
  std::vector<int> ids(static_cast<size_t>(points.size()));
  std::iota(ids.begin(), ids.end(), 0);
  return convex_hull(points, ids);
}

PointSet shear(const PointSet& points, const Scalar& k) {
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(points.size()));
  for (const Vec2& p : points.points()) out.emplace_back(p.x + p.y / k, p.y);
  return PointSet(std::move(out));
}

Scalar safe_shear_factor(const PointSet& points) {
  // Need k * (xj - xi) > yi - yj whenever xi < xj, i.e. k > max dy / min dx.
  std::vector<Scalar> xs;
  Scalar ymin = 0, ymax = 0;
  for (int i = 0; i < points.size(); ++i) {
    xs.push_back(points[i].x);
    if (i == 0 || points[i].y < ymin) ymin = points[i].y;
    if (i == 0 || points[i].y > ymax) ymax = points[i].y;
  }
  std::sort(xs.begin(), xs.end());
  std::optional<Scalar> min_dx;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Scalar dx = xs[i + 1] - xs[i];
    if (sgn(dx) > 0 && (!min_dx || dx < *min_dx)) min_dx = dx;
  }
  Scalar k = 2;
  if (!min_dx) return k;
  Scalar bound = (ymax - ymin) / *min_dx;
  while (k <= bound) k *= 2;
  return k;
}

}  // namespace geomatch
