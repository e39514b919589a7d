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

// Exact planar primitives: rational points, segments, point sets and
// non-crossing matchings, together with the validity predicates used by every
// other module. Nothing in here ever rounds.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geomatch/error.hpp"

namespace geomatch {

using Scalar = mpq_class;

struct Vec2 {
  Scalar x;
  Scalar y;

  Vec2() = default;
  Vec2(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec2(long x_, long y_) : x(x_), y(y_) {}

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const Scalar& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  // Lexicographic (x, then y).
  friend bool operator<(const Vec2& a, const Vec2& b) {
    int c = cmp(a.x, b.x);
    return c < 0 || (c == 0 && a.y < b.y);
  }
};

Scalar cross(const Vec2& a, const Vec2& b);
Scalar dot(const Vec2& a, const Vec2& b);
std::string to_string(const Vec2& p);

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };

// Sign of det(q - p, r - p).
Orientation orientation_test(const Vec2& p, const Vec2& q, const Vec2& r);

// True iff r lies on the closed segment pq (r may equal p or q).
bool on_segment(const Vec2& p, const Vec2& q, const Vec2& r);

// True iff the closed segments ab and cd share a point that is not a common
// endpoint. Collinear overlaps of positive length count as crossings.
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// Intersection of the supporting lines of ab and cd; nullopt when parallel.
std::optional<Vec2> line_intersection(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// An unordered pair of point ids stored as (min, max).
struct Segment {
  int a = 0;
  int b = 0;

  Segment() = default;
  Segment(int u, int v);

  int other(int id) const { return id == a ? b : a; }
  bool has(int id) const { return id == a || id == b; }
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Vec2> points) : points_(std::move(points)) {}

  int size() const { return static_cast<int>(points_.size()); }
  const Vec2& operator[](int id) const { return points_[static_cast<size_t>(id)]; }
  const std::vector<Vec2>& points() const { return points_; }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  std::vector<Vec2> points_;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

inline PointSetPtr make_point_set(std::vector<Vec2> points) {
  return std::make_shared<const PointSet>(std::move(points));
}

// Throws CollinearTriple(i,j,k) or DuplicatePoint(i,j) on the first violation.
void validate_general_position(const PointSet& points);
// Same check restricted to the listed ids.
void validate_general_position(const PointSet& points, std::span<const int> ids);

// A non-crossing geometric matching over a shared point set. Edges are kept
// sorted, so two matchings over one base compare equal iff their edge sets do.
class Matching {
 public:
  Matching() = default;

  // Validates degree <= 1 and pairwise non-crossing edges.
  Matching(PointSetPtr base, std::vector<Segment> edges);

  // Skips the O(n^2) crossing check; degree and id checks still run. For
  // constructions that are non-crossing by construction and verified later.
  static Matching trusted(PointSetPtr base, std::vector<Segment> edges);

  const PointSetPtr& base_ptr() const { return base_; }
  const PointSet& base() const { return *base_; }
  const std::vector<Segment>& edges() const { return edges_; }
  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return edges_.empty(); }

  // Matched partner of `id`, or -1.
  int partner(int id) const { return partner_[static_cast<size_t>(id)]; }
  bool covers(int id) const { return partner(id) >= 0; }
  bool contains(const Segment& s) const;
  // Every point of the base is matched.
  bool is_perfect() const;
  // Sorted ids covered by an edge.
  std::vector<int> vertices() const;

  const Vec2& point(int id) const { return (*base_)[id]; }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.edges_ == b.edges_ && same_base(a, b);
  }

  static bool same_base(const Matching& a, const Matching& b);

 private:
  void index_partners();

  PointSetPtr base_;
  std::vector<Segment> edges_;
  std::vector<int> partner_;
};

// Union of edges is pairwise non-crossing (shared edges allowed). Throws
// MismatchedVertexSet when the bases differ.
bool compatible(const Matching& m, const Matching& m2);
// Edge sets are disjoint. Throws MismatchedVertexSet when the bases differ.
bool disjoint(const Matching& m, const Matching& m2);

// Union of two matchings over one base that cover disjoint vertex sets.
Matching merge(const Matching& m, const Matching& m2);

// Counterclockwise, strictly convex polygon.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  // Drops repeated and collinear vertices, then validates CCW strict
  // convexity with positive area; throws NotConvex otherwise.
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  // Closed containment.
  bool contains(const Vec2& p) const;
  // Strict interior.
  bool contains_interior(const Vec2& p) const;
  // Twice the signed area.
  Scalar area2() const;
  Vec2 vertex_centroid() const;

 private:
  std::vector<Vec2> vertices_;
};

struct BoundingBox {
  Scalar xmin, xmax, ymin, ymax;

  ConvexPolygon polygon() const;
  bool contains_interior(const Vec2& p) const;
};

// Box strictly containing all points, with margin 1 + max(x spread, y spread).
BoundingBox bounding_box(const PointSet& points);

struct Hull {
  ConvexPolygon polygon;
  std::vector<int> hull_ids;      // counterclockwise, starting at lowest (x, y)
  std::vector<int> interior_ids;  // sorted
};

// Requires at least 3 points in general position (TooFewPoints otherwise).
Hull convex_hull(const PointSet& points);
Hull convex_hull(const PointSet& points, std::span<const int> ids);

// x' = x + y / k. Preserves every strict x-order when k is large enough and
// separates equal x-coordinates by y.
PointSet shear(const PointSet& points, const Scalar& k);
// Smallest power of two for which the shear above preserves every strict
// x-order of `points`.
Scalar safe_shear_factor(const PointSet& points);

}  // namespace geomatch
