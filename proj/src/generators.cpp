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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "geomatch/algorithms.hpp"
#include "geomatch/error.hpp"
#include "geomatch/oracle.hpp"

namespace geomatch {

namespace {

// Same stream on every platform: only the raw engine output is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  long long below(long long n) { return static_cast<long long>(engine_() % static_cast<std::uint64_t>(n)); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct IPoint {
  long long x = 0;
  long long y = 0;
};

int orient(const IPoint& p, const IPoint& q, const IPoint& r) {
  __int128 d = static_cast<__int128>(q.x - p.x) * (r.y - p.y) - static_cast<__int128>(q.y - p.y) * (r.x - p.x);
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

bool on_closed(const IPoint& p, const IPoint& q, const IPoint& r) {
  return orient(p, q, r) == 0 && std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

// Closed segments meet (touching counts).
bool meet(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_closed(a, b, c) || on_closed(a, b, d) || on_closed(c, d, a) || on_closed(c, d, b);
}

// True when p is collinear with any pair of `pts` (or duplicates one).
bool collinear_with_any(const std::vector<IPoint>& pts, const IPoint& p) {
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].x == p.x && pts[i].y == p.y) return true;
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (orient(pts[i], pts[j], p) == 0) return true;
  }
  return false;
}

Matching to_matching(const std::vector<IPoint>& pts, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Vec2> v;
  for (const IPoint& p : pts) v.emplace_back(static_cast<long>(p.x), static_cast<long>(p.y));
  std::vector<Segment> edges;
  for (auto [a, b] : pairs) edges.emplace_back(a, b);
  PointSetPtr base = make_point_set(std::move(v));
  validate_general_position(*base);
  return Matching(base, std::move(edges));
}

Matching gen_general(int n, Rng& rng) {
  const long long range = 1000000;
  std::vector<IPoint> pts;
  std::set<long long> xs;
  while (static_cast<int>(pts.size()) < 2 * n) {
    IPoint p{rng.below(range + 1), rng.below(range + 1)};
    if (xs.count(p.x) || collinear_with_any(pts, p)) continue;
    xs.insert(p.x);
    pts.push_back(p);
  }
  std::vector<int> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[static_cast<size_t>(rng.below(static_cast<long long>(i)))]);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(order[static_cast<size_t>(2 * i)], order[static_cast<size_t>(2 * i + 1)]);
  auto crosses = [&](std::pair<int, int> s, std::pair<int, int> t) {
    return meet(pts[static_cast<size_t>(s.first)], pts[static_cast<size_t>(s.second)], pts[static_cast<size_t>(t.first)],
                pts[static_cast<size_t>(t.second)]);
  };
  // Each flip strictly shortens the total length, so this terminates.
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < pairs.size(); ++i)
      for (size_t j = i + 1; j < pairs.size(); ++j) {
        if (!crosses(pairs[i], pairs[j])) continue;
        auto [a, b] = pairs[i];
        auto [c, d] = pairs[j];
        std::pair<int, int> s{a, c}, t{b, d};
        if (crosses(s, t)) s = {a, d}, t = {b, c};
        pairs[i] = s, pairs[j] = t;
        changed = true;
      }
  }
  return to_matching(pts, pairs);
}

Matching gen_axis_parallel(int n, Rng& rng) {
  const long long r = 40LL * n + 100;
  std::vector<IPoint> pts;
  std::vector<std::pair<int, int>> pairs;
  std::set<long long> used_x, used_y;
  for (int s = 0; s < n; ++s) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      bool horizontal = rng.below(2) == 0;
      long long x = rng.below(r + 1), y = rng.below(r + 1);
      long long len = 1 + rng.below(std::max<long long>(2, r / 8));
      IPoint a{x, y};
      IPoint b = horizontal ? IPoint{x + len, y} : IPoint{x, y + len};
      if (b.x > r || b.y > r) continue;
      bool fresh = horizontal ? !used_x.count(a.x) && !used_x.count(b.x) && !used_y.count(y)
                              : !used_y.count(a.y) && !used_y.count(b.y) && !used_x.count(x);
      if (!fresh) continue;
      if (collinear_with_any(pts, a) || collinear_with_any(pts, b)) continue;
      bool clash = false;
      for (size_t i = 0; i < pts.size() && !clash; ++i)
        if (orient(pts[i], a, b) == 0) clash = true;
      for (size_t i = 0; i < pairs.size() && !clash; ++i)
        clash = meet(a, b, pts[static_cast<size_t>(pairs[i].first)], pts[static_cast<size_t>(pairs[i].second)]);
      if (clash) continue;
      used_x.insert(a.x), used_x.insert(b.x), used_y.insert(a.y), used_y.insert(b.y);
      int id = static_cast<int>(pts.size());
      pts.push_back(a), pts.push_back(b);
      pairs.emplace_back(id, id + 1);
      placed = true;
    }
    if (!placed)
      throw Error(ErrorCode::GenerationFailed, "could not place axis-parallel segment " + std::to_string(s));
  }
  return to_matching(pts, pairs);
}

bool is_chc(const Matching& m) {
  if (m.base().size() < 3) return true;
  Hull hull = convex_hull(m.base());
  std::vector<bool> on(static_cast<size_t>(m.base().size()), false);
  for (int id : hull.hull_ids) on[static_cast<size_t>(id)] = true;
  for (const Segment& s : m.edges())
    if (!on[static_cast<size_t>(s.a)] && !on[static_cast<size_t>(s.b)]) return false;
  return true;
}

// Units around a circle: a radial segment (one slot), a hull edge (two
// consecutive slots), or a splitter chord over one radial segment.
std::optional<Matching> try_chc(int n, Rng& rng) {
  enum Unit { Radial, HullEdge, Splitter };
  std::vector<Unit> units;
  int remaining = n;
  int slots = 0;
  while (remaining > 0) {
    double u = rng.unit();
    Unit k = u < 0.6 ? Radial : (u < 0.85 || remaining < 2 ? HullEdge : Splitter);
    if (k == HullEdge && remaining < 1) k = Radial;
    units.push_back(k);
    remaining -= k == Splitter ? 2 : 1;
    slots += k == Radial ? 1 : (k == HullEdge ? 2 : 3);
  }
  const double radius = 1e7;
  std::vector<double> angle(static_cast<size_t>(slots));
  for (int i = 0; i < slots; ++i)
    angle[static_cast<size_t>(i)] = 2 * std::numbers::pi * (i + 0.25 + 0.5 * rng.unit()) / slots;
  auto at = [&](double theta, double rad) {
    return IPoint{std::llround(rad * std::cos(theta)), std::llround(rad * std::sin(theta))};
  };
  std::vector<IPoint> pts;
  std::vector<std::pair<int, int>> pairs;
  auto add_pair = [&](IPoint a, IPoint b) {
    int id = static_cast<int>(pts.size());
    pts.push_back(a), pts.push_back(b);
    pairs.emplace_back(id, id + 1);
  };
  int slot = 0;
  for (Unit k : units) {
    double t0 = angle[static_cast<size_t>(slot)];
    if (k == Radial) {
      add_pair(at(t0, radius), at(t0, radius * (0.35 + 0.55 * rng.unit())));
      slot += 1;
    } else if (k == HullEdge) {
      add_pair(at(t0, radius), at(angle[static_cast<size_t>(slot + 1)], radius));
      slot += 2;
    } else {
      double tm = angle[static_cast<size_t>(slot + 1)], t1 = angle[static_cast<size_t>(slot + 2)];
      double mid = (t0 + t1) / 2;
      double chord = radius * std::cos((t1 - t0) / 2) / std::cos(tm - mid);
      add_pair(at(t0, radius), at(t1, radius));
      add_pair(at(tm, radius), at(tm, chord + (radius - chord) * (0.3 + 0.4 * rng.unit())));
      slot += 3;
    }
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<IPoint> others(pts.begin(), pts.begin() + static_cast<long>(i));
    if (collinear_with_any(others, pts[i])) return std::nullopt;
  }
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = i + 1; j < pairs.size(); ++j)
      if (meet(pts[static_cast<size_t>(pairs[i].first)], pts[static_cast<size_t>(pairs[i].second)],
               pts[static_cast<size_t>(pairs[j].first)], pts[static_cast<size_t>(pairs[j].second)]))
        return std::nullopt;
  Matching m = to_matching(pts, pairs);
  if (!is_chc(m)) return std::nullopt;
  return m;
}

Scalar linf(const Vec2& d) {
  Scalar ax = abs(d.x), ay = abs(d.y);
  return ax > ay ? ax : ay;
}

}  // namespace

const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::General: return "general";
    case Flavor::AxisParallel: return "axis-parallel";
    case Flavor::CHC: return "chc";
  }
  return "?";
}

Matching gen_random_matching(int n, std::uint64_t seed, Flavor flavor) {
  if (n < 1) throw Error(ErrorCode::GenerationFailed, "need at least one segment");
  Rng rng(seed);
  switch (flavor) {
    case Flavor::General: return gen_general(n, rng);
    case Flavor::AxisParallel: return gen_axis_parallel(n, rng);
    case Flavor::CHC:
      for (int attempt = 0; attempt < 100; ++attempt)
        if (auto m = try_chc(n, rng)) return *m;
      throw Error(ErrorCode::GenerationFailed, "no convex-hull-connected instance after 100 attempts");
  }
  throw Error(ErrorCode::GenerationFailed, "unknown flavor");
}

Matching gen_parallel_chords(int k, const Scalar& radius) {
  if (k < 1) throw Error(ErrorCode::GenerationFailed, "need at least one chord");
  std::vector<Vec2> pts;
  std::vector<Segment> edges;
  for (int i = 0; i < k; ++i) {
    Scalar t = Scalar(2 * i + 1, 2 * k) - Scalar(1, 2) + Scalar(1, 7 * k);
    t.canonicalize();
    Scalar den = 1 + t * t;
    Scalar x = radius * (1 - t * t) / den, y = radius * 2 * t / den;
    pts.emplace_back(Scalar(-x), y);
    pts.emplace_back(x, y);
    edges.emplace_back(2 * i, 2 * i + 1);
  }
  PointSetPtr base = make_point_set(std::move(pts));
  validate_general_position(*base);
  return Matching(base, std::move(edges));
}

Matching gen_general_odd(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::GenerationFailed, "need at least one black segment");
  Matching black = gen_random_matching(n, seed, Flavor::General);
  Region region = Region::box(bounding_box(black.base()));
  Extension ext = extend(black, region, default_directives(black, region));
  const std::vector<Ray>& rays = ext.geometry.rays;

  Scalar delta = -1;
  auto shrink_to = [&](const Scalar& d) {
    if (delta < 0 || d < delta) delta = d;
  };
  for (const Ray& r : rays) shrink_to(linf(r.terminus - r.origin));
  const PointSet& bp = black.base();
  for (int i = 0; i < bp.size(); ++i)
    for (int j = i + 1; j < bp.size(); ++j) shrink_to(linf(bp[i] - bp[j]));
  delta /= 16;

  const std::vector<Vec2> directions = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}, {3, 1}, {1, 3}, {3, -1}, {1, -3}};
  for (int attempt = 0; attempt < 40; ++attempt, delta /= 2) {
    std::vector<Vec2> pts(static_cast<size_t>(2 * n));
    for (const Ray& r : rays) {
      Vec2 d = r.terminus - r.origin;
      pts[static_cast<size_t>(r.endpoint)] = r.terminus - (delta / linf(d)) * d;
    }
    std::vector<Segment> edges = black.edges();
    bool ok = true;
    for (const ConvexPolygon& cell : ext.subdivision.cells) {
      Vec2 c = cell.vertex_centroid();
      bool placed = false;
      for (const Vec2& dir : directions) {
        Vec2 h = (delta / 8 / linf(dir)) * dir;
        Vec2 a = c - h, b = c + h;
        if (!cell.contains_interior(a) || !cell.contains_interior(b)) continue;
        std::vector<Vec2> trial = pts;
        trial.push_back(a), trial.push_back(b);
        try {
          validate_general_position(PointSet(trial));
        } catch (const Error&) {
          continue;
        }
        int id = static_cast<int>(pts.size());
        pts = std::move(trial);
        edges.emplace_back(id, id + 1);
        placed = true;
        break;
      }
      if (!placed) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    PointSetPtr base = make_point_set(std::move(pts));
    Matching m;
    try {
      m = Matching(base, edges);
    } catch (const Error&) {
      continue;
    }
    VisibilityGraph vis = visibility_graph(m, true);
    bool independent = true;
    for (int u = 2 * n; u < base->size() && independent; ++u)
      for (int v = u + 1; v < base->size(); ++v)
        if (vis.has_edge(u, v)) {
          independent = false;
          break;
        }
    if (independent) return m;
  }
  throw Error(ErrorCode::GenerationFailed, "red segments stay visible to each other after 40 halvings");
}

}  // namespace geomatch
