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

#include "geomatch/matching_engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "geomatch/error.hpp"

namespace geomatch {

namespace {

// Cyclic (counterclockwise) order of points in convex position, rotated to
// start at the smallest id.
std::vector<int> convex_cycle(const PointSet& ps, const std::vector<int>& points) {
  if (points.size() % 2 != 0)
    throw Error(ErrorCode::OddCount, "convex matching needs an even number of points, got " + std::to_string(points.size()));
  std::vector<int> cyc;
  if (points.size() < 3) {
    cyc = points;
  } else {
    Hull h = convex_hull(ps, points);
    if (!h.interior_ids.empty())
      throw Error(ErrorCode::NotConvexPosition, "points are not in convex position", h.interior_ids);
    cyc = h.hull_ids;
  }
  if (!cyc.empty()) std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
  return cyc;
}

std::set<Segment> boundary_set(const std::vector<int>& cyc, const std::vector<Segment>& boundary) {
  std::set<Segment> hull_edges;
  for (size_t i = 0; i < cyc.size() && cyc.size() >= 2; ++i) hull_edges.emplace(cyc[i], cyc[(i + 1) % cyc.size()]);
  std::set<Segment> out;
  for (const Segment& s : boundary) {
    if (!hull_edges.count(s))
      throw Error(ErrorCode::NotConvexPosition, "boundary edge does not join hull-consecutive points", {s.a, s.b});
    out.insert(s);
  }
  return out;
}

std::vector<Segment> disjoint_pairs(std::vector<int> cyc, const std::set<Segment>& mb) {
  std::vector<Segment> out;
  while (cyc.size() > 4) {
    std::optional<Segment> best;
    size_t at = 0;
    for (size_t i = 0; i < cyc.size(); ++i) {
      Segment s(cyc[i], cyc[(i + 1) % cyc.size()]);
      if (mb.count(s)) continue;
      if (!best || s < *best) best = s, at = i;
    }
    check_internal(best.has_value(), "every hull edge of a large convex set is matched");
    out.push_back(*best);
    size_t j = (at + 1) % cyc.size();
    cyc.erase(cyc.begin() + static_cast<long>(std::max(at, j)));
    cyc.erase(cyc.begin() + static_cast<long>(std::min(at, j)));
  }
  if (cyc.size() == 4) {
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    Segment a1(cyc[0], cyc[1]), a2(cyc[2], cyc[3]);
    Segment b1(cyc[1], cyc[2]), b2(cyc[3], cyc[0]);
    if (!mb.count(a1) && !mb.count(a2)) {
      out.push_back(a1), out.push_back(a2);
    } else {
      check_internal(!mb.count(b1) && !mb.count(b2), "a boundary matching cannot block both quadrilateral matchings");
      out.push_back(b1), out.push_back(b2);
    }
  } else if (cyc.size() == 2) {
    Segment s(cyc[0], cyc[1]);
    if (mb.count(s))
      throw Error(ErrorCode::TwoPointsAlreadyMatched, "the only two points are already matched", {s.a, s.b});
    out.push_back(s);
  }
  return out;
}

}  // namespace

Matching convex_disjoint_matching(const PointSetPtr& base, const std::vector<int>& points,
                                  const std::vector<Segment>& boundary) {
  std::vector<int> cyc = convex_cycle(*base, points);
  std::set<Segment> mb = boundary_set(cyc, boundary);
  return Matching::trusted(base, disjoint_pairs(std::move(cyc), mb));
}

Matching convex_compatible_matching(const PointSetPtr& base, const std::vector<int>& points,
                                    const std::vector<Segment>& boundary) {
  std::vector<int> cyc = convex_cycle(*base, points);
  std::set<Segment> mb = boundary_set(cyc, boundary);
  if (cyc.size() == 2 && mb.count(Segment(cyc[0], cyc[1])))
    return Matching::trusted(base, {Segment(cyc[0], cyc[1])});
  return Matching::trusted(base, disjoint_pairs(std::move(cyc), mb));
}

// ---------------------------------------------------------------------------
// Constrained search

namespace {

class ConstrainedSearch {
 public:
  explicit ConstrainedSearch(const ConstrainedMatchProblem& prob) : prob_(prob), ps_(*prob.base) {
    k_ = static_cast<int>(prob.points.size());
    if (k_ > 64) throw Error(ErrorCode::TooLarge, "constrained matching supports at most 64 points");
    std::set<Segment> forbidden(prob.forbidden.begin(), prob.forbidden.end());
    edge_id_.assign(static_cast<size_t>(k_ * k_), -1);
    cand_.resize(static_cast<size_t>(k_));
    for (int i = 0; i < k_; ++i)
      for (int j = i + 1; j < k_; ++j) {
        int a = prob.points[static_cast<size_t>(i)], b = prob.points[static_cast<size_t>(j)];
        if (forbidden.count(Segment(a, b)) || !allowed(ps_[a], ps_[b])) continue;
        int e = static_cast<int>(ends_.size());
        ends_.emplace_back(i, j);
        edge_id_[static_cast<size_t>(i * k_ + j)] = edge_id_[static_cast<size_t>(j * k_ + i)] = e;
        cand_[static_cast<size_t>(i)].push_back(j);
        cand_[static_cast<size_t>(j)].push_back(i);
      }
    for (int i = 0; i < k_; ++i) {
      auto& c = cand_[static_cast<size_t>(i)];
      const Vec2& p = ps_[prob.points[static_cast<size_t>(i)]];
      std::vector<std::pair<Scalar, int>> keyed;
      for (int j : c) {
        Vec2 d = ps_[prob.points[static_cast<size_t>(j)]] - p;
        keyed.emplace_back(dot(d, d), j);
      }
      std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return prob.points[static_cast<size_t>(x.second)] < prob.points[static_cast<size_t>(y.second)];
      });
      c.clear();
      for (auto& kv : keyed) c.push_back(kv.second);
    }
    cross_.assign(ends_.size() * ends_.size(), -1);
  }

  std::optional<Matching> run(SearchStats* stats) {
    std::optional<Matching> out;
    if (k_ % 2 == 0 && solve()) {
      std::vector<Segment> edges;
      for (int e : chosen_) {
        auto [i, j] = ends_[static_cast<size_t>(e)];
        edges.emplace_back(prob_.points[static_cast<size_t>(i)], prob_.points[static_cast<size_t>(j)]);
      }
      out = Matching::trusted(prob_.base, std::move(edges));
    }
    if (stats) stats->nodes += nodes_;
    return out;
  }

 private:
  bool allowed(const Vec2& a, const Vec2& b) const {
    if (prob_.region && !(prob_.region->contains(a) && prob_.region->contains(b))) return false;
    for (const auto& [p, q] : prob_.blockers)
      if (segments_cross(a, b, p, q)) return false;
    return true;
  }

  bool crosses(int e, int f) {
    int8_t& c = cross_[static_cast<size_t>(e) * ends_.size() + static_cast<size_t>(f)];
    if (c < 0) {
      auto [a, b] = ends_[static_cast<size_t>(e)];
      auto [x, y] = ends_[static_cast<size_t>(f)];
      const auto& pts = prob_.points;
      c = segments_cross(ps_[pts[static_cast<size_t>(a)]], ps_[pts[static_cast<size_t>(b)]],
                         ps_[pts[static_cast<size_t>(x)]], ps_[pts[static_cast<size_t>(y)]]);
      cross_[static_cast<size_t>(f) * ends_.size() + static_cast<size_t>(e)] = c;
    }
    return c != 0;
  }

  bool usable(int e) {
    for (int f : chosen_)
      if (crosses(e, f)) return false;
    return true;
  }

  bool free(int i) const { return !((used_ >> i) & 1U); }

  // Most constrained free point, or -1 when none remain; -2 signals a dead
  // end (a free point without options or an odd group of mutually reachable
  // free points).
  int pick() {
    int best = -1;
    size_t best_count = SIZE_MAX;
    std::vector<int> parent(static_cast<size_t>(k_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      return x;
    };
    for (int i = 0; i < k_; ++i) {
      if (!free(i)) continue;
      size_t count = 0;
      for (int j : cand_[static_cast<size_t>(i)]) {
        if (!free(j) || !usable(edge_id_[static_cast<size_t>(i * k_ + j)])) continue;
        ++count;
        parent[static_cast<size_t>(find(i))] = find(j);
      }
      if (count == 0) return -2;
      if (count < best_count) best_count = count, best = i;
    }
    if (best >= 0) {
      std::vector<int> size(static_cast<size_t>(k_), 0);
      for (int i = 0; i < k_; ++i)
        if (free(i)) ++size[static_cast<size_t>(find(i))];
      for (int s : size)
        if (s % 2 != 0) return -2;
    }
    return best;
  }

  bool solve() {
    ++nodes_;
    int i = pick();
    if (i == -1) return true;
    if (i == -2) return false;
    for (int j : cand_[static_cast<size_t>(i)]) {
      if (!free(j)) continue;
      int e = edge_id_[static_cast<size_t>(i * k_ + j)];
      if (!usable(e)) continue;
      used_ |= (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
      chosen_.push_back(e);
      if (solve()) return true;
      chosen_.pop_back();
      used_ &= ~((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
    }
    return false;
  }

  const ConstrainedMatchProblem& prob_;
  const PointSet& ps_;
  int k_ = 0;
  std::vector<std::pair<int, int>> ends_;  // local endpoints per candidate edge
  std::vector<int> edge_id_;
  std::vector<std::vector<int>> cand_;
  std::vector<int8_t> cross_;
  std::vector<int> chosen_;
  std::uint64_t used_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Matching> constrained_matching(const ConstrainedMatchProblem& prob, SearchStats* stats) {
  if (prob.points.size() % 2 != 0) return std::nullopt;
  return ConstrainedSearch(prob).run(stats);
}

// ---------------------------------------------------------------------------
// Assembly

CellAssignment assign_cells(const Matching& m, const DualMultigraph& g, const EvenOrientation& o) {
  check_internal(o.head.size() == g.edges.size(), "orientation does not match the dual");
  CellAssignment a;
  a.cell_of_vertex.assign(static_cast<size_t>(m.base().size()), -1);
  a.cell_points.resize(static_cast<size_t>(g.num_cells));
  for (size_t e = 0; e < g.edges.size(); ++e) {
    int head = o.head[e];
    if (head < 0) continue;
    const DualEdge& d = g.edges[e];
    check_internal(head == d.u || head == d.v, "orientation head is not an endpoint of its edge");
    a.cell_of_vertex[static_cast<size_t>(d.vertex)] = head;
    a.cell_points[static_cast<size_t>(head)].push_back(d.vertex);
  }
  for (auto& pts : a.cell_points) std::sort(pts.begin(), pts.end());
  return a;
}

Matching assemble_from_orientation(const Matching& m, const ConvexSubdivision& sub, const DualMultigraph& g,
                                   const EvenOrientation& o, bool require_disjoint) {
  CellAssignment a = assign_cells(m, g, o);
  check_internal(static_cast<int>(sub.cells.size()) == g.num_cells, "dual does not match the subdivision");
  std::vector<Segment> edges;
  for (size_t y = 0; y < a.cell_points.size(); ++y) {
    const std::vector<int>& s = a.cell_points[y];
    if (s.empty()) continue;
    std::vector<Segment> inside;
    for (int v : s) {
      int w = m.partner(v);
      if (v < w && std::binary_search(s.begin(), s.end(), w)) inside.emplace_back(v, w);
    }
    if (require_disjoint && s.size() == 2 && inside.size() == 1)
      throw Error(ErrorCode::SameSegmentIndegreeTwo,
                  "cell " + std::to_string(y) + " receives both endpoints of one segment", {s[0], s[1]});
    Matching part = require_disjoint ? convex_disjoint_matching(m.base_ptr(), s, inside)
                                     : convex_compatible_matching(m.base_ptr(), s, inside);
    edges.insert(edges.end(), part.edges().begin(), part.edges().end());
  }
  return Matching::trusted(m.base_ptr(), std::move(edges));
}

}  // namespace geomatch
