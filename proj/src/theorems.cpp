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
#include <map>
#include <numeric>
#include <string>

#include "geomatch/algorithms.hpp"
#include "geomatch/error.hpp"

namespace geomatch {

namespace {

void require_perfect(const Matching& m) {
  if (!m.is_perfect()) throw Error(ErrorCode::NotPerfect, "matching is not perfect");
}

void require_even(const Matching& m, ErrorCode code) {
  if (m.size() % 2 != 0)
    throw Error(code, "matching has an odd number of segments (" + std::to_string(m.size()) + ")");
}

void require_no_vertical(const Matching& m) {
  for (const Segment& s : m.edges())
    if (m.point(s.a).x == m.point(s.b).x)
      throw Error(ErrorCode::VerticalSegment, "segment " + std::to_string(s.a) + "-" + std::to_string(s.b) + " is vertical",
                  {s.a, s.b});
}

int left_end(const Matching& m, const Segment& s) { return m.point(s.a).x < m.point(s.b).x ? s.a : s.b; }

ColoredDual colored(const Matching& m, Extension ext, EdgeColor low, EdgeColor high) {
  ColoredDual cd{std::move(ext), {}};
  cd.dual = dual_multigraph(cd.extension.subdivision, m);
  for (DualEdge& e : cd.dual.edges) {
    bool is_low = e.role == EndpointRole::LeftEnd || e.role == EndpointRole::BottomEnd;
    e.color = is_low ? low : high;
  }
  return cd;
}

EdgePartition two_color_partition(const ColoredDual& cd, EdgeColor first) {
  EdgePartition p;
  for (const DualEdge& e : cd.dual.edges) p.part.push_back(e.color == first ? Part::First : Part::Second);
  return p;
}

// Union-find with an undo log, for the two-trees partition search.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(int n) : parent_(static_cast<size_t>(n)), size_(static_cast<size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) const {
    while (parent_[static_cast<size_t>(x)] != x) x = parent_[static_cast<size_t>(x)];
    return x;
  }
  // False (and nothing recorded) when x and y are already joined.
  bool unite(int x, int y) {
    x = find(x), y = find(y);
    if (x == y) return false;
    if (size_[static_cast<size_t>(x)] < size_[static_cast<size_t>(y)]) std::swap(x, y);
    parent_[static_cast<size_t>(y)] = x;
    size_[static_cast<size_t>(x)] += size_[static_cast<size_t>(y)];
    log_.push_back(y);
    return true;
  }
  void undo() {
    int y = log_.back();
    log_.pop_back();
    int x = parent_[static_cast<size_t>(y)];
    size_[static_cast<size_t>(x)] -= size_[static_cast<size_t>(y)];
    parent_[static_cast<size_t>(y)] = y;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> log_;
};

}  // namespace

std::vector<int> ColoredDual::edges_of(EdgeColor c) const {
  std::vector<int> out;
  for (size_t i = 0; i < dual.edges.size(); ++i)
    if (dual.edges[i].color == c) out.push_back(static_cast<int>(i));
  return out;
}

Multigraph ColoredDual::subgraph(EdgeColor c) const { return dual.graph().edge_subgraph(edges_of(c)); }

// ---------------------------------------------------------------------------
// Axis-parallel matchings

ColoredDual hv_two_trees(const Matching& m) {
  require_perfect(m);
  std::vector<Segment> horizontal, vertical;
  for (const Segment& s : m.edges()) {
    if (m.point(s.a).y == m.point(s.b).y)
      horizontal.push_back(s);
    else if (m.point(s.a).x == m.point(s.b).x)
      vertical.push_back(s);
    else
      throw Error(ErrorCode::NotAxisParallel,
                  "segment " + std::to_string(s.a) + "-" + std::to_string(s.b) + " is not axis-parallel", {s.a, s.b});
  }
  std::vector<ExtensionDirective> dirs;
  for (const Segment& s : horizontal) dirs.push_back(ExtensionDirective::both(s, static_cast<int>(dirs.size())));
  for (const Segment& s : vertical) dirs.push_back(ExtensionDirective::both(s, static_cast<int>(dirs.size())));
  Region region = Region::box(bounding_box(m.base()));
  ColoredDual cd = colored(m, extend(m, region, dirs), EdgeColor::Red, EdgeColor::Green);
  check_internal(is_spanning_tree(cd.subgraph(EdgeColor::Red)), "red edges do not form a spanning tree");
  check_internal(is_spanning_tree(cd.subgraph(EdgeColor::Green)), "green edges do not form a spanning tree");
  return cd;
}

HvResult hv_disjoint_matching(const Matching& m) {
  ColoredDual cd = hv_two_trees(m);
  require_even(m, ErrorCode::OddMatching);
  EvenOrientation o = orientation_from_partition(cd.dual.graph(), two_color_partition(cd, EdgeColor::Red));
  Matching out = assemble_from_orientation(m, cd.extension.subdivision, cd.dual, o, true);
  return HvResult{std::move(cd), std::move(o), std::move(out)};
}

// ---------------------------------------------------------------------------
// Convex-hull-connected matchings

namespace {

std::vector<Segment> chc_solve(const Matching& m, const std::vector<Segment>& segs) {
  if (segs.empty()) return {};
  const PointSet& ps = m.base();
  std::vector<int> pts;
  for (const Segment& s : segs) pts.push_back(s.a), pts.push_back(s.b);
  Hull hull = convex_hull(ps, pts);
  const std::vector<int>& cyc = hull.hull_ids;
  std::map<int, int> pos;
  for (size_t i = 0; i < cyc.size(); ++i) pos[cyc[i]] = static_cast<int>(i);
  const int h = static_cast<int>(cyc.size());
  auto consecutive = [&](int a, int b) {
    int d = (pos.at(a) - pos.at(b) + h) % h;
    return d == 1 || d == h - 1;
  };

  for (const Segment& s : segs) {
    if (!pos.count(s.a) || !pos.count(s.b) || consecutive(s.a, s.b)) continue;
    // Splitter: recurse on the two sides, s joining the odd one.
    std::vector<Segment> left, right;
    for (const Segment& t : segs) {
      if (t == s) continue;
      (orientation_test(ps[s.a], ps[s.b], ps[t.a]) == Orientation::Left ? left : right).push_back(t);
    }
    (left.size() % 2 != 0 ? left : right).push_back(s);
    check_internal(left.size() % 2 == 0 && right.size() % 2 == 0, "splitter sides are not both even");
    std::vector<Segment> out = chc_solve(m, left);
    std::vector<Segment> more = chc_solve(m, right);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  }

  // No splitter: alternate gaps, then match the uncovered endpoints.
  std::vector<Segment> gaps;
  for (int i = 0; i < h; ++i) {
    Segment e(cyc[static_cast<size_t>(i)], cyc[static_cast<size_t>((i + 1) % h)]);
    if (m.partner(e.a) != e.b) gaps.push_back(e);
  }
  check_internal(gaps.size() % 2 == 0, "odd number of gaps without a splitter");
  std::vector<Segment> b0, b1;
  for (size_t i = 0; i < gaps.size(); ++i) (i % 2 == 0 ? b0 : b1).push_back(gaps[i]);
  const std::vector<Segment>& b = *std::min_element(b0.begin(), b0.end()) < *std::min_element(b1.begin(), b1.end()) ? b0 : b1;

  std::vector<bool> covered(static_cast<size_t>(ps.size()), false);
  for (const Segment& g : b) covered[static_cast<size_t>(g.a)] = covered[static_cast<size_t>(g.b)] = true;
  ConstrainedMatchProblem prob;
  prob.base = m.base_ptr();
  for (const Segment& s : segs) {
    bool ca = covered[static_cast<size_t>(s.a)], cb = covered[static_cast<size_t>(s.b)];
    check_internal(ca != cb, "alternate gaps do not cover exactly one endpoint per segment");
    prob.points.push_back(ca ? s.b : s.a);
    prob.blockers.emplace_back(ps[s.a], ps[s.b]);
  }
  for (const Segment& g : b) prob.blockers.emplace_back(ps[g.a], ps[g.b]);
  std::sort(prob.points.begin(), prob.points.end());
  auto q = constrained_matching(prob);
  check_internal(q.has_value(), "no matching of the uncovered endpoints inside the hull polygon");
  std::vector<Segment> out = b;
  out.insert(out.end(), q->edges().begin(), q->edges().end());
  return out;
}

}  // namespace

Matching chc_disjoint_matching(const Matching& m) {
  require_perfect(m);
  std::vector<bool> on_hull(static_cast<size_t>(m.base().size()), m.base().size() < 3);
  if (m.base().size() >= 3)
    for (int id : convex_hull(m.base()).hull_ids) on_hull[static_cast<size_t>(id)] = true;
  for (const Segment& s : m.edges())
    if (!on_hull[static_cast<size_t>(s.a)] && !on_hull[static_cast<size_t>(s.b)])
      throw Error(ErrorCode::NotCHC,
                  "segment " + std::to_string(s.a) + "-" + std::to_string(s.b) + " has no endpoint on the convex hull",
                  {s.a, s.b});
  require_even(m, ErrorCode::OddMatching);
  return Matching::trusted(m.base_ptr(), chc_solve(m, m.edges()));
}

// ---------------------------------------------------------------------------
// 4/5 partial matching

FourFifthsReport four_fifths_matching(const Matching& m) {
  require_perfect(m);
  require_even(m, ErrorCode::OddN);
  require_no_vertical(m);
  const int n = m.size();
  std::vector<ExtensionDirective> dirs;
  for (const Segment& s : m.edges()) dirs.push_back(ExtensionDirective::from(s, s.other(left_end(m, s)), static_cast<int>(dirs.size())));
  for (const Segment& s : m.edges()) dirs.push_back(ExtensionDirective::from(s, left_end(m, s), static_cast<int>(dirs.size())));
  Region region = Region::box(bounding_box(m.base()));
  FourFifthsReport rep;
  rep.n = n;
  rep.guarantee = (4 * n + 3) / 5;
  rep.dual = colored(m, extend(m, region, dirs), EdgeColor::Blue, EdgeColor::Red);
  const ColoredDual& cd = rep.dual;
  check_internal(is_spanning_tree(cd.subgraph(EdgeColor::Blue)), "blue edges do not form a spanning tree");

  std::vector<int> red = cd.edges_of(EdgeColor::Red);
  Multigraph r = cd.subgraph(EdgeColor::Red);
  rep.odd_components = count_odd_components(r);
  PruneResult pruned = prune_odd_components(r);
  for (int e : pruned.removed_edges) rep.removed_edges.push_back(red[static_cast<size_t>(e)]);
  std::sort(rep.removed_edges.begin(), rep.removed_edges.end());

  std::vector<int> kept;
  for (size_t e = 0; e < cd.dual.edges.size(); ++e)
    if (!std::binary_search(rep.removed_edges.begin(), rep.removed_edges.end(), static_cast<int>(e)))
      kept.push_back(static_cast<int>(e));
  Multigraph sub = cd.dual.graph().edge_subgraph(kept);
  EdgePartition part;
  for (int e : kept) part.part.push_back(cd.dual.edges[static_cast<size_t>(e)].color == EdgeColor::Blue ? Part::First : Part::Second);
  EvenOrientation partial = orientation_from_partition(sub, part);
  EvenOrientation full;
  full.head.assign(cd.dual.edges.size(), -1);
  for (size_t i = 0; i < kept.size(); ++i) full.head[static_cast<size_t>(kept[i])] = partial.head[i];

  rep.matching = assemble_from_orientation(m, cd.extension.subdivision, cd.dual, full, true);
  rep.achieved = rep.matching.size();
  check_internal(2 * rep.achieved == 2 * n - rep.odd_components, "partial matching size differs from (2n - f(R)) / 2");
  return rep;
}

// ---------------------------------------------------------------------------
// Left and right endpoint matchings

namespace {

// Perfect matching of one endpoint class, blocked by M and by rays shot from
// the other endpoint class away from the segment.
Matching endpoint_class_matching(const Matching& m, bool right_class) {
  std::vector<ExtensionDirective> dirs;
  ConstrainedMatchProblem prob;
  prob.base = m.base_ptr();
  for (const Segment& s : m.edges()) {
    int l = left_end(m, s), r = s.other(l);
    dirs.push_back(ExtensionDirective::from(s, right_class ? l : r, static_cast<int>(dirs.size())));
    prob.points.push_back(right_class ? r : l);
    prob.blockers.emplace_back(m.point(s.a), m.point(s.b));
  }
  ExtensionGeometry g = shoot_rays(m, Region::box(bounding_box(m.base())), dirs);
  for (const Ray& ray : g.rays) prob.blockers.emplace_back(ray.origin, ray.terminus);
  std::sort(prob.points.begin(), prob.points.end());
  auto out = constrained_matching(prob);
  check_internal(out.has_value(), "no endpoint matching avoids the segments and their rays");
  return *out;
}

}  // namespace

CrossingsResult crossings_matchings(const Matching& m) {
  require_perfect(m);
  require_even(m, ErrorCode::OddMatching);
  require_no_vertical(m);
  return CrossingsResult{endpoint_class_matching(m, false), endpoint_class_matching(m, true)};
}

// ---------------------------------------------------------------------------
// Two-trees search

namespace {

struct PartitionSearch {
  const DualMultigraph& g;
  std::vector<std::pair<int, int>> pairs;  // per segment: dual edges through its two endpoints
  RollbackUnionFind t1, t2;
  std::vector<int> first_of_pair;  // dual edge assigned to the first tree
  std::uint64_t nodes = 0;

  PartitionSearch(const DualMultigraph& dual, const Matching& m)
      : g(dual), t1(dual.num_cells), t2(dual.num_cells) {
    for (const Segment& s : m.edges())
      pairs.emplace_back(dual.edge_of_vertex[static_cast<size_t>(s.a)], dual.edge_of_vertex[static_cast<size_t>(s.b)]);
    first_of_pair.assign(pairs.size(), -1);
  }

  bool run(size_t i) {
    ++nodes;
    if (i == pairs.size()) return true;
    for (int flip = 0; flip < 2; ++flip) {
      int a = flip ? pairs[i].second : pairs[i].first;
      int b = flip ? pairs[i].first : pairs[i].second;
      const DualEdge& ea = g.edges[static_cast<size_t>(a)];
      const DualEdge& eb = g.edges[static_cast<size_t>(b)];
      if (!t1.unite(ea.u, ea.v)) continue;
      if (!t2.unite(eb.u, eb.v)) {
        t1.undo();
        continue;
      }
      first_of_pair[i] = a;
      if (run(i + 1)) return true;
      t2.undo();
      t1.undo();
    }
    return false;
  }
};

}  // namespace

TwoTreesResult two_trees_search(const Matching& m, int max_orders) {
  require_perfect(m);
  const std::vector<Segment>& segs = m.edges();
  std::vector<int> identity(segs.size());
  std::iota(identity.begin(), identity.end(), 0);

  std::vector<int> first = identity;
  bool axis_parallel = true;
  for (const Segment& s : segs) axis_parallel = axis_parallel && (m.point(s.a).x == m.point(s.b).x || m.point(s.a).y == m.point(s.b).y);
  if (axis_parallel)
    std::stable_partition(first.begin(), first.end(), [&](int i) { return m.point(segs[static_cast<size_t>(i)].a).y == m.point(segs[static_cast<size_t>(i)].b).y; });

  Region region = Region::box(bounding_box(m.base()));
  TwoTreesResult res;
  std::vector<int> perm = identity;
  bool more = true;
  for (int attempt = 0; attempt < max_orders && (attempt == 0 || more); ++attempt) {
    std::vector<int> order;
    if (attempt == 0) {
      order = first;
    } else {
      order = perm;
      more = std::next_permutation(perm.begin(), perm.end());
      if (order == first) {
        if (!more) break;
        order = perm;
        more = std::next_permutation(perm.begin(), perm.end());
      }
    }
    if (attempt == 0 && first == identity) more = std::next_permutation(perm.begin(), perm.end());
    ++res.orders_tried;

    std::vector<ExtensionDirective> dirs;
    for (int i : order) dirs.push_back(ExtensionDirective::both(segs[static_cast<size_t>(i)], static_cast<int>(dirs.size())));
    Extension ext = extend(m, region, dirs);
    DualMultigraph dual = dual_multigraph(ext.subdivision, m);
    PartitionSearch search(dual, m);
    bool ok = search.run(0);
    res.partition_nodes += search.nodes;
    if (!ok) continue;

    res.found = true;
    res.directives = dirs;
    for (DualEdge& e : dual.edges) e.color = EdgeColor::Green;
    for (int e : search.first_of_pair) dual.edges[static_cast<size_t>(e)].color = EdgeColor::Red;
    res.dual = ColoredDual{std::move(ext), std::move(dual)};
    if (m.size() % 2 == 0) {
      const ColoredDual& cd = *res.dual;
      EvenOrientation o = orientation_from_partition(cd.dual.graph(), two_color_partition(cd, EdgeColor::Red));
      res.matching = assemble_from_orientation(m, cd.extension.subdivision, cd.dual, o, true);
    }
    return res;
  }
  return res;
}

}  // namespace geomatch
