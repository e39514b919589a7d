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

#include <numeric>

#include "doctest.h"
#include "geom_oracles.hpp"
#include "geomatch/algorithms.hpp"
#include "geomatch/error.hpp"
#include "geomatch/oracle.hpp"
#include "test_support.hpp"

using namespace geomatch;
using namespace geomatch::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Internal;
}

// Union non-crossing and no shared edge; `out` may be partial.
bool disjoint_compatible(const Matching& m, const Matching& out) {
  const PointSet& ps = m.base();
  for (const Segment& s : out.edges())
    for (const Segment& t : m.edges()) {
      if (s == t) return false;
      if (segments_cross(ps[s.a], ps[s.b], ps[t.a], ps[t.b])) return false;
    }
  return pairwise_non_crossing(ps, out.edges());
}

bool union_non_crossing(const Matching& a, const Matching& b) {
  std::vector<Segment> all = a.edges();
  all.insert(all.end(), b.edges().begin(), b.edges().end());
  const PointSet& ps = a.base();
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      if (all[i] != all[j] && segments_cross(ps[all[i].a], ps[all[i].b], ps[all[j].a], ps[all[j].b])) return false;
  return true;
}

// Independent spanning-tree check: |V|-1 edges and a union-find without a
// repeated union.
bool spanning_tree(int vertices, const std::vector<std::pair<int, int>>& edges) {
  if (static_cast<int>(edges.size()) != vertices - 1) return false;
  std::vector<int> parent(static_cast<size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); };
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a == b) return false;
    parent[static_cast<size_t>(a)] = b;
  }
  return true;
}

std::vector<std::pair<int, int>> colored_edges(const DualMultigraph& g, EdgeColor c) {
  std::vector<std::pair<int, int>> out;
  for (const DualEdge& e : g.edges)
    if (e.color == c) out.emplace_back(e.u, e.v);
  return out;
}

bool each_segment_split(const Matching& m, const DualMultigraph& g) {
  for (const Segment& s : m.edges())
    if (g.edges[static_cast<size_t>(g.edge_of_vertex[static_cast<size_t>(s.a)])].color ==
        g.edges[static_cast<size_t>(g.edge_of_vertex[static_cast<size_t>(s.b)])].color)
      return false;
  return true;
}

// Random perfect matching with distinct x and no vertical segment.
Matching random_general(int n, std::mt19937_64& rng) { return gen_random_matching(n, rng(), Flavor::General); }

bool same_vertices(const Matching& a, const PointSet& base) {
  return a.is_perfect() && static_cast<int>(a.edges().size()) * 2 == base.size();
}

}  // namespace

TEST_CASE("canonical matching") {
  Matching n = canonical_matching(points({{3, 7}, {1, 0}, {4, 2}, {2, 5}}));
  CHECK(n.edges() == std::vector<Segment>{{0, 2}, {1, 3}});
  CHECK(canonical_matching(points({{0, 0}, {5, 1}})).size() == 1);
  CHECK(code_of([] { canonical_matching(points({{0, 0}, {1, 1}, {2, 5}})); }) == ErrorCode::OddCount);
  CHECK(code_of([] { canonical_matching(points({{0, 0}, {0, 1}, {2, 5}, {3, 9}})); }) == ErrorCode::DistinctXRequired);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    PointSetPtr ps = random_points(10, rng);
    std::set<Scalar> xs;
    for (const Vec2& p : ps->points()) xs.insert(p.x);
    if (xs.size() != 10) continue;
    Matching c = canonical_matching(ps);
    CHECK(pairwise_non_crossing(*ps, c.edges()));
    CHECK(c.is_perfect());
  }
}

TEST_CASE("halfplane and even cut matchings") {
  // No segment cut: the whole matching lies to the left of x = 10.
  Matching m = segments({{0, 0, 2, 3}, {4, 1, 6, 5}});
  Vec2 p(10, 0), q(10, 1);
  Matching left = halfplane_matching(m, p, q, true);
  CHECK(left.size() == 2);
  CHECK(union_non_crossing(m, left));
  CHECK(halfplane_matching(m, p, q, false).empty());

  // Two segments crossing x = 3.
  Matching cut = segments({{0, 0, 6, 1}, {1, 5, 5, 7}, {0, 9, 2, 12}});
  Vec2 c0(3, 0), c1(3, 1);
  Matching l = halfplane_matching(cut, c0, c1, true);
  Matching r = halfplane_matching(cut, c0, c1, false);
  CHECK(l.vertices() == std::vector<int>{0, 2, 4, 5});
  CHECK(union_non_crossing(cut, l));
  CHECK(union_non_crossing(cut, r));
  Matching both = even_cut_matching(cut, c0, c1);
  CHECK(both.is_perfect());

  CHECK(code_of([&] { halfplane_matching(cut, Vec2(1, 0), Vec2(1, 1), true); }) == ErrorCode::VertexOnLine);
  Matching odd = segments({{0, 0, 6, 1}, {1, 5, 2, 7}});
  CHECK(code_of([&] { even_cut_matching(odd, c0, c1); }) == ErrorCode::OddCut);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Matching mm = random_general(2 + trial % 7, rng);
    // Lines through the box at random slopes, kept only when the cut is even.
    Vec2 a(static_cast<long>(rng() % 1000000), -1), b(static_cast<long>(rng() % 1000000), 1000001);
    int crossing = 0;
    bool on_line = false;
    for (const Segment& s : mm.edges()) {
      Orientation oa = orientation_test(a, b, mm.point(s.a)), ob = orientation_test(a, b, mm.point(s.b));
      on_line = on_line || oa == Orientation::Collinear || ob == Orientation::Collinear;
      crossing += oa != ob;
    }
    if (on_line || crossing % 2 != 0) continue;
    Matching out = even_cut_matching(mm, a, b);
    CHECK(out.is_perfect());
    CHECK(union_non_crossing(mm, out));
    for (const Segment& s : out.edges())
      CHECK(orientation_test(a, b, mm.point(s.a)) == orientation_test(a, b, mm.point(s.b)));
  }
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(64) == 6);
}

TEST_CASE("transformations") {
  Matching one = segments({{0, 0, 3, 1}});
  CHECK(transform_to_canonical(one).length() == 0);
  Matching same = segments({{0, 0, 3, 1}, {1, 5, 4, 2}});
  CHECK(transform(same, same).length() == 0);

  // Two matchings of four convex points.
  PointSetPtr quad = points({{0, 0}, {4, 1}, {5, 5}, {1, 4}});
  Matching a(quad, {{0, 1}, {2, 3}}), b(quad, {{0, 3}, {1, 2}});
  TransformationSequence ab = transform(a, b);
  CHECK(ab.length() <= 2);
  CHECK(transformation_distance(a, b) <= ab.length());

  CHECK(code_of([&] { transform(a, segments({{0, 0, 4, 1}, {5, 5, 1, 3}})); }) == ErrorCode::MismatchedVertexSet);
  CHECK(code_of([] { transform_to_canonical(segments({{0, 0, 0, 4}, {3, 1, 5, 2}})); }) == ErrorCode::DistinctXRequired);

  std::mt19937_64 rng(21);
  for (int n : {2, 3, 5, 8, 16}) {
    for (int trial = 0; trial < 6; ++trial) {
      Matching m = random_general(n, rng);
      TransformationSequence fwd = transform_to_canonical(m);
      CHECK(fwd.length() <= ceil_log2(n));
      CHECK(fwd.matchings.back() == canonical_matching(m.base_ptr()));

      // A second perfect matching on the same points.
      Matching m2 = random_matching_on(m.base_ptr(), rng);
      TransformationSequence seq = transform(m, m2);
      CHECK(seq.length() <= 2 * ceil_log2(n));
      CHECK(seq.matchings.front() == m);
      CHECK(seq.matchings.back() == m2);
      for (size_t i = 0; i < seq.matchings.size(); ++i) {
        CHECK(same_vertices(seq.matchings[i], m.base()));
        if (i > 0) {
          CHECK(compatible(seq.matchings[i - 1], seq.matchings[i]));
          CHECK(union_non_crossing(seq.matchings[i - 1], seq.matchings[i]));
          CHECK(seq.matchings[i - 1] != seq.matchings[i]);
        }
      }
      if (n <= 4) CHECK(transformation_distance(m, m2) <= seq.length());
    }
  }
}

TEST_CASE("axis-parallel two trees and disjoint matching") {
  Matching stacked = segments({{0, 0, 5, 0}, {1, 3, 6, 3}});
  HvResult r = hv_disjoint_matching(stacked);
  CHECK(disjoint_compatible_perfect(stacked, r.matching));
  CHECK(spanning_tree(r.dual.dual.num_cells, colored_edges(r.dual.dual, EdgeColor::Red)));

  // Mixed instance with both orientations.
  Matching mixed = segments({{0, 4, 6, 4}, {2, 7, 2, 12}, {8, 1, 8, 9}, {3, 0, 7, 0}});
  HvResult mr = hv_disjoint_matching(mixed);
  CHECK(disjoint_compatible_perfect(mixed, mr.matching));

  CHECK(code_of([] { hv_two_trees(segments({{0, 0, 2, 1}})); }) == ErrorCode::NotAxisParallel);
  Matching odd = segments({{0, 0, 5, 0}});
  CHECK(hv_two_trees(odd).dual.num_cells == 2);
  CHECK(code_of([&] { hv_disjoint_matching(odd); }) == ErrorCode::OddMatching);

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    int n = 1 + static_cast<int>(seed % 14);
    Matching m = gen_random_matching(n, seed, Flavor::AxisParallel);
    ColoredDual cd = hv_two_trees(m);
    CHECK(cd.dual.num_cells == n + 1);
    CHECK(spanning_tree(cd.dual.num_cells, colored_edges(cd.dual, EdgeColor::Red)));
    CHECK(spanning_tree(cd.dual.num_cells, colored_edges(cd.dual, EdgeColor::Green)));
    CHECK(each_segment_split(m, cd.dual));
    if (n % 2 == 0) CHECK(disjoint_compatible_perfect(m, hv_disjoint_matching(m).matching));
  }
}

TEST_CASE("convex-hull-connected matchings") {
  PointSetPtr quad = points({{0, 0}, {4, 1}, {5, 5}, {1, 4}});
  Matching m(quad, {{0, 1}, {2, 3}});
  CHECK(chc_disjoint_matching(m).edges() == std::vector<Segment>{{0, 3}, {1, 2}});

  // A splitter chord 0-1 over the radial segment 2-3, plus two radial
  // segments on the other side.
  PointSetPtr ps = points({{-10, 1}, {10, 0}, {1, 10}, {0, 6}, {-7, -8}, {-3, -3}, {6, -9}, {3, -4}});
  Matching split(ps, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  Matching out = chc_disjoint_matching(split);
  CHECK(disjoint_compatible_perfect(split, out));

  Matching inner = segments({{0, 0, 10, 0}, {5, 10, 0, 9}, {4, 3, 5, 4}, {9, 8, 12, 4}});
  CHECK(code_of([&] { chc_disjoint_matching(inner); }) == ErrorCode::NotCHC);
  CHECK(code_of([] { chc_disjoint_matching(segments({{0, 0, 4, 1}})); }) == ErrorCode::OddMatching);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 2 * (1 + static_cast<int>(seed % 8));
    Matching g = gen_random_matching(n, seed, Flavor::CHC);
    Matching res = chc_disjoint_matching(g);
    CHECK(disjoint_compatible_perfect(g, res));
    if (n <= 6) CHECK(has_disjoint_compatible_pm(g));
  }
}

TEST_CASE("four-fifths partial matching") {
  Matching two = segments({{0, 0, 5, 1}, {1, 4, 6, 3}});
  FourFifthsReport rep = four_fifths_matching(two);
  CHECK(rep.guarantee == 2);
  CHECK(rep.achieved == 2);
  CHECK(disjoint_compatible_perfect(two, rep.matching));

  CHECK(code_of([] { four_fifths_matching(segments({{0, 0, 5, 1}})); }) == ErrorCode::OddN);
  CHECK(code_of([] { four_fifths_matching(segments({{0, 0, 0, 5}, {1, 4, 6, 3}})); }) == ErrorCode::VerticalSegment);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 * (1 + trial % 10);
    Matching m = random_general(n, rng);
    FourFifthsReport r = four_fifths_matching(m);
    CHECK(r.n == n);
    CHECK(5 * r.guarantee >= 4 * n - 1);
    CHECK(5 * (r.guarantee - 1) < 4 * n - 1);
    CHECK(r.achieved >= r.guarantee);
    CHECK(2 * r.achieved == 2 * n - r.odd_components);
    CHECK(5 * r.odd_components <= 2 * n + 2);
    CHECK(r.removed_edges.size() == static_cast<size_t>(r.odd_components));
    CHECK(spanning_tree(r.dual.dual.num_cells, colored_edges(r.dual.dual, EdgeColor::Blue)));
    CHECK(disjoint_compatible(m, r.matching));
  }
}

TEST_CASE("left and right endpoint matchings") {
  Matching two = segments({{0, 0, 5, 1}, {1, 4, 6, 3}});
  CrossingsResult r = crossings_matchings(two);
  CHECK(r.left.edges() == std::vector<Segment>{{0, 2}});
  CHECK(r.right.edges() == std::vector<Segment>{{1, 3}});

  CHECK(code_of([] { crossings_matchings(segments({{0, 0, 5, 1}})); }) == ErrorCode::OddMatching);
  CHECK(code_of([] { crossings_matchings(segments({{0, 0, 0, 5}, {1, 4, 6, 3}})); }) == ErrorCode::VerticalSegment);

  Matching chords = gen_parallel_chords(4, 10);
  CrossingsResult cr = crossings_matchings(chords);
  CHECK(union_non_crossing(chords, cr.left));
  CHECK(union_non_crossing(chords, cr.right));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Matching m = random_general(2 * (1 + trial % 6), rng);
    CrossingsResult c = crossings_matchings(m);
    CHECK(union_non_crossing(m, c.left));
    CHECK(union_non_crossing(m, c.right));
    VisibilityGraph vis = visibility_graph(m, true);
    std::set<int> covered;
    for (const Matching* half : {&c.left, &c.right})
      for (const Segment& s : half->edges()) {
        CHECK(vis.has_edge(s.a, s.b));
        covered.insert(s.a), covered.insert(s.b);
      }
    CHECK(static_cast<int>(covered.size()) == m.base().size());
  }
}

TEST_CASE("two-trees search") {
  TwoTreesResult single = two_trees_search(segments({{0, 0, 3, 1}}), 1);
  REQUIRE(single.found);
  CHECK(single.dual->dual.num_cells == 2);
  CHECK(single.dual->edges_of(EdgeColor::Red).size() == 1);
  CHECK(!single.matching.has_value());

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matching m = gen_random_matching(2 + static_cast<int>(seed % 4), seed, Flavor::AxisParallel);
    TwoTreesResult r = two_trees_search(m, 1);
    REQUIRE(r.found);
    CHECK(r.orders_tried == 1);
    CHECK(each_segment_split(m, r.dual->dual));
    CHECK(spanning_tree(r.dual->dual.num_cells, colored_edges(r.dual->dual, EdgeColor::Red)));
    CHECK(spanning_tree(r.dual->dual.num_cells, colored_edges(r.dual->dual, EdgeColor::Green)));
    if (m.size() % 2 == 0) CHECK(disjoint_compatible_perfect(m, *r.matching));
  }

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    Matching m = random_general(3, rng);
    TwoTreesResult r = two_trees_search(m, 6);
    CHECK(r.orders_tried >= 1);
    CHECK(r.orders_tried <= 6);
    if (r.found) {
      CHECK(each_segment_split(m, r.dual->dual));
      CHECK(spanning_tree(r.dual->dual.num_cells, colored_edges(r.dual->dual, EdgeColor::Red)));
    }
  }
}

TEST_CASE("generators") {
  for (Flavor f : {Flavor::General, Flavor::AxisParallel, Flavor::CHC}) {
    CHECK(gen_random_matching(1, 99, f).size() == 1);
    Matching a = gen_random_matching(5, 7, f), b = gen_random_matching(5, 7, f);
    CHECK(a == b);
    CHECK(a.is_perfect());
    CHECK_NOTHROW(validate_general_position(a.base()));
    CHECK(pairwise_non_crossing(a.base(), a.edges()));
  }
  Matching hv = gen_random_matching(5, 7, Flavor::AxisParallel);
  for (const Segment& s : hv.edges())
    CHECK((hv.point(s.a).x == hv.point(s.b).x || hv.point(s.a).y == hv.point(s.b).y));
  Matching chc = gen_random_matching(5, 7, Flavor::CHC);
  Hull hull = convex_hull(chc.base());
  std::set<int> on(hull.hull_ids.begin(), hull.hull_ids.end());
  for (const Segment& s : chc.edges()) CHECK((on.count(s.a) + on.count(s.b)) >= 1);

  for (int k : {1, 3, 5}) CHECK(!has_disjoint_compatible_pm(gen_parallel_chords(k, 10)));
  CHECK(has_disjoint_compatible_pm(gen_parallel_chords(4, 10)));
  Matching five = gen_parallel_chords(5, 1);
  for (int i = 0; i < 10; ++i) CHECK(five.point(i).x * five.point(i).x + five.point(i).y * five.point(i).y == 1);

  for (int n : {1, 2}) {
    Matching g = gen_general_odd(n);
    CHECK(g.size() == 2 * n + 1);
    VisibilityGraph vis = visibility_graph(g, true);
    for (int u = 2 * n; u < g.base().size(); ++u)
      for (int v = u + 1; v < g.base().size(); ++v) CHECK(!vis.has_edge(u, v));
    CHECK(!graph_perfect_matching_exists(vis));
    CHECK(!has_disjoint_compatible_pm(g));
  }
  Matching g3 = gen_general_odd(3, 4);
  CHECK(g3.size() == 7);
}
