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

#include "doctest.h"
#include "geom_oracles.hpp"
#include "geomatch/error.hpp"
#include "geomatch/matching_engine.hpp"
#include "test_support.hpp"

using namespace geomatch;
using namespace geomatch::testing;

namespace {

bool disjoint_and_compatible_with(const PointSet& ps, const Pairing& out, const std::vector<Segment>& mb) {
  for (const Segment& s : out)
    for (const Segment& t : mb)
      if (s == t || segments_cross(ps[s.a], ps[s.b], ps[t.a], ps[t.b])) return false;
  return pairwise_non_crossing(ps, out);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("convex_disjoint_matching: square") {
  PointSetPtr sq = points({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  std::vector<int> all = {0, 1, 2, 3};
  auto catalog = brute_ncpm(*sq, all);
  REQUIRE(catalog.size() == 2);

  Matching free = convex_disjoint_matching(sq, all, {});
  CHECK(catalog.count(free.edges()) == 1);

  std::vector<Segment> bottom = {Segment(0, 1)};
  Matching out = convex_disjoint_matching(sq, all, bottom);
  std::vector<Pairing> valid;
  for (const Pairing& p : catalog)
    if (disjoint_and_compatible_with(*sq, p, bottom)) valid.push_back(p);
  REQUIRE(valid.size() == 1);
  CHECK(out.edges() == valid.front());
}

TEST_CASE("convex_disjoint_matching: hexagon with alternate hull edges") {
  PointSetPtr hex = points({{0, 0}, {2, -1}, {4, 0}, {4, 2}, {2, 3}, {0, 2}});
  std::vector<int> all = {0, 1, 2, 3, 4, 5};
  std::vector<Segment> mb = {Segment(0, 1), Segment(2, 3), Segment(4, 5)};
  auto catalog = brute_ncpm(*hex, all);
  CHECK(catalog.size() == 5);
  Matching out = convex_disjoint_matching(hex, all, mb);
  CHECK(catalog.count(out.edges()) == 1);
  CHECK(disjoint_and_compatible_with(*hex, out.edges(), mb));
}

TEST_CASE("convex_disjoint_matching: exhaustive over hull matchings on a parabola") {
  for (int count = 2; count <= 10; count += 2) {
    PointSetPtr ps = parabola_points(count);
    std::vector<int> ids = all_ids(*ps);
    // Hull order on a parabola: 0, 1, ..., count-1, then back to 0.
    std::vector<Segment> hull_edges;
    for (int i = 0; i < count; ++i) hull_edges.emplace_back(i, (i + 1) % count);
    auto catalog = brute_ncpm(*ps, ids);
    for (unsigned mask = 0; mask < (1U << count); ++mask) {
      std::vector<Segment> mb;
      std::vector<bool> used(static_cast<size_t>(count), false);
      bool matching = true;
      for (int i = 0; i < count; ++i) {
        if (!((mask >> i) & 1U)) continue;
        const Segment& s = hull_edges[static_cast<size_t>(i)];
        if (s.a == s.b || used[static_cast<size_t>(s.a)] || used[static_cast<size_t>(s.b)]) matching = false;
        used[static_cast<size_t>(s.a)] = used[static_cast<size_t>(s.b)] = true;
        mb.push_back(s);
      }
      if (!matching || (count == 2 && mb.size() > 1)) continue;
      bool exists = false;
      for (const Pairing& p : catalog) exists = exists || disjoint_and_compatible_with(*ps, p, mb);
      if (!exists) {
        CHECK(count == 2);
        CHECK(code_of([&] { convex_disjoint_matching(ps, ids, mb); }) == ErrorCode::TwoPointsAlreadyMatched);
        continue;
      }
      Matching out = convex_disjoint_matching(ps, ids, mb);
      CHECK(disjoint_and_compatible_with(*ps, out.edges(), mb));
      CHECK(static_cast<int>(out.size()) * 2 == count);
    }
  }
}

TEST_CASE("convex matching errors") {
  PointSetPtr ps = points({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 2}, {3, 1}});
  CHECK(code_of([&] { convex_disjoint_matching(ps, {0, 1, 2}, {}); }) == ErrorCode::OddCount);
  CHECK(code_of([&] { convex_disjoint_matching(ps, {0, 1, 2, 5}, {}); }) == ErrorCode::NotConvexPosition);
  CHECK(code_of([&] { convex_disjoint_matching(ps, {0, 1}, {Segment(0, 1)}); }) == ErrorCode::TwoPointsAlreadyMatched);
  CHECK(code_of([&] { convex_compatible_matching(ps, {0, 1, 2, 3}, {Segment(0, 2)}); }) == ErrorCode::NotConvexPosition);
}

TEST_CASE("convex_compatible_matching") {
  PointSetPtr two = points({{0, 0}, {1, 1}});
  CHECK(convex_compatible_matching(two, {0, 1}, {Segment(0, 1)}).edges() == std::vector<Segment>{Segment(0, 1)});

  PointSetPtr ps = parabola_points(8);
  std::vector<Segment> mb = {Segment(1, 2), Segment(7, 0)};
  Matching out = convex_compatible_matching(ps, all_ids(*ps), mb);
  CHECK(out.size() == 4);
  for (const Segment& s : out.edges())
    for (const Segment& t : mb) CHECK_FALSE(segments_cross((*ps)[s.a], (*ps)[s.b], (*ps)[t.a], (*ps)[t.b]));
  CHECK(pairwise_non_crossing(*ps, out.edges()));
}

namespace {

// Generate-and-filter answer to a constrained problem.
bool brute_constrained_exists(const ConstrainedMatchProblem& prob) {
  const PointSet& ps = *prob.base;
  bool found = false;
  for_each_pairing(prob.points, [&](const Pairing& p) {
    if (found || !pairwise_non_crossing(ps, p)) return;
    for (const Segment& s : p) {
      for (const auto& [a, b] : prob.blockers)
        if (segments_cross(ps[s.a], ps[s.b], a, b)) return;
      for (const Segment& f : prob.forbidden)
        if (f == s) return;
      if (prob.region && !(prob.region->contains(ps[s.a]) && prob.region->contains(ps[s.b]))) return;
    }
    found = true;
  });
  return found;
}

void check_solution(const ConstrainedMatchProblem& prob, const Matching& out) {
  const PointSet& ps = *prob.base;
  CHECK(static_cast<size_t>(out.size()) * 2 == prob.points.size());
  CHECK(pairwise_non_crossing(ps, out.edges()));
  for (const Segment& s : out.edges()) {
    CHECK(std::find(prob.points.begin(), prob.points.end(), s.a) != prob.points.end());
    CHECK(std::find(prob.points.begin(), prob.points.end(), s.b) != prob.points.end());
    for (const auto& [a, b] : prob.blockers) CHECK_FALSE(segments_cross(ps[s.a], ps[s.b], a, b));
    for (const Segment& f : prob.forbidden) CHECK(f != s);
  }
}

}  // namespace

TEST_CASE("constrained_matching: small cases") {
  SUBCASE("two visible points") {
    ConstrainedMatchProblem prob{points({{0, 0}, {3, 1}}), {0, 1}, {}, std::nullopt, {}};
    auto out = constrained_matching(prob);
    REQUIRE(out.has_value());
    CHECK(out->edges() == std::vector<Segment>{Segment(0, 1)});
  }
  SUBCASE("one blocker forces the pairing") {
    // Wall x = 2 from y = -10 to 10 separates {0, 1} from {2, 3}.
    ConstrainedMatchProblem prob{points({{0, 0}, {1, 3}, {3, 1}, {4, 4}}), {0, 1, 2, 3}, {{{2, -10}, {2, 10}}}, std::nullopt, {}};
    auto out = constrained_matching(prob);
    REQUIRE(out.has_value());
    CHECK(out->edges() == std::vector<Segment>{Segment(0, 1), Segment(2, 3)});
  }
  SUBCASE("blockers isolate a point") {
    ConstrainedMatchProblem prob{points({{0, 0}, {5, 1}, {6, 6}, {1, 5}}),
                                 {0, 1, 2, 3},
                                 {{{-1, 2}, {2, -1}}},
                                 std::nullopt,
                                 {}};
    CHECK_FALSE(constrained_matching(prob).has_value());
  }
  SUBCASE("odd count") {
    ConstrainedMatchProblem prob{points({{0, 0}, {3, 1}, {5, 7}}), {0, 1, 2}, {}, std::nullopt, {}};
    CHECK_FALSE(constrained_matching(prob).has_value());
  }
}

TEST_CASE("constrained_matching agrees with generate-and-filter on small instances") {
  std::mt19937_64 rng(41);
  int none = 0, some = 0;
  for (int trial = 0; trial < 250; ++trial) {
    int k = 2 * std::uniform_int_distribution<int>(1, 5)(rng);
    int walls = std::uniform_int_distribution<int>(0, 4)(rng);
    PointSetPtr ps = random_points(k + 2 * walls, rng, 60);
    ConstrainedMatchProblem prob;
    prob.base = ps;
    for (int i = 0; i < k; ++i) prob.points.push_back(i);
    // Blockers: long segments through the extra points, some fully free.
    for (int w = 0; w < walls; ++w) {
      const Vec2& a = (*ps)[k + 2 * w];
      const Vec2& b = (*ps)[k + 2 * w + 1];
      prob.blockers.emplace_back(a, a + Scalar(2) * (b - a));
    }
    if (trial % 3 == 0 && k >= 2) prob.forbidden.emplace_back(0, 1);
    if (trial % 5 == 0) prob.region = ConvexPolygon({{0, 0}, {60, 0}, {60, 60}, {0, 60}});
    bool brute = brute_constrained_exists(prob);
    SearchStats stats;
    auto out = constrained_matching(prob, &stats);
    CHECK(out.has_value() == brute);
    if (out) {
      ++some;
      check_solution(prob, *out);
    } else {
      ++none;
    }
  }
  CHECK(some > 20);
  CHECK(none > 20);
}

TEST_CASE("assemble_from_orientation") {
  SUBCASE("single segment, both endpoints into one cell") {
    Matching m = segments({{-1, 0, 1, 0}});
    Region region = Region::box(BoundingBox{Scalar(-2), Scalar(2), Scalar(-2), Scalar(2)});
    Extension ext = extend(m, region, default_directives(m, region));
    DualMultigraph g = dual_multigraph(ext.subdivision, m);
    EvenOrientation o{{g.edges[0].u, g.edges[1].u}};
    REQUIRE(g.edges[0].u == g.edges[1].u);
    CHECK(code_of([&] { assemble_from_orientation(m, ext.subdivision, g, o, true); }) == ErrorCode::SameSegmentIndegreeTwo);
    CHECK(assemble_from_orientation(m, ext.subdivision, g, o, false).edges() == m.edges());
  }
  SUBCASE("random matchings, compatible assembly inside cells") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      Matching m = random_perfect_matching(1 + trial % 7, rng, 300);
      Region region = Region::box(bounding_box(m.base()));
      Extension ext = extend(m, region, default_directives(m, region));
      DualMultigraph g = dual_multigraph(ext.subdivision, m);
      auto o = even_orientation(g.graph());
      REQUIRE(o.has_value());
      Matching out = assemble_from_orientation(m, ext.subdivision, g, *o, false);
      CHECK(out.is_perfect());
      CHECK(compatible(m, out));
      CellAssignment a = assign_cells(m, g, *o);
      for (const Segment& s : out.edges()) {
        int y = a.cell_of_vertex[static_cast<size_t>(s.a)];
        CHECK(y == a.cell_of_vertex[static_cast<size_t>(s.b)]);
        Vec2 mid = Scalar(1, 2) * (m.point(s.a) + m.point(s.b));
        CHECK(ext.subdivision.cells[static_cast<size_t>(y)].contains(mid));
      }
      for (const auto& pts : a.cell_points) CHECK(pts.size() % 2 == 0);
    }
  }
}
