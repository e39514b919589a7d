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
#include <numeric>
#include <string>

#include "geomatch/algorithms.hpp"
#include "geomatch/error.hpp"

namespace geomatch {

namespace {

std::vector<int> sorted_by_x(const PointSet& ps, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) { return ps[a].x < ps[b].x || (ps[a].x == ps[b].x && a < b); });
  for (size_t i = 0; i + 1 < ids.size(); ++i)
    if (ps[ids[i]].x == ps[ids[i + 1]].x)
      throw Error(ErrorCode::DistinctXRequired,
                  "points " + std::to_string(ids[i]) + " and " + std::to_string(ids[i + 1]) + " share an x-coordinate",
                  {ids[i], ids[i + 1]});
  return ids;
}

std::vector<Segment> canonical_pairs(const std::vector<int>& by_x) {
  std::vector<Segment> out;
  for (size_t i = 0; i + 1 < by_x.size(); i += 2) out.emplace_back(by_x[i], by_x[i + 1]);
  std::sort(out.begin(), out.end());
  return out;
}

void require_perfect(const Matching& m) {
  if (!m.is_perfect()) throw Error(ErrorCode::NotPerfect, "matching is not perfect");
}

// Edge lists from `edges` (a perfect matching of `by_x`) to the canonical
// matching of `by_x`, at most ceil_log2(|by_x| / 2) steps.
std::vector<std::vector<Segment>> to_canonical(const PointSetPtr& base, const std::vector<int>& by_x,
                                               std::vector<Segment> edges) {
  const PointSet& ps = *base;
  int n = static_cast<int>(by_x.size()) / 2;
  std::sort(edges.begin(), edges.end());
  if (n <= 1) return {edges};
  size_t half = static_cast<size_t>(2 * (n / 2));
  Scalar c = (ps[by_x[half - 1]].x + ps[by_x[half]].x) / 2;
  Vec2 p(c, Scalar(0)), q(c, Scalar(1));
  Matching cut = even_cut_matching(Matching::trusted(base, edges), p, q);

  std::vector<int> left_ids(by_x.begin(), by_x.begin() + static_cast<long>(half));
  std::vector<int> right_ids(by_x.begin() + static_cast<long>(half), by_x.end());
  std::vector<Segment> left_edges, right_edges;
  for (const Segment& s : cut.edges()) (ps[s.a].x < c ? left_edges : right_edges).push_back(s);

  auto left = to_canonical(base, left_ids, std::move(left_edges));
  auto right = to_canonical(base, right_ids, std::move(right_edges));
  std::vector<std::vector<Segment>> out{edges};
  size_t steps = std::max(left.size(), right.size());
  for (size_t i = 0; i < steps; ++i) {
    std::vector<Segment> step = left[std::min(i, left.size() - 1)];
    const auto& r = right[std::min(i, right.size() - 1)];
    step.insert(step.end(), r.begin(), r.end());
    std::sort(step.begin(), step.end());
    out.push_back(std::move(step));
  }
  return out;
}

TransformationSequence collapse(const PointSetPtr& base, const std::vector<std::vector<Segment>>& steps) {
  // A repeated matching closes a loop; everything after its first visit is
  // dropped, so consecutive duplicates vanish as a special case.
  std::vector<std::vector<Segment>> kept;
  for (const auto& step : steps) {
    auto seen = std::find(kept.begin(), kept.end(), step);
    if (seen != kept.end())
      kept.erase(seen + 1, kept.end());
    else
      kept.push_back(step);
  }
  TransformationSequence seq;
  for (auto& step : kept) seq.matchings.push_back(Matching::trusted(base, std::move(step)));
  return seq;
}

std::vector<int> all_ids(const PointSet& ps) {
  std::vector<int> ids(static_cast<size_t>(ps.size()));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

}  // namespace

int ceil_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

Matching canonical_matching(const PointSetPtr& points) {
  if (points->size() % 2 != 0) throw Error(ErrorCode::OddCount, "canonical matching needs an even number of points");
  return Matching::trusted(points, canonical_pairs(sorted_by_x(*points, all_ids(*points))));
}

Matching halfplane_matching(const Matching& m, const Vec2& p, const Vec2& q, bool left) {
  const Orientation want = left ? Orientation::Left : Orientation::Right;
  std::vector<int> side;
  for (int v : m.vertices()) {
    Orientation o = orientation_test(p, q, m.point(v));
    if (o == Orientation::Collinear)
      throw Error(ErrorCode::VertexOnLine, "vertex " + std::to_string(v) + " lies on the cut line", {v});
    if (o == want) side.push_back(v);
  }
  int cut = 0;
  for (const Segment& s : m.edges())
    cut += (orientation_test(p, q, m.point(s.a)) == want) != (orientation_test(p, q, m.point(s.b)) == want);
  if (cut % 2 != 0) throw Error(ErrorCode::OddCut, "the line cuts " + std::to_string(cut) + " segments");
  if (side.empty()) return Matching::trusted(m.base_ptr(), {});

  Region region = Region::halfplane(p, q, left, bounding_box(m.base()));
  std::vector<ExtensionDirective> dirs;
  for (const Segment& s : m.edges()) {
    bool ia = orientation_test(p, q, m.point(s.a)) == want;
    bool ib = orientation_test(p, q, m.point(s.b)) == want;
    int order = static_cast<int>(dirs.size());
    if (ia && ib)
      dirs.push_back(ExtensionDirective::both(s, order));
    else if (ia || ib)
      dirs.push_back(ExtensionDirective::from(s, ia ? s.a : s.b, order));
  }
  Extension ext = extend(m, region, dirs);
  DualMultigraph g = dual_multigraph(ext.subdivision, m);
  auto o = even_orientation(g.graph());
  check_internal(o.has_value(), "dual of an even cut has an odd component");
  return assemble_from_orientation(m, ext.subdivision, g, *o, false);
}

Matching even_cut_matching(const Matching& m, const Vec2& p, const Vec2& q) {
  return merge(halfplane_matching(m, p, q, true), halfplane_matching(m, p, q, false));
}

TransformationSequence transform_to_canonical(const Matching& m) {
  require_perfect(m);
  std::vector<int> by_x = sorted_by_x(m.base(), all_ids(m.base()));
  return collapse(m.base_ptr(), to_canonical(m.base_ptr(), by_x, m.edges()));
}

TransformationSequence transform(const Matching& m, const Matching& m2) {
  if (!Matching::same_base(m, m2)) throw Error(ErrorCode::MismatchedVertexSet, "matchings are over different point sets");
  require_perfect(m);
  require_perfect(m2);
  std::vector<int> by_x = sorted_by_x(m.base(), all_ids(m.base()));
  auto forward = to_canonical(m.base_ptr(), by_x, m.edges());
  auto backward = to_canonical(m.base_ptr(), by_x, m2.edges());
  forward.insert(forward.end(), backward.rbegin() + 1, backward.rend());
  return collapse(m.base_ptr(), forward);
}

}  // namespace geomatch
