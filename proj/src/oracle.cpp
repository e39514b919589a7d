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

#include "geomatch/oracle.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <unordered_set>

#include "geomatch/error.hpp"

namespace geomatch {

namespace {

void guard_size(int n, int guard, const char* what) {
  if (n > guard)
    throw Error(ErrorCode::TooLarge,
                std::string(what) + ": " + std::to_string(n) + " points exceeds the guard of " + std::to_string(guard));
}

// Fixes the lowest unmatched id and branches on its partner. `allowed`
// filters single edges; `visit` returns false to stop the enumeration.
void enumerate(const PointSet& ps, const std::function<bool(const Segment&)>& allowed,
               const std::function<bool(const std::vector<Segment>&)>& visit) {
  const int n = ps.size();
  std::vector<bool> used(static_cast<size_t>(n), false);
  std::vector<Segment> chosen;
  std::function<bool()> rec = [&]() -> bool {
    int u = 0;
    while (u < n && used[static_cast<size_t>(u)]) ++u;
    if (u == n) return visit(chosen);
    used[static_cast<size_t>(u)] = true;
    for (int v = u + 1; v < n; ++v) {
      if (used[static_cast<size_t>(v)]) continue;
      Segment s(u, v);
      if (!allowed(s)) continue;
      bool ok = true;
      for (const Segment& t : chosen)
        if (segments_cross(ps[s.a], ps[s.b], ps[t.a], ps[t.b])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used[static_cast<size_t>(v)] = true;
      chosen.push_back(s);
      bool go_on = rec();
      chosen.pop_back();
      used[static_cast<size_t>(v)] = false;
      if (!go_on) {
        used[static_cast<size_t>(u)] = false;
        return false;
      }
    }
    used[static_cast<size_t>(u)] = false;
    return true;
  };
  if (n % 2 == 0) rec();
}

}  // namespace

std::vector<Matching> enumerate_ncpm(const PointSetPtr& points, int guard) {
  guard_size(points->size(), guard, "enumerate_ncpm");
  if (points->size() % 2 != 0) throw Error(ErrorCode::OddCount, "odd number of points has no perfect matching");
  std::vector<Matching> out;
  enumerate(
      *points, [](const Segment&) { return true; },
      [&](const std::vector<Segment>& edges) {
        out.push_back(Matching::trusted(points, edges));
        return true;
      });
  return out;
}

std::optional<Matching> find_disjoint_compatible_pm(const Matching& m, int guard) {
  const PointSet& ps = m.base();
  guard_size(ps.size(), guard, "has_disjoint_compatible_pm");
  std::optional<Matching> found;
  enumerate(
      ps,
      [&](const Segment& s) {
        if (m.contains(s)) return false;
        for (const Segment& t : m.edges())
          if (segments_cross(ps[s.a], ps[s.b], ps[t.a], ps[t.b])) return false;
        return true;
      },
      [&](const std::vector<Segment>& edges) {
        found = Matching::trusted(m.base_ptr(), edges);
        return false;
      });
  return found;
}

bool has_disjoint_compatible_pm(const Matching& m, int guard) { return find_disjoint_compatible_pm(m, guard).has_value(); }

int transformation_distance(const Matching& a, const Matching& b, int guard) {
  if (!Matching::same_base(a, b)) throw Error(ErrorCode::MismatchedVertexSet, "matchings are over different point sets");
  if (!a.is_perfect() || !b.is_perfect()) throw Error(ErrorCode::NotPerfect, "transformation needs perfect matchings");
  guard_size(a.base().size(), guard, "transformation_distance");
  if (a == b) return 0;
  std::vector<Matching> cat = enumerate_ncpm(a.base_ptr(), guard);
  auto index_of = [&](const Matching& m) {
    for (size_t i = 0; i < cat.size(); ++i)
      if (cat[i].edges() == m.edges()) return static_cast<int>(i);
    check_internal(false, "matching missing from the catalog");
    return -1;
  };
  int src = index_of(a), dst = index_of(b);
  std::vector<int> dist(cat.size(), -1);
  std::deque<int> queue{src};
  dist[static_cast<size_t>(src)] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == dst) return dist[static_cast<size_t>(u)];
    for (size_t v = 0; v < cat.size(); ++v) {
      if (dist[v] >= 0 || !compatible(cat[static_cast<size_t>(u)], cat[v])) continue;
      dist[v] = dist[static_cast<size_t>(u)] + 1;
      queue.push_back(static_cast<int>(v));
    }
  }
  throw Error(ErrorCode::Unreachable, "no transformation between the two matchings");
}

VisibilityGraph visibility_graph(const Matching& m, bool minus_m) {
  const PointSet& ps = m.base();
  VisibilityGraph g;
  g.num_vertices = ps.size();
  g.adjacent.assign(static_cast<size_t>(g.num_vertices), std::vector<bool>(static_cast<size_t>(g.num_vertices), false));
  for (int u = 0; u < g.num_vertices; ++u)
    for (int v = u + 1; v < g.num_vertices; ++v) {
      bool own = m.partner(u) == v;
      if (minus_m && own) continue;
      bool blocked = false;
      for (const Segment& t : m.edges())
        if (!own && segments_cross(ps[u], ps[v], ps[t.a], ps[t.b])) {
          blocked = true;
          break;
        }
      if (blocked) continue;
      g.edges.emplace_back(u, v);
      g.adjacent[static_cast<size_t>(u)][static_cast<size_t>(v)] = g.adjacent[static_cast<size_t>(v)][static_cast<size_t>(u)] = true;
    }
  return g;
}

bool graph_perfect_matching_exists(const VisibilityGraph& g, int guard) {
  guard_size(g.num_vertices, guard, "graph_perfect_matching_exists");
  const int n = g.num_vertices;
  if (n % 2 != 0) return false;
  std::unordered_set<std::uint32_t> failed;
  std::function<bool(std::uint32_t)> rec = [&](std::uint32_t free) -> bool {
    if (free == 0) return true;
    if (failed.count(free)) return false;
    int u = __builtin_ctz(free);
    for (int v = u + 1; v < n; ++v)
      if (((free >> v) & 1U) && g.has_edge(u, v) && rec(free & ~(1U << u) & ~(1U << v))) return true;
    failed.insert(free);
    return false;
  };
  return rec(n == 32 ? ~0U : (1U << n) - 1);
}

}  // namespace geomatch
