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

#include "geomatch/orientation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "geomatch/error.hpp"

namespace geomatch {

namespace {

struct Adjacency {
  // (neighbour, edge id) per vertex, in edge id order.
  std::vector<std::vector<std::pair<int, int>>> out;

  explicit Adjacency(const Multigraph& g) : out(static_cast<size_t>(g.num_vertices)) {
    for (int e = 0; e < g.num_edges(); ++e) {
      auto [u, v] = g.edges[static_cast<size_t>(e)];
      out[static_cast<size_t>(u)].emplace_back(v, e);
      out[static_cast<size_t>(v)].emplace_back(u, e);
    }
  }
  const std::vector<std::pair<int, int>>& operator[](int v) const { return out[static_cast<size_t>(v)]; }
};

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Edge count per component label.
std::vector<int> component_edge_counts(const Multigraph& g, const std::vector<int>& label) {
  int k = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<int> count(static_cast<size_t>(k), 0);
  for (auto [u, v] : g.edges) ++count[static_cast<size_t>(label[static_cast<size_t>(u)])];
  return count;
}

}  // namespace

int Multigraph::add_edge(int u, int v) {
  check_internal(u != v, "self-loop in multigraph");
  check_internal(u >= 0 && v >= 0 && u < num_vertices && v < num_vertices, "edge endpoint out of range");
  edges.emplace_back(u, v);
  return num_edges() - 1;
}

Multigraph Multigraph::edge_subgraph(const std::vector<int>& edge_ids) const {
  Multigraph sub;
  sub.num_vertices = num_vertices;
  for (int e : edge_ids) sub.edges.push_back(edges[static_cast<size_t>(e)]);
  return sub;
}

std::vector<int> EvenOrientation::indegrees(const Multigraph& g) const {
  std::vector<int> deg(static_cast<size_t>(g.num_vertices), 0);
  for (int h : head)
    if (h >= 0) ++deg[static_cast<size_t>(h)];
  return deg;
}

std::vector<int> component_labels(const Multigraph& g) {
  DisjointSets ds(g.num_vertices);
  for (auto [u, v] : g.edges) ds.unite(u, v);
  std::vector<int> label(static_cast<size_t>(g.num_vertices), -1);
  int next = 0;
  std::vector<int> root_label(static_cast<size_t>(g.num_vertices), -1);
  for (int v = 0; v < g.num_vertices; ++v) {
    int r = ds.find(v);
    if (root_label[static_cast<size_t>(r)] < 0) root_label[static_cast<size_t>(r)] = next++;
    label[static_cast<size_t>(v)] = root_label[static_cast<size_t>(r)];
  }
  return label;
}

std::optional<EvenOrientation> even_orientation(const Multigraph& g) {
  if (count_odd_components(g) > 0) return std::nullopt;
  Adjacency adj(g);
  EvenOrientation o;
  o.head.assign(static_cast<size_t>(g.num_edges()), -1);
  std::vector<int> parent_edge(static_cast<size_t>(g.num_vertices), -1);
  std::vector<char> seen(static_cast<size_t>(g.num_vertices), 0);
  std::vector<int> indeg(static_cast<size_t>(g.num_vertices), 0);
  std::vector<char> tree_edge(static_cast<size_t>(g.num_edges()), 0);

  for (int root = 0; root < g.num_vertices; ++root) {
    if (seen[static_cast<size_t>(root)]) continue;
    // BFS spanning tree of the component.
    std::vector<int> order{root};
    seen[static_cast<size_t>(root)] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
      int x = order[i];
      for (auto [y, e] : adj[x]) {
        if (seen[static_cast<size_t>(y)]) continue;
        seen[static_cast<size_t>(y)] = 1;
        parent_edge[static_cast<size_t>(y)] = e;
        tree_edge[static_cast<size_t>(e)] = 1;
        order.push_back(y);
      }
    }
    // Non-tree edges first, pointing at their second endpoint.
    for (int x : order)
      for (auto [y, e] : adj[x])
        if (!tree_edge[static_cast<size_t>(e)] && o.head[static_cast<size_t>(e)] < 0) {
          int h = g.edges[static_cast<size_t>(e)].second;
          o.head[static_cast<size_t>(e)] = h;
          ++indeg[static_cast<size_t>(h)];
        }
    // Tree edges from the leaves inward, each fixing its child's parity.
    for (size_t i = order.size(); i-- > 1;) {
      int x = order[i];
      int e = parent_edge[static_cast<size_t>(x)];
      auto [u, v] = g.edges[static_cast<size_t>(e)];
      int parent = u == x ? v : u;
      int h = indeg[static_cast<size_t>(x)] % 2 != 0 ? x : parent;
      o.head[static_cast<size_t>(e)] = h;
      ++indeg[static_cast<size_t>(h)];
    }
    check_internal(indeg[static_cast<size_t>(root)] % 2 == 0, "root parity not even in an even component");
  }
  return o;
}

EvenOrientation tree_even_orientation(const Multigraph& tree) {
  const int n = tree.num_vertices;
  if (n == 0 || tree.num_edges() != n - 1 || !is_acyclic(tree))
    throw Error(ErrorCode::NotATree, "graph is not a tree");
  if (tree.num_edges() % 2 != 0) throw Error(ErrorCode::OddTree, "tree has an odd number of edges");
  Adjacency adj(tree);
  std::vector<int> order{0}, parent_edge(static_cast<size_t>(n), -1), parent(static_cast<size_t>(n), -1);
  std::vector<char> seen(static_cast<size_t>(n), 0);
  seen[0] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (auto [y, e] : adj[order[i]])
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        parent[static_cast<size_t>(y)] = order[i];
        parent_edge[static_cast<size_t>(y)] = e;
        order.push_back(y);
      }
  // Edges inside the subtree hanging below each vertex.
  std::vector<int> below(static_cast<size_t>(n), 0);
  for (size_t i = order.size(); i-- > 1;) {
    int x = order[i];
    below[static_cast<size_t>(parent[static_cast<size_t>(x)])] += below[static_cast<size_t>(x)] + 1;
  }
  EvenOrientation o;
  o.head.assign(static_cast<size_t>(tree.num_edges()), -1);
  for (int x = 1; x < n; ++x) {
    int c = order[static_cast<size_t>(x)];
    // Edge (p, c): if the c-side subtree has an even edge count the edge
    // points away from it, into p.
    bool c_side_even = below[static_cast<size_t>(c)] % 2 == 0;
    o.head[static_cast<size_t>(parent_edge[static_cast<size_t>(c)])] =
        c_side_even ? parent[static_cast<size_t>(c)] : c;
  }
  return o;
}

EvenOrientation orientation_from_partition(const Multigraph& g, const EdgePartition& p) {
  check_internal(p.part.size() == g.edges.size(), "partition size differs from edge count");
  EvenOrientation o;
  o.head.assign(static_cast<size_t>(g.num_edges()), -1);
  for (Part which : {Part::First, Part::Second}) {
    std::vector<int> ids;
    for (int e = 0; e < g.num_edges(); ++e)
      if (p.part[static_cast<size_t>(e)] == which) ids.push_back(e);
    Multigraph sub = g.edge_subgraph(ids);
    std::vector<int> label = component_labels(sub);
    std::vector<int> count = component_edge_counts(sub, label);
    for (int v = 0; v < sub.num_vertices; ++v)
      if (count[static_cast<size_t>(label[static_cast<size_t>(v)])] % 2 != 0)
        throw Error(ErrorCode::OddComponentInPart,
                    "part " + std::to_string(static_cast<int>(which)) + " has an odd component at vertex " +
                        std::to_string(v),
                    {static_cast<int>(which), v});
    auto sub_o = even_orientation(sub);
    check_internal(sub_o.has_value(), "even part without even orientation");
    for (size_t i = 0; i < ids.size(); ++i) o.head[static_cast<size_t>(ids[i])] = sub_o->head[i];
  }
  return o;
}

int count_odd_components(const Multigraph& g) {
  std::vector<int> label = component_labels(g);
  std::vector<int> count = component_edge_counts(g, label);
  return static_cast<int>(std::count_if(count.begin(), count.end(), [](int c) { return c % 2 != 0; }));
}

PruneResult prune_odd_components(const Multigraph& g) {
  std::vector<int> label = component_labels(g);
  std::vector<int> count = component_edge_counts(g, label);
  Adjacency adj(g);
  std::vector<char> removed(static_cast<size_t>(g.num_edges()), 0);
  std::vector<char> handled(count.size(), 0);
  PruneResult out;

  for (int start = 0; start < g.num_vertices; ++start) {
    int c = label[static_cast<size_t>(start)];
    if (handled[static_cast<size_t>(c)] || count[static_cast<size_t>(c)] % 2 == 0) continue;
    handled[static_cast<size_t>(c)] = 1;
    // Leaf edge, smallest leaf first.
    int chosen = -1;
    for (int v = start; v < g.num_vertices && chosen < 0; ++v)
      if (label[static_cast<size_t>(v)] == c && adj[v].size() == 1) chosen = adj[v].front().second;
    if (chosen < 0) {
      // No leaf: DFS from `start` until the first back edge closes a cycle.
      std::vector<int> parent(static_cast<size_t>(g.num_vertices), -1), parent_edge(static_cast<size_t>(g.num_vertices), -1);
      std::vector<char> state(static_cast<size_t>(g.num_vertices), 0);  // 1 = on stack
      std::vector<std::pair<int, size_t>> stack{{start, 0}};
      state[static_cast<size_t>(start)] = 1;
      while (!stack.empty() && chosen < 0) {
        auto& [x, next] = stack.back();
        if (next == adj[x].size()) {
          state[static_cast<size_t>(x)] = 2;
          stack.pop_back();
          continue;
        }
        auto [y, e] = adj[x][next++];
        if (e == parent_edge[static_cast<size_t>(x)]) continue;
        if (state[static_cast<size_t>(y)] == 1) {
          int best = e;
          for (int w = x; w != y; w = parent[static_cast<size_t>(w)])
            best = std::min(best, parent_edge[static_cast<size_t>(w)]);
          chosen = best;
        } else if (state[static_cast<size_t>(y)] == 0) {
          state[static_cast<size_t>(y)] = 1;
          parent[static_cast<size_t>(y)] = x;
          parent_edge[static_cast<size_t>(y)] = e;
          stack.emplace_back(y, 0);
        }
      }
    }
    check_internal(chosen >= 0, "odd component without leaf or cycle");
    removed[static_cast<size_t>(chosen)] = 1;
    out.removed_edges.push_back(chosen);
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!removed[static_cast<size_t>(e)]) out.kept_edges.push_back(e);
  out.graph = g.edge_subgraph(out.kept_edges);
  return out;
}

bool is_acyclic(const Multigraph& g) {
  DisjointSets ds(g.num_vertices);
  for (auto [u, v] : g.edges)
    if (!ds.unite(u, v)) return false;
  return true;
}

bool is_spanning_tree(const Multigraph& g) {
  return g.num_vertices >= 1 && g.num_edges() == g.num_vertices - 1 && is_acyclic(g);
}

}  // namespace geomatch
