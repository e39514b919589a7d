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

// Parity machinery on abstract multigraphs: even orientations, the forced
// orientation of an even tree, orientations built from an edge partition, and
// odd-component counting / pruning.

#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace geomatch {

// Undirected multigraph. Edge ids are indices into `edges`; parallel edges
// are allowed, self-loops are not.
struct Multigraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int add_edge(int u, int v);
  // Subgraph on the same vertex set keeping the listed edge ids, renumbered
  // 0..k-1 in the order given.
  Multigraph edge_subgraph(const std::vector<int>& edge_ids) const;
};

// head[e] is the vertex edge e points into, or -1 for an edge that is left
// unassigned (only produced after pruning).
struct EvenOrientation {
  std::vector<int> head;

  std::vector<int> indegrees(const Multigraph& g) const;
};

// Component label per vertex, components numbered by smallest vertex id.
std::vector<int> component_labels(const Multigraph& g);

// Edge-count parity is even for every component iff an even orientation
// exists. Returns nullopt exactly when some component is odd.
std::optional<EvenOrientation> even_orientation(const Multigraph& g);

// The unique even orientation of an even tree, by the subtree-parity rule.
// Throws NotATree / OddTree.
EvenOrientation tree_even_orientation(const Multigraph& tree);

enum class Part { First = 1, Second = 2 };

struct EdgePartition {
  std::vector<Part> part;  // per edge id
};

// Union of independent even orientations of the two parts. Throws
// OddComponentInPart(part, component vertex) if either part has an odd
// component.
EvenOrientation orientation_from_partition(const Multigraph& g, const EdgePartition& p);

// f(G): number of components with an odd number of edges.
int count_odd_components(const Multigraph& g);

struct PruneResult {
  Multigraph graph;                // same vertices, surviving edges renumbered
  std::vector<int> kept_edges;     // original id of each surviving edge
  std::vector<int> removed_edges;  // original ids, one per odd component
};

// Removes one edge per odd component (a leaf edge if the component has a
// leaf, else the smallest-id edge on the first cycle found) so that no odd
// component remains.
PruneResult prune_odd_components(const Multigraph& g);

// True iff the edges form a forest (no cycle, counting parallel edges).
bool is_acyclic(const Multigraph& g);
// Acyclic with |V| - 1 edges.
bool is_spanning_tree(const Multigraph& g);

}  // namespace geomatch
