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


// Acceptance suite: one PASS/FAIL line per criterion, each with its pinned
// instance counts and time limit. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>

#include "geom_oracles.hpp"
#include "geomatch/algorithms.hpp"
#include "geomatch/io.hpp"
#include "geomatch/oracle.hpp"
#include "graph_oracles.hpp"
#include "test_support.hpp"

using namespace geomatch;
using namespace geomatch::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && failures_++ == 0) first_ = what;
  }
  bool ok() const { return failures_ == 0; }
  std::string failure() const { return std::to_string(failures_) + " failure(s), first: " + first_; }

 private:
  int failures_ = 0;
  std::string first_;
};

bool union_non_crossing(const Matching& a, const Matching& b) {
  const PointSet& ps = a.base();
  std::vector<Segment> all = a.edges();
  all.insert(all.end(), b.edges().begin(), b.edges().end());
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      if (all[i] != all[j] && segments_cross(ps[all[i].a], ps[all[i].b], ps[all[j].a], ps[all[j].b])) return false;
  return true;
}

bool disjoint_compatible(const Matching& m, const Matching& out) {
  for (const Segment& s : out.edges())
    if (m.contains(s)) return false;
  return union_non_crossing(m, out);
}

int log2_ceil(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

// |E| = |V| - 1 and no union-find cycle.
bool spanning_tree(int vertices, const std::vector<std::pair<int, int>>& edges) {
  if (static_cast<int>(edges.size()) != vertices - 1) return false;
  std::vector<int> parent(static_cast<size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]);
  };
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a == b) return false;
    parent[static_cast<size_t>(a)] = b;
  }
  return true;
}

std::vector<std::pair<int, int>> colored(const DualMultigraph& g, EdgeColor c) {
  std::vector<std::pair<int, int>> out;
  for (const DualEdge& e : g.edges)
    if (e.color == c) out.emplace_back(e.u, e.v);
  return out;
}

Outcome transformation_bound() {
  Check c;
  std::mt19937_64 rng(101);
  int worst = 0;
  for (int n : {2, 4, 8, 16, 32, 64})
    for (int trial = 0; trial < 100; ++trial) {
      Matching m = gen_random_matching(n, rng(), Flavor::General);
      Matching m2 = random_matching_on(m.base_ptr(), rng);
      TransformationSequence seq = transform(m, m2);
      std::string tag = "n=" + std::to_string(n) + " trial " + std::to_string(trial);
      c.expect(seq.length() <= 2 * log2_ceil(n), tag + ": length " + std::to_string(seq.length()));
      c.expect(seq.matchings.front() == m && seq.matchings.back() == m2, tag + ": endpoints");
      for (size_t i = 0; i < seq.matchings.size(); ++i) {
        c.expect(seq.matchings[i].is_perfect(), tag + ": imperfect step");
        if (i > 0) c.expect(compatible(seq.matchings[i - 1], seq.matchings[i]), tag + ": incompatible steps");
      }
      worst = std::max(worst, seq.length() - 2 * log2_ceil(n));
    }
  return {c.ok(), c.ok() ? "600 pairs, max(length - bound) = " + std::to_string(worst) : c.failure()};
}

Outcome oracle_consistency() {
  Check c;
  std::mt19937_64 rng(202);
  int tight = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 4;
    Matching m = gen_random_matching(n, rng(), Flavor::General);
    Matching m2 = random_matching_on(m.base_ptr(), rng);
    int len = transform(m, m2).length();
    int d = transformation_distance(m, m2);
    c.expect(d <= len, "trial " + std::to_string(trial) + ": distance " + std::to_string(d) + " > " + std::to_string(len));
    tight += d == len;
  }
  return {c.ok(), c.ok() ? "50 pairs, distance = length in " + std::to_string(tight) : c.failure()};
}

Outcome hv_theorem() {
  Check c;
  int even = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 1 + i % 50;
    Matching m = gen_random_matching(n, 3000 + static_cast<std::uint64_t>(i), Flavor::AxisParallel);
    std::string tag = "instance " + std::to_string(i);
    ColoredDual cd = hv_two_trees(m);
    c.expect(spanning_tree(cd.dual.num_cells, colored(cd.dual, EdgeColor::Red)), tag + ": red");
    c.expect(spanning_tree(cd.dual.num_cells, colored(cd.dual, EdgeColor::Green)), tag + ": green");
    c.expect(static_cast<int>(colored(cd.dual, EdgeColor::Red).size()) == n, tag + ": red edge count");
    if (n % 2 == 0) {
      Matching out = hv_disjoint_matching(m).matching;
      c.expect(out.is_perfect() && disjoint_compatible(m, out), tag + ": output");
      ++even;
    }
  }
  return {c.ok(), c.ok() ? "200 instances (" + std::to_string(even) + " even), n <= 50" : c.failure()};
}

Outcome four_fifths_theorem() {
  Check c;
  int slack = 1 << 30;
  for (int i = 0; i < 200; ++i) {
    int n = 2 * (1 + i % 25);
    Matching m = gen_random_matching(n, 4000 + static_cast<std::uint64_t>(i), Flavor::General);
    std::string tag = "instance " + std::to_string(i);
    FourFifthsReport r = four_fifths_matching(m);
    int bound = (4 * n - 1 + 4) / 5;
    c.expect(spanning_tree(r.dual.dual.num_cells, colored(r.dual.dual, EdgeColor::Blue)), tag + ": blue");
    c.expect(disjoint_compatible(m, r.matching), tag + ": output");
    c.expect(r.matching.size() >= bound, tag + ": size " + std::to_string(r.matching.size()) + " < " + std::to_string(bound));
    c.expect(5 * r.odd_components <= 2 * (n + 1), tag + ": f(R) = " + std::to_string(r.odd_components));
    slack = std::min(slack, r.matching.size() - bound);
  }
  return {c.ok(), c.ok() ? "200 instances, min(|M'| - bound) = " + std::to_string(slack) : c.failure()};
}

Outcome chc_theorem() {
  Check c;
  for (int i = 0; i < 100; ++i) {
    int n = 2 * (1 + i % 10);
    Matching m = gen_random_matching(n, 5000 + static_cast<std::uint64_t>(i), Flavor::CHC);
    Matching out = chc_disjoint_matching(m);
    c.expect(out.is_perfect() && disjoint_compatible(m, out), "instance " + std::to_string(i));
  }
  return {c.ok(), c.ok() ? "100 instances, n <= 20" : c.failure()};
}

Outcome odd_counterexamples() {
  Check c;
  for (int k : {1, 3, 5}) c.expect(!has_disjoint_compatible_pm(gen_parallel_chords(k, 100)), "chords k=" + std::to_string(k));
  c.expect(has_disjoint_compatible_pm(gen_parallel_chords(4, 100)), "chords k=4");
  for (int n : {1, 2}) {
    Matching m = gen_general_odd(n);
    c.expect(!has_disjoint_compatible_pm(m), "general odd n=" + std::to_string(n));
  }
  return {c.ok(), c.ok() ? "chords k=1,3,5 none, k=4 found; general odd n=1,2 none" : c.failure()};
}

bool all_even(const Multigraph& g, const EvenOrientation& o) {
  for (int d : o.indegrees(g))
    if (d % 2 != 0) return false;
  for (size_t e = 0; e < g.edges.size(); ++e)
    if (o.head[e] != g.edges[e].first && o.head[e] != g.edges[e].second) return false;
  return true;
}

Outcome even_orientation_lemma() {
  Check c;
  long small = 0;
  for_each_small_multigraph(4, 6, [&](const Multigraph& g) {
    ++small;
    auto o = even_orientation(g);
    c.expect(o.has_value() == !all_even_orientations(g).empty(), "small graph existence");
    c.expect(o.has_value() == every_component_even(g), "small graph parity");
    if (o) c.expect(all_even(g, *o), "small graph indegrees");
  });
  std::mt19937_64 rng(707);
  for (int i = 0; i < 1000; ++i) {
    Multigraph g = random_multigraph(rng, 12, 24);
    auto o = even_orientation(g);
    c.expect(o.has_value() == every_component_even(g), "random graph parity");
    if (o) c.expect(all_even(g, *o), "random graph indegrees");
  }
  int trees = 0;
  for (int edges = 0; edges <= 10; edges += 2)
    for (int i = 0; i < 20; ++i, ++trees) {
      Multigraph t = random_tree(rng, edges);
      auto brute = all_even_orientations(t);
      c.expect(brute.size() == 1, "tree has a unique even orientation");
      if (brute.size() == 1) c.expect(tree_even_orientation(t).head == brute[0], "tree orientation");
    }
  return {c.ok(), c.ok() ? std::to_string(small) + " small + 1000 random multigraphs, " + std::to_string(trees) + " even trees" : c.failure()};
}

Outcome crossings_theorem() {
  Check c;
  for (int i = 0; i < 100; ++i) {
    int n = 2 * (1 + i % 10);
    Matching m = gen_random_matching(n, 8000 + static_cast<std::uint64_t>(i), Flavor::General);
    CrossingsResult r = crossings_matchings(m);
    std::string tag = "instance " + std::to_string(i);
    const PointSet& ps = m.base();
    VisibilityGraph vis = visibility_graph(m, true);
    std::vector<int> degree(static_cast<size_t>(ps.size()), 0);
    for (const Matching* half : {&r.left, &r.right})
      for (const Segment& s : half->edges()) {
        ++degree[static_cast<size_t>(s.a)], ++degree[static_cast<size_t>(s.b)];
        c.expect(vis.has_edge(s.a, s.b), tag + ": not in the visibility graph minus E(M)");
        c.expect(!m.contains(s), tag + ": edge of M reused");
        for (const Segment& t : m.edges()) c.expect(!segments_cross(ps[s.a], ps[s.b], ps[t.a], ps[t.b]), tag + ": crosses M");
      }
    for (int d : degree) c.expect(d == 1, tag + ": not a perfect pairing");
  }
  return {c.ok(), c.ok() ? "100 instances, n <= 20" : c.failure()};
}

Outcome enumeration_sanity() {
  Check c;
  for (int m = 1; m <= 6; ++m) {
    long got = static_cast<long>(enumerate_ncpm(parabola_points(2 * m)).size());
    c.expect(got == catalan(m), "m=" + std::to_string(m) + ": " + std::to_string(got));
  }
  return {c.ok(), c.ok() ? "Catalan(1..6) = 1, 2, 5, 14, 42, 132" : c.failure()};
}

Outcome conjecture_probe() {
  std::mt19937_64 rng(1010);
  for (int i = 0; i < 500; ++i) {
    int n = 2 * (1 + i % 3);
    Matching m = gen_random_matching(n, rng(), Flavor::General);
    if (!has_disjoint_compatible_pm(m)) {
      std::string dump = serialize_instance(m);
      write_file("acceptance_counterexample.txt", dump);
      std::cerr << "counterexample candidate, re-verify before any claim:\n" << dump;
      return {false, "instance " + std::to_string(i) + " has no disjoint compatible perfect matching (dumped)"};
    }
  }
  return {true, "500 instances, n in {2, 4, 6}"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "transformation bound", 60, transformation_bound},
      {2, "oracle consistency", 60, oracle_consistency},
      {3, "axis-parallel two trees", 60, hv_theorem},
      {4, "four-fifths bound", 120, four_fifths_theorem},
      {5, "convex-hull-connected", 120, chc_theorem},
      {6, "odd counterexamples", 60, odd_counterexamples},
      {7, "even orientation", 60, even_orientation_lemma},
      {8, "endpoint matchings", 120, crossings_theorem},
      {9, "enumeration sanity", 30, enumeration_sanity},
      {10, "conjecture probe", 600, conjecture_probe},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < cr.limit_s;
    bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("criterion %2d %s  %-26s %7.2f s (limit %3.0f s)  %s%s\n", cr.id, pass ? "PASS" : "FAIL", cr.name, secs,
                cr.limit_s, o.detail.c_str(), in_time ? "" : " [time limit exceeded]");
    std::fflush(stdout);
    if (cr.id == 10 && !o.ok) break;
  }
  return failed == 0 ? 0 : 1;
}
