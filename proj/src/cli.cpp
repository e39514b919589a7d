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


#include "geomatch/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "geomatch/algorithms.hpp"
#include "geomatch/io.hpp"
#include "geomatch/oracle.hpp"
#include "geomatch/svg.hpp"

namespace geomatch {

namespace {

struct RunOptions {
  std::string algorithm;
  std::vector<std::string> inputs;
  std::string output;
  std::string svg;
  bool verify = false;
  bool oracle = false;
  bool shear = false;
  int max_orders = 24;
};

struct GenOptions {
  std::string flavor;
  int size = 0;
  std::uint64_t seed = 1;
  std::string radius = "100";
  std::string output;
};

struct RenderOptions {
  std::string input;
  std::string output;
  std::string layers = "segments,extensions,cells,dual";
};

void verify(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::Internal, "verification failed: " + what);
}

bool crosses_any(const Matching& m, const Segment& s) {
  for (const Segment& t : m.edges())
    if (t != s && segments_cross(m.point(s.a), m.point(s.b), m.point(t.a), m.point(t.b))) return true;
  return false;
}

// Disjoint from M, crossing no edge of M, pairwise non-crossing.
bool disjoint_compatible(const Matching& m, const Matching& out) {
  for (const Segment& s : out.edges())
    if (m.contains(s) || crosses_any(m, s)) return false;
  for (const Segment& s : out.edges())
    if (crosses_any(out, s)) return false;
  return true;
}

bool trees_split(const Matching& m, const ColoredDual& cd, EdgeColor a, EdgeColor b) {
  if (!is_spanning_tree(cd.subgraph(a)) || !is_spanning_tree(cd.subgraph(b))) return false;
  for (const Segment& s : m.edges()) {
    const DualEdge& ea = cd.dual.edges[static_cast<size_t>(cd.dual.edge_of_vertex[static_cast<size_t>(s.a)])];
    const DualEdge& eb = cd.dual.edges[static_cast<size_t>(cd.dual.edge_of_vertex[static_cast<size_t>(s.b)])];
    if (ea.color == eb.color) return false;
  }
  return true;
}

void oracle_pm(const Matching& m, std::ostream& out) {
  if (m.base().size() > kEnumerateGuard) {
    out << "oracle: skipped (" << m.base().size() << " points > " << kEnumerateGuard << ")\n";
    return;
  }
  bool exists = has_disjoint_compatible_pm(m);
  out << "oracle: disjoint compatible perfect matching " << (exists ? "exists" : "does not exist") << "\n";
  verify(exists || m.size() % 2 != 0, "oracle finds no disjoint compatible perfect matching");
}

// Loaded instance, optionally sheared; results are mapped back to `original`.
struct Loaded {
  Matching original;
  Matching work;
};

Loaded load(const std::string& path, bool shear_points) {
  Matching m = to_matching(parse_instance(read_file(path)));
  if (!shear_points) return {m, m};
  PointSetPtr sheared = std::make_shared<const PointSet>(shear(m.base(), safe_shear_factor(m.base())));
  return {m, Matching(sheared, m.edges())};
}

Matching back(const Loaded& in, const Matching& result) { return Matching::trusted(in.original.base_ptr(), result.edges()); }

void emit(const RunOptions& opt, const std::string& artifact, std::ostream& out, std::ostream& err, std::ostringstream& summary) {
  if (opt.output.empty()) {
    out << artifact;
    err << summary.str();
  } else {
    write_file(opt.output, artifact);
    out << summary.str();
  }
}

std::string step_path(const std::string& path, size_t k) {
  std::string stem = path;
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".svg") stem.resize(stem.size() - 4);
  return stem + "-step-" + std::to_string(k) + ".svg";
}

void write_scene_svg(const std::string& path, const Matching& m, const ColoredDual* cd, std::vector<SvgOverlay> overlays) {
  SvgScene scene;
  scene.matching = &m;
  if (cd) {
    scene.extension = &cd->extension.geometry;
    scene.subdivision = &cd->extension.subdivision;
    scene.dual = &cd->dual;
  }
  scene.overlays = std::move(overlays);
  write_file(path, render_svg(scene, SvgLayers{}, bounding_box(m.base())));
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  std::ostringstream summary;
  const std::string& alg = opt.algorithm;
  size_t wanted = alg == "transform" ? 2 : 1;
  if (opt.inputs.size() != wanted)
    throw ParseError(1, 1, alg + " takes " + std::to_string(wanted) + " input file" + (wanted == 1 ? "" : "s"));
  Loaded in = load(opt.inputs[0], opt.shear);
  const Matching& m = in.work;
  const int n = m.size();
  summary << alg << ": n = " << n << "\n";

  if (alg == "transform") {
    Matching target = rebase(parse_instance(read_file(opt.inputs[1])), m.base_ptr());
    TransformationSequence seq = transform(m, target);
    std::vector<Matching> steps;
    for (const Matching& s : seq.matchings) steps.push_back(back(in, s));
    summary << "length " << seq.length() << " (bound " << 2 * ceil_log2(n) << ")\n";
    if (opt.verify) {
      verify(seq.length() <= 2 * ceil_log2(n), "length exceeds the bound");
      verify(seq.matchings.front() == m && seq.matchings.back() == target, "sequence endpoints");
      for (size_t i = 0; i < steps.size(); ++i) {
        verify(steps[i].is_perfect(), "step " + std::to_string(i) + " is not perfect");
        if (i > 0) verify(compatible(steps[i - 1], steps[i]), "steps " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not compatible");
      }
      summary << "verify: ok\n";
    }
    if (opt.oracle) {
      if (m.base().size() <= kDistanceGuard) {
        int d = transformation_distance(m, target);
        summary << "oracle: distance " << d << "\n";
        verify(d <= seq.length(), "oracle distance exceeds the produced length");
      } else {
        summary << "oracle: skipped (" << m.base().size() << " points > " << kDistanceGuard << ")\n";
      }
    }
    if (!opt.svg.empty())
      for (size_t k = 0; k < steps.size(); ++k) write_scene_svg(step_path(opt.svg, k), steps[k], nullptr, {});
    emit(opt, serialize_sequence(steps), out, err, summary);
    return 0;
  }

  if (alg == "hv" || alg == "chc" || alg == "two-trees-search") {
    std::optional<Matching> result;
    std::optional<ColoredDual> cd;
    if (alg == "hv") {
      HvResult r = hv_disjoint_matching(m);
      if (opt.verify) verify(trees_split(m, r.dual, EdgeColor::Red, EdgeColor::Green), "red and green spanning trees");
      result = r.matching;
      cd = std::move(r.dual);
    } else if (alg == "chc") {
      result = chc_disjoint_matching(m);
    } else {
      TwoTreesResult r = two_trees_search(m, opt.max_orders);
      summary << (r.found ? "witness found" : "no witness") << " after " << r.orders_tried << " order(s), "
              << r.partition_nodes << " partition node(s)\n";
      if (r.found && opt.verify) verify(trees_split(m, *r.dual, EdgeColor::Red, EdgeColor::Green), "witness trees");
      result = r.matching;
      cd = std::move(r.dual);
    }
    if (result) {
      summary << "matching: " << result->size() << " segment(s)\n";
      if (opt.verify) verify(result->is_perfect() && disjoint_compatible(m, *result), "output is not a disjoint compatible perfect matching");
    }
    if (opt.verify) summary << "verify: ok\n";
    if (opt.oracle) oracle_pm(m, summary);
    std::vector<SvgOverlay> overlays;
    Matching shown = result ? *result : Matching();
    if (result) overlays.push_back({&shown, "blue"});
    if (!opt.svg.empty()) write_scene_svg(opt.svg, m, cd ? &*cd : nullptr, overlays);
    emit(opt, result ? serialize_instance(back(in, *result)) : std::string(), out, err, summary);
    return 0;
  }

  if (alg == "four-fifths") {
    FourFifthsReport r = four_fifths_matching(m);
    summary << "guarantee " << r.guarantee << ", achieved " << r.achieved << ", odd components " << r.odd_components << "\n";
    if (opt.verify) {
      verify(r.achieved >= r.guarantee, "achieved below the guarantee");
      verify(2 * r.achieved == 2 * n - r.odd_components, "achieved differs from (2n - f) / 2");
      verify(5 * r.odd_components <= 2 * n + 2, "too many odd components");
      verify(is_spanning_tree(r.dual.subgraph(EdgeColor::Blue)), "blue spanning tree");
      verify(disjoint_compatible(m, r.matching), "output is not disjoint and compatible");
      summary << "verify: ok\n";
    }
    if (opt.oracle) oracle_pm(m, summary);
    if (!opt.svg.empty()) write_scene_svg(opt.svg, m, &r.dual, {{&r.matching, "green"}});
    emit(opt, serialize_instance(back(in, r.matching)), out, err, summary);
    return 0;
  }

  if (alg == "crossings") {
    CrossingsResult r = crossings_matchings(m);
    summary << "left: " << r.left.size() << " segment(s), right: " << r.right.size() << " segment(s)\n";
    VisibilityGraph vis = visibility_graph(m, true);
    if (opt.verify) {
      std::set<int> covered;
      for (const Matching* half : {&r.left, &r.right})
        for (const Segment& s : half->edges()) {
          verify(!crosses_any(m, s), "an output edge crosses M");
          verify(vis.has_edge(s.a, s.b), "an output edge is not in the visibility graph minus E(M)");
          covered.insert(s.a), covered.insert(s.b);
        }
      verify(static_cast<int>(covered.size()) == m.base().size(), "left and right matchings do not cover every vertex");
      summary << "verify: ok\n";
    }
    if (opt.oracle) {
      if (m.base().size() <= kGraphMatchingGuard) {
        bool ok = graph_perfect_matching_exists(vis);
        summary << "oracle: visibility graph minus E(M) " << (ok ? "has" : "has no") << " perfect matching\n";
        verify(ok, "oracle finds no perfect matching of the visibility graph");
      } else {
        summary << "oracle: skipped\n";
      }
    }
    if (!opt.svg.empty()) write_scene_svg(opt.svg, m, nullptr, {{&r.left, "red"}, {&r.right, "blue"}});
    emit(opt, "# left endpoints\n" + serialize_instance(back(in, r.left)) + "# right endpoints\n" + serialize_instance(back(in, r.right)),
         out, err, summary);
    return 0;
  }
  throw ParseError(1, 1, "unknown algorithm '" + alg + "'");
}

int cmd_validate(const std::string& path, std::ostream& out) {
  std::string text = read_file(path);
  if (looks_like_sequence(text)) {
    SequenceFile seq = parse_sequence(text);
    validate_general_position(*seq.points);
    for (size_t k = 0; k < seq.steps.size(); ++k) {
      Matching step(seq.points, seq.steps[k]);
      if (!step.is_perfect()) throw Error(ErrorCode::NotPerfect, "step " + std::to_string(k) + " is not perfect");
    }
    out << seq.steps.size() << " steps over " << seq.points->size() << " points: each perfect, non-crossing\n";
    return 0;
  }
  Matching m = to_matching(parse_instance(text));
  out << m.size() << " segment(s): perfect, non-crossing\n";
  return 0;
}

int cmd_gen(const GenOptions& opt, std::ostream& out) {
  Matching m;
  if (opt.flavor == "random")
    m = gen_random_matching(opt.size, opt.seed, Flavor::General);
  else if (opt.flavor == "hv")
    m = gen_random_matching(opt.size, opt.seed, Flavor::AxisParallel);
  else if (opt.flavor == "chc")
    m = gen_random_matching(opt.size, opt.seed, Flavor::CHC);
  else if (opt.flavor == "parallel-chords") {
    Scalar r;
    if (r.set_str(opt.radius, 10) != 0 || r.get_den() == 0) throw ParseError(1, 1, "bad radius '" + opt.radius + "'");
    r.canonicalize();
    m = gen_parallel_chords(opt.size, r);
  } else if (opt.flavor == "general-odd")
    m = gen_general_odd(opt.size, opt.seed);
  else
    throw ParseError(1, 1, "unknown flavor '" + opt.flavor + "'");
  std::string text = serialize_instance(m);
  if (opt.output.empty())
    out << text;
  else
    write_file(opt.output, text);
  return 0;
}

void render_one(const Matching& m, const SvgLayers& layers, const std::string& path) {
  Region region = Region::box(bounding_box(m.base()));
  Extension ext = extend(m, region, default_directives(m, region));
  DualMultigraph dual = dual_multigraph(ext.subdivision, m);
  SvgScene scene;
  scene.matching = &m;
  scene.extension = &ext.geometry;
  scene.subdivision = &ext.subdivision;
  scene.dual = &dual;
  write_file(path, render_svg(scene, layers, bounding_box(m.base())));
}

int cmd_render(const RenderOptions& opt, std::ostream& out) {
  SvgLayers layers = parse_layers(opt.layers);
  std::string text = read_file(opt.input);
  if (looks_like_sequence(text)) {
    SequenceFile seq = parse_sequence(text);
    for (size_t k = 0; k < seq.steps.size(); ++k) {
      std::string path = step_path(opt.output, k);
      render_one(Matching(seq.points, seq.steps[k]), layers, path);
      out << path << "\n";
    }
    return 0;
  }
  render_one(to_matching(parse_instance(text)), layers, opt.output);
  out << opt.output << "\n";
  return 0;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("GEOMATCH_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw ParseError(1, 1, std::string("GEOMATCH_SEED is not an integer: '") + env + "'");
  return v;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compatible geometric matchings: validation, constructions, generators and rendering.", "geomatch"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check an instance or sequence file");
  validate->add_option("file", validate_path, "Input file")->required();

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a construction on an instance");
  run_cmd->add_option("algorithm", run.algorithm, "transform, hv, chc, four-fifths, crossings, two-trees-search")
      ->required()
      ->check(CLI::IsMember({"transform", "hv", "chc", "four-fifths", "crossings", "two-trees-search"}));
  run_cmd->add_option("inputs", run.inputs, "Instance file(s)")->required();
  run_cmd->add_option("-o,--output", run.output, "Write the result here instead of stdout");
  run_cmd->add_option("--svg", run.svg, "Write an SVG drawing");
  run_cmd->add_flag("--verify", run.verify, "Re-check every property of the result");
  run_cmd->add_flag("--oracle", run.oracle, "Cross-check against brute force when small enough");
  run_cmd->add_flag("--shear", run.shear, "Shear the points first so x-coordinates become distinct");
  run_cmd->add_option("--max-orders", run.max_orders, "Extension orders tried by two-trees-search");

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("flavor", gen.flavor, "random, hv, chc, parallel-chords, general-odd")
      ->required()
      ->check(CLI::IsMember({"random", "hv", "chc", "parallel-chords", "general-odd"}));
  gen_cmd->add_option("n", gen.size, "Segments (chords for parallel-chords)")->required()->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = gen_cmd->add_option("--seed", gen.seed, "Random seed (default: GEOMATCH_SEED or 1)");
  gen_cmd->add_option("--radius", gen.radius, "Circle radius for parallel-chords");
  gen_cmd->add_option("-o,--output", gen.output, "Output file");

  RenderOptions render;
  CLI::App* render_cmd = app.add_subcommand("render", "Draw an instance or each step of a sequence");
  render_cmd->add_option("file", render.input, "Input file")->required();
  render_cmd->add_option("-o,--output", render.output, "SVG path (sequences get -step-k suffixes)")->required();
  render_cmd->add_option("--layers", render.layers, "Comma-separated: segments,extensions,cells,dual");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_path, out);
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    if (gen_cmd->parsed()) {
      if (seed_opt->count() == 0) gen.seed = default_seed();
      return cmd_gen(gen, out);
    }
    if (render_cmd->parsed()) return cmd_render(render, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.code() == ErrorCode::ParseError) return 2;
    if (e.code() == ErrorCode::Internal) return 3;
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace geomatch
