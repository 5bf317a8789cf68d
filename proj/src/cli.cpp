#include "jigsaw/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "jigsaw/edge_list.hpp"
#include "jigsaw/engine.hpp"
#include "jigsaw/error.hpp"
#include "jigsaw/experiments.hpp"
#include "jigsaw/generators.hpp"
#include "jigsaw/theory.hpp"

namespace jigsaw {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

std::size_t parse_size(const std::string& s, const std::string& context) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw InputError(fmt::format("bad number '{}' in {}", s, context));
  }
  return v;
}

Graph load_graph(const std::string& path, GraphRole role) {
  try {
    return graph_from_file(path, role);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string rule_name(MergeRule rule) { return rule == MergeRule::kStandard ? "std" : "ae"; }

MergeRule parse_rule(const std::string& s) {
  if (s == "std" || s == "standard") return MergeRule::kStandard;
  if (s == "ae" || s == "adjacent-edge") return MergeRule::kAdjacentEdge;
  throw InputError("unknown rule '" + s + "' (expected std or ae)");
}

Json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  Json j = Json::object();
  for (const auto& [size, count] : h) j[std::to_string(size)] = count;
  return j;
}

struct Common {
  std::uint64_t seed = 1;
  unsigned workers = 0;
  bool quiet = false;
};

ExperimentOptions make_options(const Common& common, MergeRule rule, std::ostream& err) {
  ExperimentOptions opt;
  opt.rule = rule;
  opt.workers = common.workers;
  if (!common.quiet) {
    opt.progress = [&err](std::size_t done, std::size_t total) {
      const std::size_t step = std::max<std::size_t>(1, total / 20);
      if (done % step == 0 || done == total) err << "progress " << done << "/" << total << "\n";
    };
  }
  return opt;
}

double default_grid_max(std::size_t n) {
  return std::min(1.0, 1.05 * (n < 3 ? 1.0 : upper_bound_pc(n)));
}

// ---- gen

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  double p = 0.0;
  double gamma = 2.5;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t max_deg = 3;
  std::string out_path;
};

int cmd_gen(const GenArgs& a, const Common& common, std::ostream& out) {
  const Seed seed{common.seed, 0};
  Json params = Json::object();
  Graph g;
  if (a.kind == "torus") {
    std::size_t rows = a.rows;
    std::size_t cols = a.cols;
    if (rows == 0 && cols == 0 && a.n > 0) {
      rows = cols = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.n))));
      if (rows * cols != a.n) throw InputError("torus needs --rows/--cols or a square --n");
    }
    g = torus_puzzle(rows, cols);
    params["rows"] = rows;
    params["cols"] = cols;
  } else {
    if (a.n == 0) throw InputError("gen " + a.kind + " needs --n");
    if (a.kind == "cycle" || a.kind == "ring") {
      g = cycle_puzzle(a.n);
    } else if (a.kind == "star") {
      g = star_puzzle(a.n);
    } else if (a.kind == "path") {
      g = path_puzzle(a.n);
    } else if (a.kind == "complete") {
      g = complete_graph(a.n);
    } else if (a.kind == "tree") {
      g = random_tree_puzzle(a.n, a.max_deg, seed);
      params["max_deg"] = a.max_deg;
    } else if (a.kind == "er") {
      if (!(a.p >= 0.0 && a.p <= 1.0)) throw InputError("--p must lie in [0, 1]");
      g = erdos_renyi(a.n, a.p, seed);
      params["p"] = a.p;
    } else if (a.kind == "powerlaw") {
      g = power_law_people(a.n, a.gamma, seed);
      params["gamma"] = a.gamma;
    } else {
      throw InputError("unknown graph kind '" + a.kind + "'");
    }
  }
  const std::string path = a.out_path.empty() ? a.kind + ".edges" : a.out_path;
  write_edge_list_file(path, g);
  Json j;
  j["command"] = "gen";
  j["kind"] = a.kind;
  j["n"] = g.vertex_count();
  j["m"] = g.edge_count();
  j["max_degree"] = max_degree(g);
  j["params"] = params;
  j["seed"] = common.seed;
  j["out"] = path;
  out << j.dump() << "\n";
  return 0;
}

// ---- run

struct RunArgs {
  std::string puzzle;
  std::string people;
  std::string rule = "std";
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  const MergeRule rule = parse_rule(a.rule);
  JigsawInstance inst(load_graph(a.people, GraphRole::kPeople), puzzle_from_spec(a.puzzle));
  const TrialOutcome res = run(inst, rule);
  Json j;
  j["command"] = "run";
  j["puzzle"] = a.puzzle;
  j["people"] = a.people;
  j["rule"] = rule_name(rule);
  j["n"] = inst.vertex_count();
  j["solved"] = res.solved;
  j["rounds"] = res.rounds.value_or(0);
  j["clusters"] = res.final_cluster_count;
  j["largest"] = res.largest_cluster;
  j["histogram"] = histogram_json(res.histogram);
  j["cluster_counts"] = res.cluster_counts;
  out << j.dump() << "\n";
  return 0;
}

// ---- sweep

struct GridArgs {
  double min = 0.0;
  std::optional<double> max;
  std::size_t points = 21;
};

struct SweepArgs {
  std::string puzzle;
  GridArgs grid;
  std::size_t trials = 200;
  std::string rule = "std";
  std::string out_path = "-";
  std::string format = "csv";
  bool independent = false;
};

std::vector<double> make_grid(const GridArgs& g, std::size_t n) {
  const double hi = g.max.value_or(default_grid_max(n));
  if (!(g.min >= 0.0 && hi <= 1.0 && g.min <= hi)) {
    throw InputError(fmt::format("grid must satisfy 0 <= min <= max <= 1 (got {}..{})", g.min, hi));
  }
  if (g.points == 0) throw InputError("grid needs at least one point");
  return linear_grid(g.min, hi, g.points);
}

int cmd_sweep(const SweepArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  const MergeRule rule = parse_rule(a.rule);
  if (a.format != "csv" && a.format != "jsonl") throw InputError("--format must be csv or jsonl");
  const Graph puzzle = puzzle_from_spec(a.puzzle);
  const auto grid = make_grid(a.grid, puzzle.vertex_count());
  auto opt = make_options(common, rule, err);
  opt.coupled = !a.independent;
  const auto points = sweep(puzzle, grid, a.trials, common.seed, opt);

  std::ofstream file;
  std::ostream* sink = &out;
  if (a.out_path != "-") {
    file.open(a.out_path);
    if (!file) throw InputError("cannot write " + a.out_path);
    sink = &file;
  }
  if (a.format == "csv") {
    write_sweep_csv(*sink, points);
  } else {
    Json meta;
    meta["seed"] = common.seed;
    meta["puzzle"] = a.puzzle;
    meta["n"] = puzzle.vertex_count();
    meta["generator"] = "er";
    meta["coupled"] = !a.independent;
    meta["rule"] = rule_name(rule);
    write_sweep_jsonl(*sink, points, meta.dump());
  }
  if (file.is_open()) {
    file.close();
    if (!file) throw InputError("write failed for " + a.out_path);
  }
  return 0;
}

// ---- estimate-pc

struct PcArgs {
  std::string puzzle;
  std::size_t trials = 200;
  std::string strategy = "grid";
  GridArgs grid;
  double tolerance = 1e-4;
};

int cmd_estimate_pc(const PcArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  const Graph puzzle = puzzle_from_spec(a.puzzle);
  const auto opt = make_options(common, MergeRule::kStandard, err);
  Json j;
  j["command"] = "estimate-pc";
  j["puzzle"] = a.puzzle;
  j["n"] = puzzle.vertex_count();
  j["strategy"] = a.strategy;
  PcEstimate est;
  if (a.strategy == "grid") {
    const auto grid = make_grid(a.grid, puzzle.vertex_count());
    est = estimate_pc(puzzle, a.trials, GridStrategy{grid}, common.seed, opt);
    j["grid"] = {{"min", grid.front()}, {"max", grid.back()}, {"points", grid.size()}};
  } else if (a.strategy == "bisect" || a.strategy == "bisection") {
    est = estimate_pc(puzzle, a.trials, BisectionStrategy{a.tolerance, 0.0}, common.seed, opt);
    j["tolerance"] = a.tolerance;
  } else {
    throw InputError("--strategy must be grid or bisect");
  }
  j["trials_per_point"] = est.trials_per_point;
  j["seed"] = est.master_seed;
  j["p_low"] = est.p_low;
  j["p_high"] = est.p_high;
  j["fraction_low"] = est.fraction_low;
  j["fraction_high"] = est.fraction_high;
  j["p_c_hat"] = est.p_c_hat;
  out << j.dump() << "\n";
  return 0;
}

// ---- bounds

struct BoundsArgs {
  std::size_t n = 0;
  double t_min = 0.001;
  double t_max = 0.333;
  double t_step = 0.001;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const auto best = ring_lower_objective_max(a.t_min, a.t_max, a.t_step);
  Json j;
  j["command"] = "bounds";
  j["n"] = a.n;
  j["upper"] = upper_bound_pc(a.n);
  j["lower_ring"] = lower_bound_pc_ring(a.n);
  j["connectivity_threshold"] = connectivity_threshold(a.n);
  j["objective_max"] = best.value;
  j["objective_argmax"] = best.t;
  j["objective_at_0.07"] = ring_lower_objective(0.07);
  j["one_over_27"] = 1.0 / 27.0;
  j["t_grid"] = {{"min", a.t_min}, {"max", a.t_max}, {"step", a.t_step}};
  out << j.dump() << "\n";
  return 0;
}

// ---- certify

struct CertifyArgs {
  std::string people;
  std::size_t n = 0;
  std::size_t x = 0;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
  const Graph people = load_graph(a.people, GraphRole::kPeople);
  if (a.n < 3) throw InputError("certify needs n >= 3");
  if (a.n < a.x * a.x) {
    throw InputError(fmt::format("certify needs n >= x^2 (n = {}, x = {})", a.n, a.x));
  }
  const auto cert = find_cut_certificate(people, a.n, a.x);
  const auto res = run(JigsawInstance(people, cycle_puzzle(a.n)));
  if (cert && res.solved) {
    throw std::logic_error("certificate present but the engine solved the ring instance");
  }
  Json j;
  j["command"] = "certify";
  j["people"] = a.people;
  j["n"] = a.n;
  j["x"] = a.x;
  j["certified_unsolvable"] = cert.has_value();
  j["witnesses"] = cert ? Json(cert->witnesses) : Json::array();
  j["boundaries"] = ring_interval_boundaries(a.n, a.x);
  j["engine_solved"] = res.solved;
  out << j.dump() << "\n";
  return 0;
}

}  // namespace

Graph puzzle_from_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw InputError("malformed puzzle spec '" + spec + "'");
    }
  };
  if (kind == "triangle" && parts.size() == 1) return cycle_puzzle(3);
  if (kind == "cycle" || kind == "ring") {
    arity(2, 2);
    return cycle_puzzle(parse_size(parts[1], spec));
  }
  if (kind == "star") {
    arity(2, 2);
    return star_puzzle(parse_size(parts[1], spec));
  }
  if (kind == "path") {
    arity(2, 2);
    return path_puzzle(parse_size(parts[1], spec));
  }
  if (kind == "complete") {
    arity(2, 2);
    const std::size_t n = parse_size(parts[1], spec);
    if (n < 1) throw InputError("complete puzzle needs n >= 1");
    return complete_graph(n);
  }
  if (kind == "torus") {
    arity(2, 2);
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw InputError("torus spec is torus:RxC, got '" + spec + "'");
    return torus_puzzle(parse_size(dims[0], spec), parse_size(dims[1], spec));
  }
  if (kind == "tree") {
    arity(3, 4);
    const std::uint64_t seed = parts.size() == 4 ? parse_size(parts[3], spec) : 0;
    return random_tree_puzzle(parse_size(parts[1], spec), parse_size(parts[2], spec), Seed{seed, 0});
  }
  if (std::filesystem::exists(spec)) return load_graph(spec, GraphRole::kPuzzle);
  throw InputError("puzzle spec '" + spec + "' is neither a generator string nor an existing file");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"jigsaw percolation simulator", "jigsaw"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI file; [section] per subcommand, flags take precedence");
  app.set_help_all_flag("--help-all");

  Common common;
  app.add_option("--seed", common.seed, "master seed")->capture_default_str();
  app.add_option("--workers", common.workers, "worker threads (0: all cores)")
      ->envname("JIGSAW_WORKERS");
  app.add_flag("--quiet", common.quiet, "no progress on stderr");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph as an edge-list file");
  gen_cmd->add_option("kind", gen.kind, "cycle|ring|star|torus|tree|path|complete|er|powerlaw")
      ->required();
  gen_cmd->add_option("--n", gen.n, "vertex count");
  gen_cmd->add_option("--p", gen.p, "edge probability (er)");
  gen_cmd->add_option("--gamma", gen.gamma, "degree exponent (powerlaw)")->capture_default_str();
  gen_cmd->add_option("--rows", gen.rows, "torus rows");
  gen_cmd->add_option("--cols", gen.cols, "torus columns");
  gen_cmd->add_option("--max-deg", gen.max_deg, "tree degree cap")->capture_default_str();
  gen_cmd->add_option("--out,-o", gen.out_path, "output path (default <kind>.edges)");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run the dynamics on one instance");
  run_cmd->add_option("--puzzle", run_args.puzzle, "puzzle spec or file")->required();
  run_cmd->add_option("--people", run_args.people, "people edge-list file")->required();
  run_cmd->add_option("--rule", run_args.rule, "std|ae")->capture_default_str();

  auto add_grid = [](CLI::App* cmd, GridArgs& g) {
    cmd->add_option("--min", g.min, "smallest p")->capture_default_str();
    cmd->add_option("--max", g.max, "largest p (default 1.05 pi^2/(6 ln n))");
    cmd->add_option("--points", g.points, "grid size")->capture_default_str();
  };

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "solve fractions over a p grid");
  sweep_cmd->add_option("--puzzle", sw.puzzle, "puzzle spec or file")->required();
  add_grid(sweep_cmd, sw.grid);
  sweep_cmd->add_option("--trials", sw.trials, "trials per point")->capture_default_str();
  sweep_cmd->add_option("--rule", sw.rule, "std|ae")->capture_default_str();
  sweep_cmd->add_option("--out,-o", sw.out_path, "output path, - for stdout")->capture_default_str();
  sweep_cmd->add_option("--format", sw.format, "csv|jsonl")->capture_default_str();
  sweep_cmd->add_flag("--independent", sw.independent, "fresh graphs per grid point");

  PcArgs pc;
  auto* pc_cmd = app.add_subcommand("estimate-pc", "estimate the critical value");
  pc_cmd->add_option("--puzzle", pc.puzzle, "puzzle spec or file")->required();
  pc_cmd->add_option("--trials", pc.trials, "trials per point")->capture_default_str();
  pc_cmd->add_option("--strategy", pc.strategy, "grid|bisect")->capture_default_str();
  add_grid(pc_cmd, pc.grid);
  pc_cmd->add_option("--tolerance", pc.tolerance, "bisection bracket width")->capture_default_str();

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "theoretical bounds for size n");
  bounds_cmd->add_option("--n", bounds.n, "vertex count")->required();
  bounds_cmd->add_option("--t-min", bounds.t_min)->capture_default_str();
  bounds_cmd->add_option("--t-max", bounds.t_max)->capture_default_str();
  bounds_cmd->add_option("--t-step", bounds.t_step)->capture_default_str();

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "search for a ring unsolvability certificate");
  cert_cmd->add_option("--people", cert.people, "people edge-list file")->required();
  cert_cmd->add_option("--n", cert.n, "ring size")->required();
  cert_cmd->add_option("--x", cert.x, "interval scale")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, common, out);
    if (*run_cmd) return cmd_run(run_args, out);
    if (*sweep_cmd) return cmd_sweep(sw, common, out, err);
    if (*pc_cmd) return cmd_estimate_pc(pc, common, out, err);
    if (*bounds_cmd) return cmd_bounds(bounds, out);
    if (*cert_cmd) return cmd_certify(cert, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const EstimationError& e) {
    err << "estimation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace jigsaw
