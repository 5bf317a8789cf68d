#include "jigsaw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "jigsaw/error.hpp"
#include "jigsaw/generators.hpp"
#include "jigsaw/theory.hpp"

namespace jigsaw {
namespace {

struct TrialRecord {
  bool solved = false;
  std::size_t rounds = 0;
};

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
  unsigned w = requested;
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

// Runs body(t) for t in [0, count) on `workers` threads. Each t writes only to
// its own slot, so the result is independent of scheduling.
template <typename Body>
void parallel_trials(std::size_t count, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& progress, Body body) {
  const unsigned w = resolve_workers(workers, count);
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;
  std::exception_ptr failure;
  auto loop = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= count) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
      if (progress) {
        std::lock_guard lock(mu);
        progress(++done, count);
      }
    }
  };
  if (w <= 1) {
    loop();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(w);
    for (unsigned i = 0; i < w; ++i) pool.emplace_back(loop);
  }
  if (failure) std::rethrow_exception(failure);
}

TrialRecord record_of(const TrialOutcome& out) { return {out.solved, out.rounds.value_or(0)}; }

TrialRecord run_people(const Graph& puzzle, Graph people, MergeRule rule) {
  const JigsawInstance inst(std::make_shared<const Graph>(std::move(people)),
                            std::shared_ptr<const Graph>(&puzzle, [](const Graph*) {}),
                            PuzzleCheck::kAllowDisconnected);
  return record_of(run(inst, rule));
}

TrialRecord run_prefix(const Graph& puzzle, std::span<const Edge> edges, MergeRule rule) {
  if (rule == MergeRule::kStandard) return record_of(run_edges(puzzle, edges));
  return run_people(puzzle, Graph::from_edges(puzzle.vertex_count(), edges), rule);
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InputError("p grid is empty");
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError(fmt::format("p = {} outside [0, 1]", p));
  }
}

// records[j][t]: trial t at grid point j.
std::vector<std::vector<TrialRecord>> simulate_grid(const Graph& puzzle,
                                                    const std::vector<double>& grid,
                                                    std::size_t trials, std::uint64_t master_seed,
                                                    const ExperimentOptions& options) {
  check_grid(grid);
  const std::size_t n = puzzle.vertex_count();
  std::vector<std::vector<TrialRecord>> records(grid.size(), std::vector<TrialRecord>(trials));
  if (options.coupled) {
    const double p_max = *std::max_element(grid.begin(), grid.end());
    parallel_trials(trials, options.workers, options.progress, [&](std::size_t t) {
      const auto weighted = erdos_renyi_weights(n, p_max, Seed{master_seed, t});
      std::vector<Edge> edges;
      edges.reserve(weighted.size());
      for (const auto& we : weighted) edges.push_back(we.edge);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto cut = std::partition_point(weighted.begin(), weighted.end(),
                                              [&](const WeightedEdge& we) { return we.weight < grid[j]; });
        const auto k = static_cast<std::size_t>(cut - weighted.begin());
        records[j][t] = run_prefix(puzzle, std::span<const Edge>(edges.data(), k), options.rule);
      }
    });
  } else {
    parallel_trials(trials, options.workers, options.progress, [&](std::size_t t) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        records[j][t] = run_people(puzzle, erdos_renyi(n, grid[j], Seed{master_seed, t}.child(j)),
                                   options.rule);
      }
    });
  }
  return records;
}

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
};

// Two-pass mean and sample standard deviation, in index order.
template <typename Pred>
Moments moments(const std::vector<TrialRecord>& records, Pred keep) {
  Moments m;
  double sum = 0.0;
  for (const auto& r : records) {
    if (!keep(r)) continue;
    ++m.count;
    sum += static_cast<double>(r.rounds);
  }
  if (m.count == 0) return m;
  m.mean = sum / static_cast<double>(m.count);
  if (m.count > 1) {
    double ss = 0.0;
    for (const auto& r : records) {
      if (!keep(r)) continue;
      const double d = static_cast<double>(r.rounds) - m.mean;
      ss += d * d;
    }
    m.sd = std::sqrt(ss / static_cast<double>(m.count - 1));
  }
  return m;
}

SweepPoint summarize(double p, const std::vector<TrialRecord>& records) {
  SweepPoint pt;
  pt.p = p;
  pt.trials = records.size();
  const auto all = moments(records, [](const TrialRecord&) { return true; });
  const auto solved = moments(records, [](const TrialRecord& r) { return r.solved; });
  const auto unsolved = moments(records, [](const TrialRecord& r) { return !r.solved; });
  pt.solves = solved.count;
  pt.solve_fraction = pt.trials ? static_cast<double>(pt.solves) / static_cast<double>(pt.trials) : 0.0;
  const auto ci = wilson_interval(pt.solves, pt.trials);
  pt.ci_low = ci.low;
  pt.ci_high = ci.high;
  if (solved.count) pt.mean_rounds_solved = solved.mean;
  if (unsolved.count) pt.mean_rounds_unsolved = unsolved.mean;
  pt.mean_rounds = all.mean;
  pt.sd_rounds = all.sd;
  return pt;
}

void require_trials(std::size_t trials) {
  if (trials == 0) throw InputError("need at least one trial");
}

// A solved instance has a connected people graph, so the median threshold is
// at least about the connectivity threshold; start just above it and double.
double default_p_max(std::size_t n) {
  return n < 3 ? 1.0 : std::min(1.0, 2.0 * connectivity_threshold(n));
}

// Fraction of thresholds strictly below p; `sorted` ascending.
double empirical_cdf(const std::vector<double>& sorted, double p) {
  const auto k = std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin();
  return static_cast<double>(k) / static_cast<double>(sorted.size());
}

double interpolate_half(double p_lo, double f_lo, double p_hi, double f_hi) {
  return p_lo + (0.5 - f_lo) / (f_hi - f_lo) * (p_hi - p_lo);
}

PcEstimate estimate_by_grid(const Graph& puzzle, std::size_t trials, const GridStrategy& strategy,
                            std::uint64_t master_seed, ExperimentOptions options) {
  auto grid = strategy.grid;
  if (grid.empty()) {
    const std::size_t n = puzzle.vertex_count();
    grid = linear_grid(0.0, std::min(1.0, 1.05 * (n < 3 ? 1.0 : upper_bound_pc(n))), 21);
  }
  if (!std::is_sorted(grid.begin(), grid.end())) throw InputError("p grid must be ascending");
  options.coupled = true;
  options.rule = MergeRule::kStandard;
  PcEstimate est;
  est.strategy = "grid";
  est.trials_per_point = trials;
  est.master_seed = master_seed;
  est.grid_points = sweep(puzzle, grid, trials, master_seed, options);
  const auto& pts = est.grid_points;
  const auto hit = std::find_if(pts.begin(), pts.end(),
                                [](const SweepPoint& pt) { return pt.solve_fraction >= 0.5; });
  if (hit == pts.end()) {
    throw EstimationError(fmt::format("solve fraction stays below 1/2 up to p = {}; extend the grid",
                                      grid.back()));
  }
  if (hit == pts.begin()) {
    throw EstimationError(fmt::format("solve fraction already >= 1/2 at p = {}; start the grid lower",
                                      grid.front()));
  }
  const auto& lo = *(hit - 1);
  const auto& hi = *hit;
  est.p_low = lo.p;
  est.p_high = hi.p;
  est.fraction_low = lo.solve_fraction;
  est.fraction_high = hi.solve_fraction;
  est.p_c_hat = interpolate_half(lo.p, lo.solve_fraction, hi.p, hi.solve_fraction);
  return est;
}

PcEstimate estimate_by_bisection(const Graph& puzzle, std::size_t trials,
                                 const BisectionStrategy& strategy, std::uint64_t master_seed,
                                 const ExperimentOptions& options) {
  if (!(strategy.tolerance > 0.0)) throw InputError("bisection tolerance must be positive");
  double p_max = strategy.p_max > 0.0 ? std::min(1.0, strategy.p_max)
                                      : default_p_max(puzzle.vertex_count());
  std::vector<double> thresholds;
  while (true) {
    thresholds = solve_thresholds(puzzle, trials, p_max, master_seed, options.workers);
    std::sort(thresholds.begin(), thresholds.end());
    if (empirical_cdf(thresholds, p_max) >= 0.5) break;
    if (p_max >= 1.0) {
      // At p = 1 every connected puzzle is solved, so this only happens for
      // disconnected puzzles.
      throw EstimationError("solve fraction stays below 1/2 for every p <= 1");
    }
    p_max = std::min(1.0, 2.0 * p_max);
  }
  double lo = 0.0;
  double hi = p_max;
  double f_lo = empirical_cdf(thresholds, lo);
  double f_hi = empirical_cdf(thresholds, hi);
  if (f_lo >= 0.5) throw EstimationError("solve fraction already >= 1/2 at p = 0");
  while (hi - lo > strategy.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f = empirical_cdf(thresholds, mid);
    if (f < 0.5) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
      f_hi = f;
    }
  }
  PcEstimate est;
  est.strategy = "bisection";
  est.trials_per_point = trials;
  est.master_seed = master_seed;
  est.p_low = lo;
  est.p_high = hi;
  est.fraction_low = f_lo;
  est.fraction_high = f_hi;
  est.p_c_hat = interpolate_half(lo, f_lo, hi, f_hi);
  return est;
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string PeopleModel::describe() const {
  if (kind == Kind::kPowerLaw) return fmt::format("powerlaw:{}", gamma);
  return fmt::format("er:{}", p);
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (successes > trials) throw InputError("successes exceed trials");
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (phat + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::clamp(centre - half, 0.0, phat), std::clamp(centre + half, phat, 1.0)};
}

SweepPoint estimate_solve_prob(const Graph& puzzle, const PeopleModel& model, std::size_t trials,
                               std::uint64_t master_seed, const ExperimentOptions& options) {
  require_trials(trials);
  const std::size_t n = puzzle.vertex_count();
  if (model.kind == PeopleModel::Kind::kErdosRenyi) {
    if (!(model.p >= 0.0 && model.p <= 1.0)) throw InputError(fmt::format("p = {} outside [0, 1]", model.p));
  } else if (!(model.gamma > 2.0)) {
    throw InputError(fmt::format("power-law exponent must exceed 2, got {}", model.gamma));
  }
  std::vector<TrialRecord> records(trials);
  parallel_trials(trials, options.workers, options.progress, [&](std::size_t t) {
    const Seed seed{master_seed, t};
    Graph people = model.kind == PeopleModel::Kind::kErdosRenyi ? erdos_renyi(n, model.p, seed)
                                                                : power_law_people(n, model.gamma, seed);
    records[t] = run_people(puzzle, std::move(people), options.rule);
  });
  const double p = model.kind == PeopleModel::Kind::kErdosRenyi
                       ? model.p
                       : std::numeric_limits<double>::quiet_NaN();
  return summarize(p, records);
}

std::vector<SweepPoint> sweep(const Graph& puzzle, const std::vector<double>& p_grid,
                              std::size_t trials, std::uint64_t master_seed,
                              const ExperimentOptions& options) {
  require_trials(trials);
  const auto records = simulate_grid(puzzle, p_grid, trials, master_seed, options);
  std::vector<SweepPoint> out;
  out.reserve(p_grid.size());
  for (std::size_t j = 0; j < p_grid.size(); ++j) out.push_back(summarize(p_grid[j], records[j]));
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw InputError("grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = hi;
  return grid;
}

std::vector<StepStatistics> step_statistics(const Graph& puzzle, const std::vector<double>& p_grid,
                                            std::size_t trials, std::uint64_t master_seed,
                                            const ExperimentOptions& options) {
  require_trials(trials);
  const auto records = simulate_grid(puzzle, p_grid, trials, master_seed, options);
  std::vector<StepStatistics> out;
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    const auto& rec = records[j];
    const auto all = moments(rec, [](const TrialRecord&) { return true; });
    const auto solved = moments(rec, [](const TrialRecord& r) { return r.solved; });
    const auto unsolved = moments(rec, [](const TrialRecord& r) { return !r.solved; });
    StepStatistics s;
    s.p = p_grid[j];
    s.trials = trials;
    s.solves = solved.count;
    s.mean_rounds = all.mean;
    s.sd_rounds = all.sd;
    if (solved.count) {
      s.mean_rounds_solved = solved.mean;
      s.sd_rounds_solved = solved.sd;
    }
    if (unsolved.count) {
      s.mean_rounds_unsolved = unsolved.mean;
      s.sd_rounds_unsolved = unsolved.sd;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<double> solve_thresholds(const Graph& puzzle, std::size_t trials, double p_max,
                                     std::uint64_t master_seed, unsigned workers) {
  require_trials(trials);
  if (!(p_max >= 0.0 && p_max <= 1.0)) throw InputError("p_max must lie in [0, 1]");
  const std::size_t n = puzzle.vertex_count();
  std::vector<double> out(trials, std::numeric_limits<double>::infinity());
  parallel_trials(trials, workers, {}, [&](std::size_t t) {
    IncrementalContraction state(puzzle);
    if (state.solved()) {
      out[t] = -1.0;  // solved with no people edges at all
      return;
    }
    for (const auto& we : erdos_renyi_weights(n, p_max, Seed{master_seed, t})) {
      state.add_people_edge(we.edge.first, we.edge.second);
      if (state.solved()) {
        out[t] = we.weight;
        return;
      }
    }
  });
  return out;
}

PcEstimate estimate_pc(const Graph& puzzle, std::size_t trials_per_point, const PcStrategy& strategy,
                       std::uint64_t master_seed, const ExperimentOptions& options) {
  require_trials(trials_per_point);
  require_connected_puzzle(puzzle);
  if (const auto* grid = std::get_if<GridStrategy>(&strategy)) {
    return estimate_by_grid(puzzle, trials_per_point, *grid, master_seed, options);
  }
  return estimate_by_bisection(puzzle, trials_per_point, std::get<BisectionStrategy>(strategy),
                               master_seed, options);
}

SweepPoint power_law_failure_check(std::size_t n, double gamma, const Graph& puzzle,
                                   std::size_t trials, std::uint64_t master_seed,
                                   const ExperimentOptions& options, std::size_t max_degree_cap) {
  if (puzzle.vertex_count() != n) {
    throw InputError(fmt::format("puzzle has {} vertices, expected {}", puzzle.vertex_count(), n));
  }
  const std::size_t deg = max_degree(puzzle);
  if (deg > max_degree_cap) {
    throw InputError(fmt::format(
        "puzzle max degree {} exceeds the bounded-degree cap {}; the power-law failure "
        "argument only covers bounded-degree puzzles",
        deg, max_degree_cap));
  }
  return estimate_solve_prob(puzzle, PeopleModel::power_law(gamma), trials, master_seed, options);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{}", v);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  out << "p,trials,solves,fraction,ci_low,ci_high,mean_rounds_solved,mean_rounds_unsolved\n";
  for (const auto& pt : points) {
    out << format_number(pt.p) << ',' << pt.trials << ',' << pt.solves << ','
        << format_number(pt.solve_fraction) << ',' << format_number(pt.ci_low) << ','
        << format_number(pt.ci_high) << ',' << opt(pt.mean_rounds_solved) << ','
        << opt(pt.mean_rounds_unsolved) << '\n';
  }
}

void write_sweep_jsonl(std::ostream& out, const std::vector<SweepPoint>& points,
                       const std::string& metadata_json) {
  const auto meta = metadata_json.empty() ? nlohmann::ordered_json::object()
                                          : nlohmann::ordered_json::parse(metadata_json);
  for (const auto& pt : points) {
    nlohmann::ordered_json row;
    row["p"] = std::isnan(pt.p) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(pt.p);
    row["trials"] = pt.trials;
    row["solves"] = pt.solves;
    row["fraction"] = pt.solve_fraction;
    row["ci_low"] = pt.ci_low;
    row["ci_high"] = pt.ci_high;
    row["mean_rounds_solved"] = optional_json(pt.mean_rounds_solved);
    row["mean_rounds_unsolved"] = optional_json(pt.mean_rounds_unsolved);
    row["mean_rounds"] = pt.mean_rounds;
    row["sd_rounds"] = pt.sd_rounds;
    for (const auto& [k, v] : meta.items()) row[k] = v;
    out << row.dump() << '\n';
  }
}

}  // namespace jigsaw
