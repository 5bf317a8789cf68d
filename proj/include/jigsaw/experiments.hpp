#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jigsaw/engine.hpp"
#include "jigsaw/graph.hpp"

namespace jigsaw {

// How people graphs are drawn for each trial.
struct PeopleModel {
  enum class Kind { kErdosRenyi, kPowerLaw };
  Kind kind = Kind::kErdosRenyi;
  double p = 0.0;      // Erdos-Renyi edge probability
  double gamma = 2.5;  // power-law exponent

  static PeopleModel erdos_renyi(double p) { return {Kind::kErdosRenyi, p, 0.0}; }
  static PeopleModel power_law(double gamma) { return {Kind::kPowerLaw, 0.0, gamma}; }

  std::string describe() const;  // "er:0.11", "powerlaw:2.5"
};

struct ExperimentOptions {
  MergeRule rule = MergeRule::kStandard;
  // Worker threads; 0 uses the hardware concurrency. Never changes results.
  unsigned workers = 0;
  // Sweeps share one coupling uniform per vertex pair across the grid, so each
  // trial's solve indicator is non-decreasing in p. Otherwise every grid point
  // draws fresh graphs.
  bool coupled = true;
  // Called with (completed trials, total trials); serialised by the harness.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct SweepPoint {
  double p = 0.0;  // NaN when the people model has no edge probability
  std::size_t trials = 0;
  std::size_t solves = 0;
  double solve_fraction = 0.0;
  double ci_low = 0.0;  // Wilson 95%
  double ci_high = 0.0;
  std::optional<double> mean_rounds_solved;
  std::optional<double> mean_rounds_unsolved;
  double mean_rounds = 0.0;
  double sd_rounds = 0.0;  // sample standard deviation over all trials
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

// Trial t draws its people graph from Seed{master_seed, t}.
SweepPoint estimate_solve_prob(const Graph& puzzle, const PeopleModel& model, std::size_t trials,
                               std::uint64_t master_seed, const ExperimentOptions& options = {});

// Erdos-Renyi people graphs at each grid value; one point per value, in order.
std::vector<SweepPoint> sweep(const Graph& puzzle, const std::vector<double>& p_grid,
                              std::size_t trials, std::uint64_t master_seed,
                              const ExperimentOptions& options = {});

// `points` equally spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

// Conditional statistics of the round count N_n per grid point.
struct StepStatistics {
  double p = 0.0;
  std::size_t trials = 0;
  std::size_t solves = 0;
  double mean_rounds = 0.0;
  double sd_rounds = 0.0;
  std::optional<double> mean_rounds_solved;
  std::optional<double> sd_rounds_solved;
  std::optional<double> mean_rounds_unsolved;
  std::optional<double> sd_rounds_unsolved;
};

std::vector<StepStatistics> step_statistics(const Graph& puzzle, const std::vector<double>& p_grid,
                                            std::size_t trials, std::uint64_t master_seed,
                                            const ExperimentOptions& options = {});

// Sweep a grid and interpolate linearly between the two points whose solve
// fractions straddle 1/2. An empty grid means 21 points on
// [0, 1.05 * pi^2 / (6 ln n)].
struct GridStrategy {
  std::vector<double> grid;
};

// Coupled samples make each trial's solve indicator a step function of p, so
// every trial has an exact threshold (found in one pass of incremental
// contraction). The bracket around the empirical median is then halved until
// narrower than `tolerance`. p_max = 0 starts at twice the people-graph
// connectivity threshold (ln n - ln ln 2)/n and doubles as needed.
struct BisectionStrategy {
  double tolerance = 1e-5;
  double p_max = 0.0;
};

using PcStrategy = std::variant<GridStrategy, BisectionStrategy>;

struct PcEstimate {
  double p_low = 0.0;
  double p_high = 0.0;
  double fraction_low = 0.0;
  double fraction_high = 0.0;
  double p_c_hat = 0.0;
  std::size_t trials_per_point = 0;
  std::uint64_t master_seed = 0;
  std::string strategy;
  std::vector<SweepPoint> grid_points;  // grid strategy only
};

// Standard rule only. Throws EstimationError when no bracket is found.
PcEstimate estimate_pc(const Graph& puzzle, std::size_t trials_per_point, const PcStrategy& strategy,
                       std::uint64_t master_seed, const ExperimentOptions& options = {});

// Exact per-trial solve thresholds of coupled samples below p_max: trial t
// solves at p exactly when thresholds[t] < p (infinity if not below p_max).
std::vector<double> solve_thresholds(const Graph& puzzle, std::size_t trials, double p_max,
                                     std::uint64_t master_seed, unsigned workers = 0);

// Power-law people graphs against a bounded-degree puzzle. Refuses puzzles
// whose maximum degree exceeds `max_degree_cap`.
SweepPoint power_law_failure_check(std::size_t n, double gamma, const Graph& puzzle,
                                   std::size_t trials, std::uint64_t master_seed,
                                   const ExperimentOptions& options = {},
                                   std::size_t max_degree_cap = 16);

// CSV columns: p,trials,solves,fraction,ci_low,ci_high,mean_rounds_solved,
// mean_rounds_unsolved. Absent values are empty fields.
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

// One JSON object per line with the CSV keys plus `metadata` merged in.
void write_sweep_jsonl(std::ostream& out, const std::vector<SweepPoint>& points,
                       const std::string& metadata_json);

std::string format_number(double v);

}  // namespace jigsaw
