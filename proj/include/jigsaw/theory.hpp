#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jigsaw/graph.hpp"

namespace jigsaw {

inline constexpr double kPiSquaredOverSix = 1.6449340668482264;  // zeta(2)

// theta(x) = -integral_0^x log(1 - e^-t) dt = sum_{j>=1} (1 - e^{-jx}) / j^2,
// absolute error below 1e-12. theta(+inf) = pi^2/6. Throws for x < 0 or NaN.
double theta(double x);

struct ErrorBoundCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

// Both sides of
//   | sum_{i=1}^m log(1 - e^{-i eps}) + pi^2/(6 eps) |
//       <= 1/2 log(2e^2/eps) + pi^2 / (6 eps e^{m eps}).
ErrorBoundCheck theta_sum_error_bound(std::size_t m, double eps);

// pi^2 / (6 ln n): leading term of the critical-value upper bound for any
// connected puzzle. The proven statement carries a (1 + O(log log n / log n))
// correction that is not included here.
double upper_bound_pc(std::size_t n);

// 1 / (27 ln n): critical-value lower bound for the ring puzzle.
double lower_bound_pc_ring(std::size_t n);

// (ln n - ln ln 2) / n: the p at which G(n, p) is connected with probability
// about 1/2, i.e. the star puzzle's critical value.
double connectivity_threshold(std::size_t n);

// (t/2) [2 ln(sqrt(1 + 1/t) - 1) + 7t - 2t sqrt(1 + 1/t) - 1] for t in (0, 1/3).
// Any lambda below this value keeps the ring unsolved w.h.p. at p = lambda/ln n.
double ring_lower_objective(double t);

struct ObjectiveMax {
  double t = 0;
  double value = 0;
};

// Maximum of ring_lower_objective over t = t_min, t_min + step, ... <= t_max.
ObjectiveMax ring_lower_objective_max(double t_min = 0.001, double t_max = 0.333,
                                      double step = 0.001);

// Upper bound on P(an interval of length l*x is not x-good) with t = p*x:
//   exp[-(t/2p) (2l ln(sqrt(1+l/t) - 1) + (l^2+4l+2) t - 2t sqrt(1+l/t)
//                - 2l ln l - l)].
// Requires l > 0, 0 < t < 1/(l+2), 0 < p < 1.
double not_x_good_bound(double l, double t, double p);

// Cover of a connected graph by blocks B_1..B_k with |B_i| in [m, 2m] for
// i < k, |B_k| <= 2m, each block inducing a connected subgraph, and any two
// blocks sharing at most one vertex.
struct BlockPartition {
  std::vector<std::vector<VertexId>> blocks;  // members ascending
  std::size_t m = 0;
};

BlockPartition block_partition(const Graph& puzzle, std::size_t m);

// Unsolvability witness for the ring puzzle on vertices 0..n-1. Interval j
// holds vertices [boundaries[j], boundaries[j+1]) and witnesses[j] is its
// smallest x-good vertex: one with no people edge into the interval widened
// by x on both sides (cyclically).
struct CutCertificate {
  std::size_t x = 0;
  std::vector<std::size_t> boundaries;  // 0 = a_0 < ... < a_k = n
  std::vector<VertexId> witnesses;
};

// The fixed interval split: k = floor(n / (x-1)) intervals, the first
// n - k(x-1) of length x and the rest of length x-1 (x = 1 gives singletons).
std::vector<std::size_t> ring_interval_boundaries(std::size_t n, std::size_t x);

// Smallest x-good vertex of the ring interval [begin, end), if any.
std::optional<VertexId> smallest_x_good_vertex(const Graph& people, std::size_t begin,
                                               std::size_t end, std::size_t x);

// Certificate when every interval of the fixed split is x-good, else nullopt
// (which proves nothing). Requires x >= 1, n >= 3, n >= x^2, people.n == n.
std::optional<CutCertificate> find_cut_certificate(const Graph& people, std::size_t n,
                                                   std::size_t x);

}  // namespace jigsaw
