#include "jigsaw/theory.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "jigsaw/error.hpp"

namespace jigsaw {
namespace {

void require_n(std::size_t n) {
  if (n < 2) throw InputError("bound needs n >= 2, got " + std::to_string(n));
}

}  // namespace

double theta(double x) {
  if (std::isnan(x) || x < 0.0) throw InputError("theta needs x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return kPiSquaredOverSix;

  if (x < 1e-3) {
    // zeta(2) - Li2(e^-x) expanded at 0; the next term is O(x^7).
    const double x2 = x * x;
    return x - x * std::log(x) + x2 / 4.0 - x2 * x / 72.0 + x2 * x2 * x / 14400.0;
  }

  // theta(x) = zeta(2) - sum_j e^{-jx}/j^2. Stop once the remaining tail,
  // bounded by e^{-(J+1)x} / ((J+1)^2 (1 - e^{-x})), is negligible.
  const double q = std::exp(-x);
  const double tail_scale = 1.0 / -std::expm1(-x);
  std::size_t terms = 1;
  for (double qj = q;; ++terms) {
    const double next = static_cast<double>(terms + 1);
    if (qj * q * tail_scale / (next * next) < 1e-17) break;
    qj *= q;
  }
  // Smallest terms first.
  double sum = 0.0;
  for (std::size_t j = terms; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    sum += std::exp(-jd * x) / (jd * jd);
  }
  return kPiSquaredOverSix - sum;
}

ErrorBoundCheck theta_sum_error_bound(std::size_t m, double eps) {
  if (m < 1) throw InputError("error bound needs m >= 1");
  if (!(eps > 0.0) || std::isinf(eps)) throw InputError("error bound needs eps > 0");
  double sum = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    sum += std::log(-std::expm1(-static_cast<double>(i) * eps));
  }
  ErrorBoundCheck out;
  out.lhs = std::abs(sum + kPiSquaredOverSix / eps);
  out.rhs = 0.5 * std::log(2.0 * std::exp(2.0) / eps) +
            kPiSquaredOverSix / (eps * std::exp(static_cast<double>(m) * eps));
  out.holds = out.lhs <= out.rhs;
  return out;
}

double upper_bound_pc(std::size_t n) {
  require_n(n);
  return kPiSquaredOverSix / std::log(static_cast<double>(n));
}

double lower_bound_pc_ring(std::size_t n) {
  require_n(n);
  return 1.0 / (27.0 * std::log(static_cast<double>(n)));
}

double connectivity_threshold(std::size_t n) {
  require_n(n);
  const double nd = static_cast<double>(n);
  return (std::log(nd) - std::log(std::log(2.0))) / nd;
}

double ring_lower_objective(double t) {
  if (!(t > 0.0 && t < 1.0 / 3.0)) {
    throw InputError("ring objective needs t in (0, 1/3), got " + std::to_string(t));
  }
  const double root = std::sqrt(1.0 + 1.0 / t);
  return 0.5 * t * (2.0 * std::log(root - 1.0) + 7.0 * t - 2.0 * t * root - 1.0);
}

ObjectiveMax ring_lower_objective_max(double t_min, double t_max, double step) {
  if (!(step > 0.0) || !(t_min > 0.0) || !(t_max < 1.0 / 3.0) || t_min > t_max) {
    throw InputError("objective grid must satisfy 0 < t_min <= t_max < 1/3 and step > 0");
  }
  ObjectiveMax best{t_min, -std::numeric_limits<double>::infinity()};
  // Index-based so the grid does not drift.
  const auto points = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = t_min + static_cast<double>(i) * step;
    const double v = ring_lower_objective(t);
    if (v > best.value) best = {t, v};
  }
  return best;
}

double not_x_good_bound(double l, double t, double p) {
  if (!(l > 0.0)) throw InputError("not-x-good bound needs l > 0");
  if (!(t > 0.0 && t < 1.0 / (l + 2.0))) throw InputError("not-x-good bound needs t in (0, 1/(l+2))");
  if (!(p > 0.0 && p < 1.0)) throw InputError("not-x-good bound needs p in (0, 1)");
  const double root = std::sqrt(1.0 + l / t);
  const double bracket = 2.0 * l * std::log(root - 1.0) + (l * l + 4.0 * l + 2.0) * t -
                         2.0 * t * root - 2.0 * l * std::log(l) - l;
  return std::exp(-(t / (2.0 * p)) * bracket);
}

}  // namespace jigsaw
