#include "wfis/limit_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wfis/errors.hpp"

namespace wfis {
namespace {

constexpr double kSimplexSlack = 1e-12;

std::string describe(const LimitPoint& p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) +
         ")";
}

}  // namespace

void require_limit_domain(const LimitPoint& p) {
  if (!(p.x >= 0.0 && p.y >= 0.0 && p.z >= 0.0) || p.x + p.y + p.z > 1.0 + kSimplexSlack) {
    throw DomainError("point " + describe(p) + " outside the simplex");
  }
  if (!(p.y > 0.0)) throw DomainError("T is undefined for y <= 0 at " + describe(p));
}

double limit_residual(const LimitPoint& p, double t) {
  return p.x * -std::expm1(-t) + p.y * t - p.z;
}

double solve_T(const LimitPoint& p, double tol) {
  require_limit_domain(p);
  if (p.z == 0.0) return 0.0;
  if (p.x == 0.0) return p.z / p.y;

  // phi is increasing and concave with phi(0) = -z < 0 <= phi(z/y).
  double lo = 0.0;
  double hi = p.z / p.y;
  double t = std::min(p.z / (p.x + p.y), hi);
  double residual = limit_residual(p, t);
  double step_before = hi - lo;
  double step = step_before;
  for (int iter = 0; iter < 200 && std::abs(residual) > tol; ++iter) {
    if (residual < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = p.x * std::exp(-t) + p.y;
    const bool leaves_bracket = ((t - hi) * slope - residual) * ((t - lo) * slope - residual) > 0.0;
    const bool too_slow = std::abs(2.0 * residual) > std::abs(step_before * slope);
    step_before = step;
    double next;
    if (leaves_bracket || too_slow) {
      step = 0.5 * (hi - lo);
      next = lo + step;
    } else {
      step = residual / slope;
      next = t - step;
    }
    if (next == t) break;
    t = next;
    residual = limit_residual(p, t);
  }
  // Polish: a few plain Newton steps while the residual keeps shrinking.
  for (int iter = 0; iter < 3 && residual != 0.0; ++iter) {
    const double next = t - residual / (p.x * std::exp(-t) + p.y);
    const double next_residual = limit_residual(p, next);
    if (!(std::abs(next_residual) < std::abs(residual))) break;
    t = next;
    residual = next_residual;
  }
  return t;
}

LimitEval eval_limit(const LimitPoint& p) {
  LimitEval e;
  e.T = solve_T(p);
  e.u = std::exp(-e.T);
  e.v = -std::expm1(-e.T);
  const double denom = p.x * e.u + p.y;
  e.grad_T = {(e.u - 1.0) / denom, -e.T / denom, 1.0 / denom};
  for (std::size_t i = 0; i < 3; ++i) {
    e.grad_u[i] = -e.u * e.grad_T[i];
    e.grad_v[i] = -e.grad_u[i];
  }
  return e;
}

double eval_u_tilde(const LimitPoint& p) {
  const double u = std::exp(-solve_T(p));
  return u * u;
}

namespace {

void require_vs_domain(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("v_s needs s > 0, got s = " + std::to_string(s));
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("v_s needs x in [0, 1], got x = " + std::to_string(x));
  }
}

double vs_raw(double s, double x) {
  if (x == 1.0) return std::min(s, 1.0);
  const LimitPoint p{x / (1.0 + s), (1.0 - x) / (1.0 + s), s / (1.0 + s)};
  return -std::expm1(-solve_T(p));
}

// (1 - v)/(1 - x v) * (s - v)/(1 - x)
double vs_prime_closed(double s, double x, double v) {
  return (1.0 - v) / (1.0 - x * v) * (s - v) / (1.0 - x);
}

double vs_second_ratio(double s, double x, double v) {
  const double d = 1.0 - x * v;
  return (-2.0 * x * v * v + 3.0 * v - s) / (d * d);
}

}  // namespace

double vs_value(double s, double x) {
  require_vs_domain(s, x);
  return vs_raw(s, x);
}

VsEval eval_vs(double s, double x) {
  require_vs_domain(s, x);
  VsEval e{s, x, vs_raw(s, x), 0.0, 0.0};
  if (x <= kVsEdge) {
    e.v_s_prime = vs_prime_closed(s, x, e.v_s);
  } else {
    // One-sided second-order difference; both nodes stay below the edge.
    constexpr double h = 1e-4;
    e.v_s_prime = (3.0 * e.v_s - 4.0 * vs_raw(s, x - h) + vs_raw(s, x - 2.0 * h)) / (2.0 * h);
  }
  e.v_s_second = e.v_s_prime * vs_second_ratio(s, x, e.v_s);
  return e;
}

DiffusionCoeffs diffusion_coeffs(double s, double x, double beta) {
  require_vs_domain(s, x);
  if (x == 0.0 || x == 1.0) return {0.0, 0.0};
  const VsEval e = eval_vs(s, x);
  const double spread = x * (1.0 - x);
  return {spread / e.v_s, spread * (beta - e.v_s_prime / (e.v_s * e.v_s))};
}

DiffusionCoeffs classical_coeffs(double x, double beta) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("x must lie in [0, 1], got " + std::to_string(x));
  }
  const double spread = x * (1.0 - x);
  return {spread, beta * spread};
}

VsBounds vs_bounds(double s) {
  if (!(s > 0.0)) throw DomainError("v_s bounds need s > 0");
  VsBounds bounds;
  bounds.v_lo = -std::expm1(-s);
  bounds.v_hi = std::min(s, 1.0);
  if (s < 1.0) {
    const double em = std::exp(-s);
    const double low = em + s - 1.0;
    const double high = em * (-s - std::log1p(-s));
    bounds.prime_lo = (1.0 - s) * low;
    bounds.prime_hi = high / (1.0 - s);
    bounds.second_lo = s * (1.0 - s) * (1.0 - s) * low;
    bounds.second_hi = 2.0 * s * high / ((1.0 - s) * (1.0 - s) * (1.0 - s));
  } else {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    bounds.prime_lo = bounds.prime_hi = bounds.second_lo = bounds.second_hi = nan;
  }
  return bounds;
}

}  // namespace wfis
