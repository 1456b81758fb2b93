#pragma once

// Large-population limits of the season probabilities.
//
// For proportions (x, y, z) in the simplex with y > 0, T is the unique root
// of x (1 - e^{-t}) + y t = z. The no-reproduction limit is u = e^{-T},
// the reproduction limit v = 1 - u, and the two-red-ball limit is u^2.
// Along the chain coordinates (x/(1+s), (1-x)/(1+s), s/(1+s)) the
// reproduction limit is v_s(x), which also solves x v - (1-x) log(1-v) = s.

#include <array>

namespace wfis {

/// Point of the simplex {x, y, z >= 0, x + y + z <= 1}.
struct LimitPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Throws DomainError unless the point lies in the simplex (up to 1e-12)
/// with y > 0.
void require_limit_domain(const LimitPoint& p);

inline constexpr double kDefaultRootTolerance = 1e-13;

/// Safeguarded Newton iteration on phi(t) = x (1 - e^{-t}) + y t - z over
/// the bracket [0, z/y]; a bisection step replaces any Newton step that
/// leaves the bracket or fails to halve it. Stops on |phi| <= tol, then
/// polishes to the rounding floor.
double solve_T(const LimitPoint& p, double tol = kDefaultRootTolerance);

/// phi(T); the solver's residual.
double limit_residual(const LimitPoint& p, double t);

using Gradient = std::array<double, 3>;  // (d/dx, d/dy, d/dz)

struct LimitEval {
  double T = 0.0;
  double u = 1.0;
  double v = 0.0;
  Gradient grad_T{};
  Gradient grad_u{};
  Gradient grad_v{};
};

LimitEval eval_limit(const LimitPoint& p);

/// u(p)^2, the limit of q~.
double eval_u_tilde(const LimitPoint& p);

struct VsEval {
  double s = 0.0;
  double x = 0.0;
  double v_s = 0.0;
  double v_s_prime = 0.0;
  double v_s_second = 0.0;
};

/// Above this x the closed form of v_s' is 0/0-prone and a one-sided
/// second-order difference of v_s is used instead.
inline constexpr double kVsEdge = 1.0 - 1e-6;

/// Throws DomainError unless s > 0 and x in [0, 1].
VsEval eval_vs(double s, double x);

/// v_s alone (v_s(1) = min(s, 1) by continuity).
double vs_value(double s, double x);

struct DiffusionCoeffs {
  double a = 0.0;  // infinitesimal variance
  double b = 0.0;  // infinitesimal drift
};

/// a = x(1-x)/v_s(x), b = x(1-x)(beta - v_s'(x)/v_s(x)^2).
DiffusionCoeffs diffusion_coeffs(double s, double x, double beta);

/// Classical Wright-Fisher coefficients a = x(1-x), b = beta x(1-x).
DiffusionCoeffs classical_coeffs(double x, double beta);

/// Lower/upper bounds on v_s, v_s', v_s'' valid for 0 < s < 1.
struct VsBounds {
  double v_lo = 0.0;
  double v_hi = 0.0;
  double prime_lo = 0.0;
  double prime_hi = 0.0;
  double second_lo = 0.0;
  double second_hi = 0.0;
};

/// v bounds hold for every s > 0; derivative bounds are meaningful only for
/// s < 1 (they are set to NaN otherwise).
VsBounds vs_bounds(double s);

}  // namespace wfis
