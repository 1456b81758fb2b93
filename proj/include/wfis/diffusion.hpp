#pragma once

// Euler-Maruyama integration of dX = sqrt(a(X)) dB + b(X) dt on [0, 1].
//
// Each step is X <- clamp(X + b(X) h + sqrt(a(X) h) G, 0, 1) with G standard
// normal; a and b come from diffusion_coeffs (indirect model) or
// classical_coeffs. Both coefficients vanish at 0 and 1, so a path that
// lands exactly on a boundary stays there.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wfis/limit_analytic.hpp"
#include "wfis/stats.hpp"
#include "wfis/wf_chain.hpp"

namespace wfis {

struct SdeConfig {
  double s = 0.5;
  double beta = 0.0;
  double x0 = 0.5;
  double dt = 1e-3;
  double t_end = 1.0;
  std::uint64_t seed = 0;
  Model model = Model::indirect;
};

/// Throws DomainError on x0 outside [0, 1], dt <= 0, t_end < 0, dt > t_end
/// (when t_end > 0), s <= 0 for the indirect model or non-finite beta.
void validate(const SdeConfig& cfg);

struct SdeAbsorption {
  double time = 0.0;
  int boundary = 0;  // 0 or 1
};

struct SdePath {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<SdeAbsorption> absorbed;
  /// Indirect runs with s >= 1: boundary behavior at x = 1 is not backed by
  /// the convergence theory, so boundary statistics are not validated.
  bool boundary_validated = true;
};

/// Coefficients of the model at x.
DiffusionCoeffs model_coeffs(const SdeConfig& cfg, double x);

/// Step times 0, dt, 2 dt, ..., t_end (the last step may be shorter), merged
/// with any extra times in [0, t_end] so that those are hit exactly.
std::vector<double> step_times(const SdeConfig& cfg, std::span<const double> extra = {});

/// One path driven by stream (cfg.seed, stream_id).
SdePath em_simulate(const SdeConfig& cfg, std::uint64_t stream_id = 0);

/// Final value only; same stream and steps as em_simulate.
double em_terminal(const SdeConfig& cfg, std::uint64_t stream_id = 0);

struct TimeMoments {
  double t = 0.0;
  EstimateWithError mean;
  EstimateWithError variance;
};

/// Mean and variance of X_t at each t in t_grid (each in [0, t_end]) over
/// `reps` paths; path r uses stream (cfg.seed, r).
std::vector<TimeMoments> path_moments(const SdeConfig& cfg, std::uint64_t reps,
                                      std::span<const double> t_grid, unsigned jobs = 1);

}  // namespace wfis
