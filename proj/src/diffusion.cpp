#include "wfis/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wfis/errors.hpp"
#include "wfis/limit_analytic.hpp"
#include "wfis/parallel.hpp"
#include "wfis/rng.hpp"

namespace wfis {

void validate(const SdeConfig& cfg) {
  if (!(cfg.x0 >= 0.0 && cfg.x0 <= 1.0)) throw DomainError("x0 must lie in [0, 1]");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("dt must be positive");
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) {
    throw DomainError("t_end must be nonnegative");
  }
  if (cfg.t_end > 0.0 && cfg.dt > cfg.t_end) {
    throw DomainError("dt = " + std::to_string(cfg.dt) + " exceeds t_end = " +
                      std::to_string(cfg.t_end));
  }
  if (!std::isfinite(cfg.beta)) throw DomainError("beta must be finite");
  if (cfg.model == Model::indirect && (!(cfg.s > 0.0) || !std::isfinite(cfg.s))) {
    throw DomainError("sex ratio s must be > 0");
  }
}

DiffusionCoeffs model_coeffs(const SdeConfig& cfg, double x) {
  return cfg.model == Model::indirect ? diffusion_coeffs(cfg.s, x, cfg.beta)
                                      : classical_coeffs(x, cfg.beta);
}

std::vector<double> step_times(const SdeConfig& cfg, std::span<const double> extra) {
  validate(cfg);
  std::vector<double> times{0.0};
  const auto steps = static_cast<std::int64_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  for (std::int64_t k = 1; k < steps; ++k) times.push_back(static_cast<double>(k) * cfg.dt);
  if (cfg.t_end > 0.0) times.push_back(cfg.t_end);
  for (double t : extra) {
    if (!(t >= 0.0 && t <= cfg.t_end)) {
      throw DomainError("time " + std::to_string(t) + " outside [0, t_end]");
    }
    times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
              times.end());
  return times;
}

namespace {

// Advances x over one step of length h; returns the new value.
double em_step(const SdeConfig& cfg, double x, double h, Rng& rng) {
  if (x == 0.0 || x == 1.0) return x;
  const DiffusionCoeffs c = model_coeffs(cfg, x);
  const double next = x + c.b * h + std::sqrt(std::max(c.a, 0.0) * h) * rng.normal();
  return std::clamp(next, 0.0, 1.0);
}

// Runs one path over `times`, calling record(i, x) at every time index.
template <class Record>
void integrate(const SdeConfig& cfg, const std::vector<double>& times, Rng& rng,
               Record&& record) {
  double x = cfg.x0;
  record(std::size_t{0}, x);
  for (std::size_t i = 1; i < times.size(); ++i) {
    x = em_step(cfg, x, times[i] - times[i - 1], rng);
    record(i, x);
  }
}

}  // namespace

SdePath em_simulate(const SdeConfig& cfg, std::uint64_t stream_id) {
  SdePath path;
  path.times = step_times(cfg);
  path.values.reserve(path.times.size());
  path.boundary_validated = !(cfg.model == Model::indirect && cfg.s >= 1.0);
  Rng rng(RngStream{cfg.seed, stream_id});
  integrate(cfg, path.times, rng, [&](std::size_t i, double x) {
    path.values.push_back(x);
    if (!path.absorbed && (x == 0.0 || x == 1.0)) {
      path.absorbed = SdeAbsorption{path.times[i], x == 0.0 ? 0 : 1};
    }
  });
  return path;
}

double em_terminal(const SdeConfig& cfg, std::uint64_t stream_id) {
  const std::vector<double> times = step_times(cfg);
  Rng rng(RngStream{cfg.seed, stream_id});
  double last = cfg.x0;
  integrate(cfg, times, rng, [&](std::size_t, double x) { last = x; });
  return last;
}

std::vector<TimeMoments> path_moments(const SdeConfig& cfg, std::uint64_t reps,
                                      std::span<const double> t_grid, unsigned jobs) {
  const std::vector<double> times = step_times(cfg, t_grid);
  // Position of each requested time inside the merged step list.
  std::vector<std::size_t> slot(t_grid.size());
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const auto it = std::min_element(times.begin(), times.end(), [&](double a, double b) {
      return std::abs(a - t_grid[g]) < std::abs(b - t_grid[g]);
    });
    slot[g] = static_cast<std::size_t>(it - times.begin());
  }
  // values[g * reps + r] = X_{t_g} on path r.
  std::vector<double> values(t_grid.size() * reps);
  parallel_for(static_cast<std::size_t>(reps), jobs, [&](std::size_t r) {
    Rng rng(RngStream{cfg.seed, r});
    std::vector<double> path(times.size());
    integrate(cfg, times, rng, [&](std::size_t i, double x) { path[i] = x; });
    for (std::size_t g = 0; g < slot.size(); ++g) values[g * reps + r] = path[slot[g]];
  });
  std::vector<TimeMoments> out;
  out.reserve(t_grid.size());
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const auto m = sample_moments(std::span<const double>(values).subspan(g * reps, reps));
    out.push_back({t_grid[g], m.mean, m.variance});
  }
  return out;
}

}  // namespace wfis
