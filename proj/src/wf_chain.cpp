#include "wfis/wf_chain.hpp"

#include <cmath>
#include <string>

#include "wfis/errors.hpp"

namespace wfis {

std::int64_t season_draws(const ChainConfig& cfg) {
  return static_cast<std::int64_t>(std::floor(cfg.s * static_cast<double>(cfg.n)));
}

double selection_increment(const ChainConfig& cfg) {
  const double n = static_cast<double>(cfg.n);
  return cfg.scale == SelectionScale::per_males ? cfg.beta / n
                                                : cfg.beta / ((1.0 + cfg.s) * n);
}

std::int64_t validate(const ChainConfig& cfg) {
  if (cfg.n <= 0) throw DegenerateError("chain needs n >= 1");
  if (!std::isfinite(cfg.beta)) throw DomainError("beta must be finite");
  if (cfg.model == Model::indirect) {
    if (!(cfg.s > 0.0) || !std::isfinite(cfg.s)) throw DomainError("sex ratio s must be > 0");
    if (season_draws(cfg) < 1) {
      throw DegenerateError("floor(s n) = 0: no draws per season (s = " +
                            std::to_string(cfg.s) + ", n = " + std::to_string(cfg.n) + ")");
    }
  }
  if (1.0 + selection_increment(cfg) <= 0.0) {
    throw DomainError("selection factor 1 + beta' must be positive");
  }
  if (cfg.generations < 0) throw DomainError("generations must be nonnegative");
  if (!(cfg.x0 >= 0.0 && cfg.x0 <= 1.0)) throw DomainError("x0 must lie in [0, 1]");
  const double scaled = cfg.x0 * static_cast<double>(cfg.n);
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, scaled)) {
    throw DomainError("x0 = " + std::to_string(cfg.x0) + " is not on the grid {k/" +
                      std::to_string(cfg.n) + "}");
  }
  return static_cast<std::int64_t>(rounded);
}

std::int64_t chain_step(std::int64_t whites, const ChainConfig& cfg, Rng& rng,
                        SeasonSimulator& sim) {
  const std::int64_t n = cfg.n;
  const SeasonOutcome season = sim.run({whites, n - whites, season_draws(cfg)}, rng);
  if (season.x_count == 0 && season.y_count == 0) {
    // Impossible with f >= 1 and a nonempty urn: the first draw always marks.
    throw DegenerateError("season produced no reproduction; white egg fraction is 0/0");
  }
  const double weighted = (1.0 + selection_increment(cfg)) * static_cast<double>(season.x_count);
  const double z = weighted / (weighted + static_cast<double>(season.y_count));
  return rng.binomial(n, z);
}

std::int64_t classical_wf_step(std::int64_t whites, std::int64_t n, double beta, Rng& rng) {
  if (n <= 0) throw DegenerateError("classical chain needs n >= 1");
  const double x = static_cast<double>(whites) / static_cast<double>(n);
  const double favored = (1.0 + beta / static_cast<double>(n)) * x;
  return rng.binomial(n, favored / ((1.0 - x) + favored));
}

std::int64_t model_step(std::int64_t whites, const ChainConfig& cfg, Rng& rng,
                        SeasonSimulator& sim) {
  return cfg.model == Model::indirect ? chain_step(whites, cfg, rng, sim)
                                      : classical_wf_step(whites, cfg.n, cfg.beta, rng);
}

Trajectory run_chain(const ChainConfig& cfg, std::uint64_t stream_id) {
  std::int64_t whites = validate(cfg);
  Rng rng(RngStream{cfg.seed, stream_id});
  SeasonSimulator sim;
  Trajectory traj;
  traj.n = cfg.n;
  traj.counts.reserve(static_cast<std::size_t>(cfg.generations) + 1);
  traj.counts.push_back(whites);
  auto check_absorbed = [&](std::int64_t generation) {
    if (!traj.absorbed && (whites == 0 || whites == cfg.n)) {
      traj.absorbed = Absorption{generation, whites == 0 ? 0 : 1};
    }
  };
  check_absorbed(0);
  for (std::int64_t g = 1; g <= cfg.generations; ++g) {
    if (!traj.absorbed) {
      whites = model_step(whites, cfg, rng, sim);
      check_absorbed(g);
    }
    traj.counts.push_back(whites);
  }
  return traj;
}

}  // namespace wfis
