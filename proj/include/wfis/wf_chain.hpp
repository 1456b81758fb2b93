#pragma once

// Multi-generation Wright-Fisher chains on the grid {0, 1/n, ..., 1}.
//
// Indirect-selection chain: from w = x n whites and b = n - w blacks, one
// season with f = floor(s n) draws yields (X~, Y~); the white egg fraction is
//   Z = (1 + beta') X~ / ((1 + beta') X~ + Y~)
// and the next generation is Binomial(n, Z) / n. beta' is beta/n by default
// or beta/((1+s) n) with SelectionScale::per_total.
//
// Classical chain: Binomial(n, (1+beta/n) x / (1 - x + (1+beta/n) x)) / n.

#include <cstdint>
#include <optional>
#include <vector>

#include "wfis/rng.hpp"
#include "wfis/season_mc.hpp"

namespace wfis {

enum class Model { indirect, classical };

enum class SelectionScale {
  per_males,  // beta / n
  per_total,  // beta / ((1 + s) n)
};

struct ChainConfig {
  std::int64_t n = 0;
  double s = 0.5;
  double beta = 0.0;
  double x0 = 0.5;  // must lie on the grid
  std::int64_t generations = 0;
  std::uint64_t seed = 0;
  SelectionScale scale = SelectionScale::per_males;
  Model model = Model::indirect;
};

/// Number of draws per season, floor(s n).
std::int64_t season_draws(const ChainConfig& cfg);

/// Selection increment beta' applied to white eggs.
double selection_increment(const ChainConfig& cfg);

/// x0 n as an integer. Throws DomainError when x0 is not on the grid or the
/// configuration is invalid, DegenerateError when n = 0 or floor(s n) = 0.
std::int64_t validate(const ChainConfig& cfg);

struct Absorption {
  std::int64_t generation = 0;
  std::int64_t boundary = 0;  // 0 or 1
};

struct Trajectory {
  std::int64_t n = 0;
  std::vector<std::int64_t> counts;  // white counts, generation 0..generations
  std::optional<Absorption> absorbed;

  double frequency(std::size_t generation) const {
    return static_cast<double>(counts[generation]) / static_cast<double>(n);
  }
};

/// One generation of the indirect chain from `whites` whites. `sim` holds
/// reusable season buffers.
std::int64_t chain_step(std::int64_t whites, const ChainConfig& cfg, Rng& rng,
                        SeasonSimulator& sim);

/// One generation of the classical chain.
std::int64_t classical_wf_step(std::int64_t whites, std::int64_t n, double beta, Rng& rng);

/// Step of whichever chain `cfg.model` names.
std::int64_t model_step(std::int64_t whites, const ChainConfig& cfg, Rng& rng,
                        SeasonSimulator& sim);

/// Iterates the chain for cfg.generations steps using stream
/// (cfg.seed, stream_id). After absorption the remaining states repeat the
/// boundary value.
Trajectory run_chain(const ChainConfig& cfg, std::uint64_t stream_id = 0);

}  // namespace wfis
