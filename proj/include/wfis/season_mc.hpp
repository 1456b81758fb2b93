#pragma once

// Monte-Carlo simulation of one reproductive season.

#include <cstdint>
#include <span>
#include <vector>

#include "wfis/rng.hpp"
#include "wfis/stats.hpp"
#include "wfis/urn_state.hpp"

namespace wfis {

/// Realized reproduction counts: marked whites (X~) and marked blacks (Y~).
struct SeasonOutcome {
  std::int64_t x_count = 0;
  std::int64_t y_count = 0;

  friend constexpr bool operator==(const SeasonOutcome&, const SeasonOutcome&) = default;
};

/// Runs seasons with reusable buffers. The urn is an array of ball ids
/// (whites 0..w-1, blacks w..w+b-1); a draw picks a uniform slot, a drawn
/// white is marked and swap-removed, a drawn black is marked and stays.
/// Draws left after the urn empties (only possible when b = 0) are void.
class SeasonSimulator {
 public:
  /// Throws DegenerateError when w = b = 0 and f > 0.
  SeasonOutcome run(UrnState state, Rng& rng);

  /// Whether ball `id` was marked in the last run.
  bool marked(std::int64_t id) const { return marked_[static_cast<std::size_t>(id)] != 0; }

 private:
  std::vector<std::int32_t> present_;
  std::vector<std::uint8_t> marked_;
};

SeasonOutcome simulate_season(UrnState state, RngStream stream);

struct CoupledOutcome {
  bool red_drawn_urn1 = false;
  bool red_drawn_urn2 = false;
};

/// Shared-random-number coupling of two red-ball urns of w + b balls each.
/// Balls are numbered 0..w+b-1; in urn 1 balls 0..w-1 are white, w..w+b-2
/// black and w+b-1 red; urn 2 is identical except ball w-1 is black. Each
/// step reads uniform numbers k from one shared stream and hands k to every
/// still-running urn that has not chosen yet and still contains ball k,
/// until every running urn has chosen. An urn stops at its red ball.
///
/// Urn 1 misses its red ball with probability q(w, b-1, f), urn 2 with
/// q(w-1, b, f); by construction urn 2 never draws its red ball while urn 1
/// misses it. Throws DomainError unless w >= 1 and b >= 1.
CoupledOutcome simulate_coupled_urns(UrnState state, Rng& rng);
CoupledOutcome simulate_coupled_urns(UrnState state, RngStream stream);

/// Replicas are processed in fixed blocks, block k drawing from stream
/// (seed, k); results do not depend on `jobs`.
inline constexpr std::uint64_t kReplicaBlock = 4096;

/// `reps` independent seasons in replica order.
std::vector<SeasonOutcome> simulate_seasons(UrnState state, std::uint64_t reps,
                                            std::uint64_t seed, unsigned jobs = 1);

/// Outcome counts of `reps` coupled runs, indexed [urn 1 drew red][urn 2 drew red].
struct CoupledCounts {
  std::uint64_t counts[2][2] = {{0, 0}, {0, 0}};

  /// Urn 2 drew its red ball while urn 1 did not.
  std::uint64_t forbidden() const { return counts[0][1]; }
};

CoupledCounts count_coupled_urns(UrnState state, std::uint64_t reps, std::uint64_t seed,
                                 unsigned jobs = 1);

struct ProbEstimates {
  EstimateWithError p_w;
  EstimateWithError p_b;
};

/// Frequency with which a designated white (ball 0) and a designated black
/// (ball w) reproduce. Throws DomainError unless w, b, reps >= 1.
ProbEstimates estimate_probs(UrnState state, std::uint64_t reps, std::uint64_t seed,
                             unsigned jobs = 1);

/// Empirical Prb{|X - E X| >= D} against exp(-D^2 / (4 n)) with n = w for X~
/// and n = b for Y~. E X is the exact mean. A row is flagged when the
/// empirical frequency exceeds the bound by more than 3 binomial standard
/// errors.
struct TailRow {
  double d = 0.0;
  double bound_x = 0.0;
  double bound_y = 0.0;
  EstimateWithError tail_x;
  EstimateWithError tail_y;
  bool violated_x = false;
  bool violated_y = false;
};

std::vector<TailRow> tail_check(UrnState state, std::uint64_t reps,
                                std::span<const double> thresholds, std::uint64_t seed,
                                unsigned jobs = 1);

/// Empirical E|X - E X|^3 against 12 e n^{3/2}.
struct ThirdMomentReport {
  EstimateWithError moment_x;
  EstimateWithError moment_y;
  double bound_x = 0.0;
  double bound_y = 0.0;
  bool violated_x = false;
  bool violated_y = false;
};

double third_moment_bound(std::int64_t n);

ThirdMomentReport third_moment_check(UrnState state, std::uint64_t reps, std::uint64_t seed,
                                     unsigned jobs = 1);

}  // namespace wfis
