#include "wfis/season_mc.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "wfis/errors.hpp"
#include "wfis/replicas.hpp"
#include "wfis/season_exact.hpp"

namespace wfis {

SeasonOutcome SeasonSimulator::run(UrnState state, Rng& rng) {
  require_valid(state);
  const std::int64_t balls = state.w + state.b;
  if (balls == 0 && state.f > 0) {
    throw DegenerateError("cannot draw from an empty urn " + to_string(state));
  }
  present_.resize(static_cast<std::size_t>(balls));
  std::iota(present_.begin(), present_.end(), 0);
  marked_.assign(static_cast<std::size_t>(balls), 0);

  SeasonOutcome out;
  std::size_t size = present_.size();
  const auto whites = static_cast<std::int32_t>(state.w);
  for (std::int64_t draw = 0; draw < state.f && size > 0; ++draw) {
    const auto slot = static_cast<std::size_t>(rng.index(size));
    const std::int32_t id = present_[slot];
    auto& mark = marked_[static_cast<std::size_t>(id)];
    if (id < whites) {
      mark = 1;
      ++out.x_count;
      present_[slot] = present_[--size];
    } else if (mark == 0) {
      mark = 1;
      ++out.y_count;
    }
  }
  return out;
}

SeasonOutcome simulate_season(UrnState state, RngStream stream) {
  Rng rng(stream);
  SeasonSimulator sim;
  return sim.run(state, rng);
}

CoupledOutcome simulate_coupled_urns(UrnState state, Rng& rng) {
  require_valid(state);
  if (state.w < 1 || state.b < 1) {
    throw DomainError("coupled urns need w >= 1 and b >= 1, got " + to_string(state));
  }
  const auto balls = static_cast<std::size_t>(state.w + state.b);
  const std::size_t red = balls - 1;
  // Ball i is white in urn u iff i < whites[u].
  const std::size_t whites[2] = {static_cast<std::size_t>(state.w),
                                 static_cast<std::size_t>(state.w - 1)};
  std::vector<std::uint8_t> present[2] = {std::vector<std::uint8_t>(balls, 1),
                                          std::vector<std::uint8_t>(balls, 1)};
  bool running[2] = {true, true};
  bool red_drawn[2] = {false, false};

  for (std::int64_t step = 0; step < state.f && (running[0] || running[1]); ++step) {
    std::size_t chosen[2] = {balls, balls};
    auto pending = [&](int u) { return running[u] && chosen[u] == balls; };
    while (pending(0) || pending(1)) {
      const auto k = static_cast<std::size_t>(rng.index(balls));
      for (int u = 0; u < 2; ++u) {
        if (pending(u) && present[u][k]) chosen[u] = k;
      }
    }
    for (int u = 0; u < 2; ++u) {
      if (!running[u]) continue;
      const std::size_t k = chosen[u];
      if (k == red) {
        red_drawn[u] = true;
        running[u] = false;
      } else if (k < whites[u]) {
        present[u][k] = 0;
      }
    }
  }
  return {red_drawn[0], red_drawn[1]};
}

CoupledOutcome simulate_coupled_urns(UrnState state, RngStream stream) {
  Rng rng(stream);
  return simulate_coupled_urns(state, rng);
}

std::vector<SeasonOutcome> simulate_seasons(UrnState state, std::uint64_t reps,
                                            std::uint64_t seed, unsigned jobs) {
  require_valid(state);
  const auto blocks = run_replica_blocks(
      reps, RngStream{seed, 0}, jobs, kReplicaBlock,
      [&](Rng& rng, std::uint64_t, std::uint64_t count) {
        SeasonSimulator sim;
        std::vector<SeasonOutcome> out(count);
        for (auto& o : out) o = sim.run(state, rng);
        return out;
      });
  std::vector<SeasonOutcome> all;
  all.reserve(reps);
  for (const auto& block : blocks) all.insert(all.end(), block.begin(), block.end());
  return all;
}

CoupledCounts count_coupled_urns(UrnState state, std::uint64_t reps, std::uint64_t seed,
                                 unsigned jobs) {
  const auto blocks = run_replica_blocks(
      reps, RngStream{seed, 0}, jobs, kReplicaBlock,
      [&](Rng& rng, std::uint64_t, std::uint64_t count) {
        CoupledCounts c;
        for (std::uint64_t r = 0; r < count; ++r) {
          const CoupledOutcome o = simulate_coupled_urns(state, rng);
          ++c.counts[o.red_drawn_urn1 ? 1 : 0][o.red_drawn_urn2 ? 1 : 0];
        }
        return c;
      });
  CoupledCounts total;
  for (const auto& c : blocks) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) total.counts[i][j] += c.counts[i][j];
    }
  }
  return total;
}

ProbEstimates estimate_probs(UrnState state, std::uint64_t reps, std::uint64_t seed,
                             unsigned jobs) {
  require_valid(state);
  if (state.w < 1 || state.b < 1) {
    throw DomainError("estimate_probs needs w >= 1 and b >= 1, got " + to_string(state));
  }
  if (reps < 1) throw DomainError("estimate_probs needs reps >= 1");
  struct Acc {
    RunningStats white;
    RunningStats black;
  };
  const auto blocks = run_replica_blocks(
      reps, RngStream{seed, 0}, jobs, kReplicaBlock,
      [&](Rng& rng, std::uint64_t, std::uint64_t count) {
        SeasonSimulator sim;
        Acc acc;
        for (std::uint64_t r = 0; r < count; ++r) {
          sim.run(state, rng);
          acc.white.add(sim.marked(0) ? 1.0 : 0.0);
          acc.black.add(sim.marked(state.w) ? 1.0 : 0.0);
        }
        return acc;
      });
  Acc total;
  for (const auto& acc : blocks) {
    total.white.merge(acc.white);
    total.black.merge(acc.black);
  }
  return {total.white.estimate(), total.black.estimate()};
}

namespace {

EstimateWithError bernoulli_estimate(std::uint64_t hits, std::uint64_t reps) {
  const double p = static_cast<double>(hits) / static_cast<double>(reps);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps)), reps};
}

double tail_bound(double d, std::int64_t n) {
  if (n == 0) return d > 0.0 ? 0.0 : 1.0;
  return std::exp(-d * d / (4.0 * static_cast<double>(n)));
}

}  // namespace

std::vector<TailRow> tail_check(UrnState state, std::uint64_t reps,
                                std::span<const double> thresholds, std::uint64_t seed,
                                unsigned jobs) {
  require_valid(state);
  if (reps < 1) throw DomainError("tail_check needs reps >= 1");
  const SeasonMoments exact = season_moments_exact(state);
  const std::size_t nd = thresholds.size();
  struct Acc {
    std::vector<std::uint64_t> x;
    std::vector<std::uint64_t> y;
  };
  const auto blocks = run_replica_blocks(
      reps, RngStream{seed, 0}, jobs, kReplicaBlock,
      [&](Rng& rng, std::uint64_t, std::uint64_t count) {
        SeasonSimulator sim;
        Acc acc{std::vector<std::uint64_t>(nd, 0), std::vector<std::uint64_t>(nd, 0)};
        for (std::uint64_t r = 0; r < count; ++r) {
          const SeasonOutcome o = sim.run(state, rng);
          const double dx = std::abs(static_cast<double>(o.x_count) - exact.mean_x);
          const double dy = std::abs(static_cast<double>(o.y_count) - exact.mean_y);
          for (std::size_t i = 0; i < nd; ++i) {
            acc.x[i] += dx >= thresholds[i] ? 1 : 0;
            acc.y[i] += dy >= thresholds[i] ? 1 : 0;
          }
        }
        return acc;
      });
  std::vector<TailRow> rows(nd);
  for (std::size_t i = 0; i < nd; ++i) {
    std::uint64_t hx = 0;
    std::uint64_t hy = 0;
    for (const auto& acc : blocks) {
      hx += acc.x[i];
      hy += acc.y[i];
    }
    TailRow& row = rows[i];
    row.d = thresholds[i];
    row.bound_x = tail_bound(row.d, state.w);
    row.bound_y = tail_bound(row.d, state.b);
    row.tail_x = bernoulli_estimate(hx, reps);
    row.tail_y = bernoulli_estimate(hy, reps);
    row.violated_x = row.tail_x.value > row.bound_x + 3.0 * row.tail_x.std_error;
    row.violated_y = row.tail_y.value > row.bound_y + 3.0 * row.tail_y.std_error;
  }
  return rows;
}

double third_moment_bound(std::int64_t n) {
  return 12.0 * std::numbers::e * std::pow(static_cast<double>(n), 1.5);
}

ThirdMomentReport third_moment_check(UrnState state, std::uint64_t reps, std::uint64_t seed,
                                     unsigned jobs) {
  require_valid(state);
  if (reps < 1) throw DomainError("third_moment_check needs reps >= 1");
  const SeasonMoments exact = season_moments_exact(state);
  struct Acc {
    RunningStats x;
    RunningStats y;
  };
  const auto blocks = run_replica_blocks(
      reps, RngStream{seed, 0}, jobs, kReplicaBlock,
      [&](Rng& rng, std::uint64_t, std::uint64_t count) {
        SeasonSimulator sim;
        Acc acc;
        for (std::uint64_t r = 0; r < count; ++r) {
          const SeasonOutcome o = sim.run(state, rng);
          acc.x.add(std::pow(std::abs(static_cast<double>(o.x_count) - exact.mean_x), 3));
          acc.y.add(std::pow(std::abs(static_cast<double>(o.y_count) - exact.mean_y), 3));
        }
        return acc;
      });
  Acc total;
  for (const auto& acc : blocks) {
    total.x.merge(acc.x);
    total.y.merge(acc.y);
  }
  ThirdMomentReport report;
  report.moment_x = total.x.estimate();
  report.moment_y = total.y.estimate();
  report.bound_x = third_moment_bound(state.w);
  report.bound_y = third_moment_bound(state.b);
  report.violated_x = report.moment_x.value > report.bound_x + 3.0 * report.moment_x.std_error;
  report.violated_y = report.moment_y.value > report.bound_y + 3.0 * report.moment_y.std_error;
  return report;
}

}  // namespace wfis
