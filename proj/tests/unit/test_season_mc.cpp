#include <gtest/gtest.h>

#include <cmath>

#include "wfis/errors.hpp"
#include "wfis/season_exact.hpp"
#include "wfis/season_mc.hpp"

using namespace wfis;

TEST(Rng, StreamsReplay) {
  Rng a({7, 3});
  Rng b({7, 3});
  Rng c({7, 4});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.index(1000);
    EXPECT_EQ(x, b.index(1000));
    differs = differs || x != c.index(1000);
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(job_stream(1, 5), (std::uint64_t{1} << 32) | 5);
}

TEST(Rng, BinomialEdges) {
  Rng rng({1, 0});
  EXPECT_EQ(rng.binomial(10, 0.0), 0);
  EXPECT_EQ(rng.binomial(10, 1.0), 10);
  EXPECT_EQ(rng.binomial(0, 0.5), 0);
}

TEST(SimulateSeason, TrivialCases) {
  EXPECT_EQ(simulate_season({4, 5, 0}, {1, 0}), (SeasonOutcome{0, 0}));
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto o = simulate_season({0, 6, 4}, {1, r});
    EXPECT_EQ(o.x_count, 0);
    EXPECT_LE(o.y_count, 4);
  }
  EXPECT_THROW(simulate_season({0, 0, 1}, {1, 0}), DegenerateError);
  EXPECT_EQ(simulate_season({0, 0, 0}, {1, 0}), (SeasonOutcome{0, 0}));
}

TEST(SimulateSeason, OutcomeBounds) {
  SeasonSimulator sim;
  Rng rng({3, 0});
  for (std::int64_t w = 0; w <= 8; ++w) {
    for (std::int64_t b = 0; b <= 8; ++b) {
      for (std::int64_t f = 0; f <= 12; ++f) {
        if (w + b == 0) continue;
        for (int k = 0; k < 20; ++k) {
          const auto o = sim.run({w, b, f}, rng);
          ASSERT_LE(o.x_count, std::min(w, f));
          ASSERT_LE(o.y_count, std::min(b, f));
          ASSERT_LE(o.x_count + o.y_count, f);
          ASSERT_GE(o.x_count + o.y_count, std::min<std::int64_t>(1, f));
        }
      }
    }
  }
}

TEST(SimulateSeason, Deterministic) {
  for (std::uint64_t r = 0; r < 20; ++r) {
    EXPECT_EQ(simulate_season({30, 20, 25}, {99, r}), simulate_season({30, 20, 25}, {99, r}));
  }
}

TEST(SimulateSeason, MeanMatchesExact) {
  const UrnState s{10, 10, 10};
  const auto outcomes = simulate_seasons(s, 100000, 11);
  double sum = 0.0;
  double sq = 0.0;
  for (const auto& o : outcomes) {
    sum += static_cast<double>(o.x_count);
    sq += static_cast<double>(o.x_count * o.x_count);
  }
  const double n = static_cast<double>(outcomes.size());
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_LE(std::abs(mean - 10.0 * p_white(s)), 3.0 * se);
}

TEST(SimulateSeasons, IndependentOfJobs) {
  const auto a = simulate_seasons({40, 30, 50}, 10000, 5, 1);
  const auto b = simulate_seasons({40, 30, 50}, 10000, 5, 3);
  EXPECT_EQ(a, b);
}

TEST(Coupling, ForbiddenOutcomeNeverOccurs) {
  for (std::int64_t w = 1; w <= 4; ++w) {
    for (std::int64_t b = 1; b <= 4; ++b) {
      for (std::int64_t f = 0; f <= 6; ++f) {
        EXPECT_EQ(count_coupled_urns({w, b, f}, 2000, 17).forbidden(), 0u);
      }
    }
  }
  const auto none = simulate_coupled_urns({3, 3, 0}, {1, 0});
  EXPECT_FALSE(none.red_drawn_urn1);
  EXPECT_FALSE(none.red_drawn_urn2);
  EXPECT_THROW(simulate_coupled_urns({0, 3, 2}, {1, 0}), DomainError);
  EXPECT_THROW(simulate_coupled_urns({3, 0, 2}, {1, 0}), DomainError);
}

TEST(Coupling, MarginalsMatchExact) {
  const UrnState s{5, 5, 5};
  const std::uint64_t reps = 100000;
  const auto c = count_coupled_urns(s, reps, 23);
  const double n = static_cast<double>(reps);
  const double p1 = static_cast<double>(c.counts[1][0] + c.counts[1][1]) / n;
  const double p2 = static_cast<double>(c.counts[0][1] + c.counts[1][1]) / n;
  const double e1 = 1.0 - exact_q({5, 4, 5});
  const double e2 = 1.0 - exact_q({4, 5, 5});
  EXPECT_LE(std::abs(p1 - e1), 3.0 * std::sqrt(e1 * (1 - e1) / n));
  EXPECT_LE(std::abs(p2 - e2), 3.0 * std::sqrt(e2 * (1 - e2) / n));
}

TEST(EstimateProbs, Examples) {
  const auto a = estimate_probs({1, 1, 2}, 100000, 3);
  EXPECT_EQ(a.p_b.value, 1.0);
  EXPECT_EQ(a.p_b.std_error, 0.0);
  const auto b = estimate_probs({1, 1, 1}, 100000, 3);
  EXPECT_NEAR(b.p_w.value, 0.5, 0.01);
  EXPECT_NEAR(b.p_b.value, 0.5, 0.01);
  EXPECT_LE(b.p_w.std_error, 0.5 / std::sqrt(99999.0));
  EXPECT_THROW(estimate_probs({0, 1, 1}, 10, 3), DomainError);
}

TEST(EstimateProbs, ConsistentWithExactOnSmallStates) {
  for (std::int64_t w = 1; w <= 4; ++w) {
    for (std::int64_t b = 1; w + b <= 6; ++b) {
      for (std::int64_t f = 0; w + b + f <= 8; ++f) {
        const UrnState s{w, b, f};
        const auto e = estimate_probs(s, 100000, 41);
        const auto p = repro_probs(s);
        EXPECT_LE(std::abs(e.p_w.value - *p.p_w), 4.0 * e.p_w.std_error + 1e-12);
        EXPECT_LE(std::abs(e.p_b.value - *p.p_b), 4.0 * e.p_b.std_error + 1e-12);
      }
    }
  }
}

TEST(TailCheck, TrivialRowsAndBound) {
  const double ds[] = {0.0, 40.0, 150.0};
  const auto rows = tail_check({100, 100, 100}, 20000, ds, 9);
  EXPECT_DOUBLE_EQ(rows[0].bound_x, 1.0);
  EXPECT_LE(rows[0].tail_x.value, 1.0);
  EXPECT_NEAR(rows[1].bound_x, std::exp(-4.0), 1e-15);
  EXPECT_LE(rows[1].tail_x.value, std::exp(-4.0));
  EXPECT_EQ(rows[2].tail_x.value, 0.0);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.violated_x);
    EXPECT_FALSE(r.violated_y);
  }
}

TEST(ThirdMoment, BoundAndTrivialCase) {
  EXPECT_NEAR(third_moment_bound(100), 12.0 * std::exp(1.0) * 1000.0, 1e-9);
  EXPECT_NEAR(third_moment_bound(400) / third_moment_bound(100), 8.0, 1e-12);
  const auto zero = third_moment_check({10, 10, 0}, 1000, 1);
  EXPECT_EQ(zero.moment_x.value, 0.0);
  const auto r = third_moment_check({100, 100, 100}, 20000, 1);
  EXPECT_LE(r.moment_x.value, r.bound_x);
  EXPECT_FALSE(r.violated_x);
  EXPECT_FALSE(r.violated_y);
}
