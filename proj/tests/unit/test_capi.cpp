#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "wfis/wfis.h"

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(wfis_version(), "0.1.0");
  EXPECT_STRNE(wfis_status_name(WFIS_OK), wfis_status_name(WFIS_ERR_DOMAIN));
}

TEST(CApi, ExactValues) {
  double q = 0.0;
  ASSERT_EQ(wfis_exact_q(1, 1, 2, &q), WFIS_OK);
  EXPECT_NEAR(q, 7.0 / 18.0, 1e-15);
  ASSERT_EQ(wfis_exact_q_tilde(0, 1, 1, &q), WFIS_OK);
  EXPECT_NEAR(q, 1.0 / 3.0, 1e-15);

  double pw = 0.0;
  double pb = 0.0;
  int hw = -1;
  int hb = -1;
  ASSERT_EQ(wfis_repro_probs(0, 3, 2, &pw, &hw, &pb, &hb), WFIS_OK);
  EXPECT_EQ(hw, 0);
  EXPECT_EQ(hb, 1);

  double pairs[3];
  int has[3];
  ASSERT_EQ(wfis_pair_probs(2, 0, 2, pairs, has), WFIS_OK);
  EXPECT_EQ(has[0], 1);
  EXPECT_NEAR(pairs[0], 1.0, 1e-15);
  EXPECT_EQ(has[2], 0);

  wfis_moments m;
  ASSERT_EQ(wfis_season_moments(1, 1, 2, &m), WFIS_OK);
  EXPECT_GT(m.mean_y, 0.0);
}

TEST(CApi, ErrorsAreReported) {
  double q = 0.0;
  EXPECT_EQ(wfis_exact_q(-1, 1, 1, &q), WFIS_ERR_DOMAIN);
  EXPECT_STRNE(wfis_last_error(), "");
  EXPECT_EQ(wfis_exact_q(1, 1, 1, nullptr), WFIS_ERR_NULL_ARG);
  EXPECT_EQ(wfis_solve_T(0.5, 0.0, 0.2, 0.0, &q), WFIS_ERR_DOMAIN);
  EXPECT_EQ(wfis_simulate_season(0, 0, 3, 1, 0, nullptr, nullptr), WFIS_ERR_NULL_ARG);
  std::int64_t x = 0;
  std::int64_t y = 0;
  EXPECT_EQ(wfis_simulate_season(0, 0, 3, 1, 0, &x, &y), WFIS_ERR_DEGENERATE);
  EXPECT_EQ(wfis_exact_q(1, 1, 1, &q), WFIS_OK);
}

TEST(CApi, QTableHandle) {
  wfis_qtable* t = nullptr;
  ASSERT_EQ(wfis_qtable_build(WFIS_Q, 20, 1, &t), WFIS_OK);
  EXPECT_EQ(wfis_qtable_max_n(t), 20);
  double v = 0.0;
  ASSERT_EQ(wfis_qtable_value(t, 1, 1, 2, &v), WFIS_OK);
  EXPECT_NEAR(v, 7.0 / 18.0, 1e-15);
  EXPECT_EQ(wfis_qtable_value(t, 10, 10, 10, &v), WFIS_ERR_OUT_OF_RANGE);
  double dx = 0.0;
  double dy = 0.0;
  EXPECT_EQ(wfis_qtable_finite_diffs(t, 2, 2, 2, &dx, &dy), WFIS_OK);
  wfis_qtable_free(t);
  wfis_qtable_free(nullptr);
  EXPECT_EQ(wfis_qtable_build(WFIS_Q, 100000, 1, &t), WFIS_ERR_INFEASIBLE);
}

namespace {
int count_visits(void* user, int64_t, int64_t, int64_t, double value) {
  auto* n = static_cast<std::vector<double>*>(user);
  n->push_back(value);
  return n->size() >= 5 ? 1 : 0;
}
}  // namespace

TEST(CApi, SweepVisitorStops) {
  std::vector<double> seen;
  ASSERT_EQ(wfis_sweep_table(WFIS_Q, 10, 1, count_visits, &seen), WFIS_OK);
  EXPECT_EQ(seen.size(), 5u);
}

TEST(CApi, MonteCarlo) {
  std::vector<std::int64_t> xs(100);
  std::vector<std::int64_t> ys(100);
  ASSERT_EQ(wfis_simulate_seasons(3, 3, 4, 100, 7, 1, xs.data(), ys.data()), WFIS_OK);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_GE(xs[i] + ys[i], 1);
  std::uint64_t counts[4];
  ASSERT_EQ(wfis_count_coupled(3, 3, 3, 2000, 7, 1, counts), WFIS_OK);
  EXPECT_EQ(counts[1], 0u);
  EXPECT_EQ(counts[0] + counts[1] + counts[2] + counts[3], 2000u);
  wfis_estimate pw;
  wfis_estimate pb;
  ASSERT_EQ(wfis_estimate_probs(2, 2, 2, 1000, 7, 1, &pw, &pb), WFIS_OK);
  EXPECT_EQ(pw.n_samples, 1000u);
}

TEST(CApi, LimitFunctions) {
  double t = 0.0;
  ASSERT_EQ(wfis_solve_T(0.0, 0.5, 0.25, 0.0, &t), WFIS_OK);
  EXPECT_NEAR(t, 0.5, 1e-14);
  wfis_limit_eval e;
  ASSERT_EQ(wfis_eval_limit(0.2, 0.3, 0.3, &e), WFIS_OK);
  EXPECT_NEAR(e.u + e.v, 1.0, 1e-15);
  wfis_vs_eval vs;
  ASSERT_EQ(wfis_eval_vs(0.5, 0.5, &vs), WFIS_OK);
  EXPECT_GT(vs.v_s_prime, 0.0);
  wfis_vs_bounds bounds;
  ASSERT_EQ(wfis_vs_bounds_for(0.5, &bounds), WFIS_OK);
  EXPECT_LE(bounds.v_lo, vs.v_s);
  double a = 0.0;
  double b = 0.0;
  ASSERT_EQ(wfis_classical_coeffs(0.5, 2.0, &a, &b), WFIS_OK);
  EXPECT_DOUBLE_EQ(b, 0.5);
  EXPECT_EQ(wfis_eval_vs(0.0, 0.5, &vs), WFIS_ERR_DOMAIN);
}

TEST(CApi, ChainAndPathHandles) {
  wfis_chain_config cfg;
  wfis_chain_config_init(&cfg);
  cfg.n = 20;
  cfg.generations = 10;
  wfis_trajectory* traj = nullptr;
  ASSERT_EQ(wfis_run_chain(&cfg, 0, &traj), WFIS_OK);
  EXPECT_EQ(wfis_trajectory_length(traj), 11u);
  EXPECT_EQ(wfis_trajectory_counts(traj)[0], 10);
  wfis_trajectory_free(traj);
  cfg.x0 = 0.33;
  EXPECT_EQ(wfis_run_chain(&cfg, 0, &traj), WFIS_ERR_DOMAIN);

  wfis_sde_config sde;
  wfis_sde_config_init(&sde);
  sde.t_end = 0.01;
  wfis_sde_path* path = nullptr;
  ASSERT_EQ(wfis_em_simulate(&sde, 0, &path), WFIS_OK);
  EXPECT_EQ(wfis_sde_path_length(path), 11u);
  EXPECT_EQ(wfis_sde_path_values(path)[0], 0.5);
  EXPECT_EQ(wfis_sde_path_boundary_validated(path), 1);
  wfis_sde_path_free(path);
}

TEST(CApi, RateSweepHandle) {
  const std::int64_t ns[] = {10, 20};
  const wfis_rate_target targets[] = {WFIS_TARGET_Q_VS_U};
  wfis_sweep_options opts;
  wfis_sweep_options_init(&opts);
  wfis_rate_tables* tables = nullptr;
  ASSERT_EQ(wfis_rate_sweep(WFIS_REGION_Y0, 0.2, ns, 2, targets, 1, &opts, &tables), WFIS_OK);
  ASSERT_EQ(wfis_rate_tables_count(tables), 1u);
  ASSERT_EQ(wfis_rate_tables_rows(tables, 0), 2u);
  wfis_rate_row row;
  ASSERT_EQ(wfis_rate_tables_row(tables, 0, 1, &row), WFIS_OK);
  EXPECT_EQ(row.n, 20);
  EXPECT_EQ(wfis_rate_tables_row(tables, 0, 2, &row), WFIS_ERR_OUT_OF_RANGE);
  wfis_rate_fit fit;
  ASSERT_EQ(wfis_rate_tables_fit(tables, 0, &fit), WFIS_OK);
  EXPECT_LT(fit.slope, 0.0);
  wfis_rate_tables_free(tables);
  wfis_rate_target parsed;
  EXPECT_EQ(wfis_parse_target("fitness_gap", &parsed), WFIS_OK);
  EXPECT_EQ(parsed, WFIS_TARGET_FITNESS_GAP);
  EXPECT_EQ(wfis_parse_target("bogus", &parsed), WFIS_ERR_DOMAIN);
}

TEST(CApi, CompareAtZeroTime) {
  wfis_compare_config cfg;
  wfis_compare_config_init(&cfg);
  cfg.n = 50;
  cfg.t = 0.0;
  cfg.reps = 10;
  wfis_compare_report report;
  ASSERT_EQ(wfis_chain_vs_diffusion(&cfg, &report), WFIS_OK);
  EXPECT_EQ(report.passed, 1);
  EXPECT_EQ(report.generations, 0);
}
