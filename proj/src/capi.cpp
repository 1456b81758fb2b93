#include "wfis/wfis.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "wfis/diffusion.hpp"
#include "wfis/errors.hpp"
#include "wfis/harness.hpp"
#include "wfis/limit_analytic.hpp"
#include "wfis/season_exact.hpp"
#include "wfis/season_mc.hpp"
#include "wfis/wf_chain.hpp"

struct wfis_qtable {
  wfis::QTable table;
};

struct wfis_trajectory {
  wfis::Trajectory traj;
};

struct wfis_sde_path {
  wfis::SdePath path;
};

struct wfis_rate_tables {
  std::vector<wfis::RateTable> tables;
};

struct wfis_infinitesimal_report {
  wfis::InfinitesimalReport report;
};

namespace {

thread_local std::string g_last_error;

wfis_status fail(wfis_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body() and maps exceptions onto status codes.
template <class Body>
wfis_status guarded(Body&& body) {
  try {
    body();
    return WFIS_OK;
  } catch (const wfis::DomainError& e) {
    return fail(WFIS_ERR_DOMAIN, e.what());
  } catch (const wfis::OutOfRangeError& e) {
    return fail(WFIS_ERR_OUT_OF_RANGE, e.what());
  } catch (const wfis::DegenerateError& e) {
    return fail(WFIS_ERR_DEGENERATE, e.what());
  } catch (const wfis::InfeasibleError& e) {
    return fail(WFIS_ERR_INFEASIBLE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WFIS_ERR_ALLOC, "out of memory");
  } catch (const std::exception& e) {
    return fail(WFIS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WFIS_ERR_INTERNAL, "unknown error");
  }
}

wfis_status null_arg() { return fail(WFIS_ERR_NULL_ARG, "required pointer argument is NULL"); }

template <class... P>
bool any_null(P*... p) {
  return ((p == nullptr) || ...);
}

wfis_estimate to_c(const wfis::EstimateWithError& e) { return {e.value, e.std_error, e.n_samples}; }

wfis::QKind to_kind(wfis_q_kind kind) {
  if (kind == WFIS_Q) return wfis::QKind::q;
  if (kind == WFIS_Q_TILDE) return wfis::QKind::q_tilde;
  throw wfis::DomainError("unknown table kind");
}

wfis::Model to_model(wfis_model model) {
  if (model == WFIS_MODEL_INDIRECT) return wfis::Model::indirect;
  if (model == WFIS_MODEL_CLASSICAL) return wfis::Model::classical;
  throw wfis::DomainError("unknown model");
}

wfis::SelectionScale to_scale(wfis_selection_scale scale) {
  if (scale == WFIS_SCALE_PER_MALES) return wfis::SelectionScale::per_males;
  if (scale == WFIS_SCALE_PER_TOTAL) return wfis::SelectionScale::per_total;
  throw wfis::DomainError("unknown selection scale");
}

wfis::Region to_region(wfis_region_kind kind, double param) {
  if (kind == WFIS_REGION_Y0) return wfis::omega_y0(param);
  if (kind == WFIS_REGION_S) return wfis::omega_s(param);
  throw wfis::DomainError("unknown region kind");
}

wfis::RateTarget to_target(wfis_rate_target target) {
  const auto index = static_cast<std::size_t>(target);
  if (index >= wfis::kAllRateTargets.size()) throw wfis::DomainError("unknown rate target");
  return wfis::kAllRateTargets[index];
}

wfis::ChainConfig to_cpp(const wfis_chain_config& c) {
  return {c.n, c.s, c.beta, c.x0, c.generations, c.seed, to_scale(c.scale), to_model(c.model)};
}

wfis::SdeConfig to_cpp(const wfis_sde_config& c) {
  return {c.s, c.beta, c.x0, c.dt, c.t_end, c.seed, to_model(c.model)};
}

wfis_coefficient_check to_c(const wfis::CoefficientCheck& c) {
  return {to_c(c.estimate), c.reference, c.error, c.envelope_c, c.allowance, c.within ? 1 : 0};
}

wfis_moment_comparison to_c(const wfis::MomentComparison& m) {
  return {to_c(m.chain), to_c(m.diffusion), m.difference, m.tolerance, m.agrees ? 1 : 0};
}

}  // namespace

extern "C" {

const char* wfis_version(void) { return "0.1.0"; }

const char* wfis_last_error(void) { return g_last_error.c_str(); }

const char* wfis_status_name(wfis_status status) {
  switch (status) {
    case WFIS_OK: return "ok";
    case WFIS_ERR_DOMAIN: return "domain error";
    case WFIS_ERR_OUT_OF_RANGE: return "out of range";
    case WFIS_ERR_DEGENERATE: return "degenerate input";
    case WFIS_ERR_INFEASIBLE: return "infeasible request";
    case WFIS_ERR_NULL_ARG: return "null argument";
    case WFIS_ERR_ALLOC: return "allocation failure";
    case WFIS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

/* exact season probabilities */

wfis_status wfis_exact_q(int64_t w, int64_t b, int64_t f, double* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] { *out = wfis::exact_q({w, b, f}); });
}

wfis_status wfis_exact_q_tilde(int64_t w, int64_t b, int64_t f, double* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] { *out = wfis::exact_q_tilde({w, b, f}); });
}

wfis_status wfis_repro_probs(int64_t w, int64_t b, int64_t f, double* p_w, int* has_p_w,
                             double* p_b, int* has_p_b) {
  if (any_null(p_w, has_p_w, p_b, has_p_b)) return null_arg();
  return guarded([&] {
    const wfis::ReproProbs r = wfis::repro_probs({w, b, f});
    *has_p_w = r.p_w.has_value();
    *has_p_b = r.p_b.has_value();
    *p_w = r.p_w.value_or(0.0);
    *p_b = r.p_b.value_or(0.0);
  });
}

wfis_status wfis_pair_probs(int64_t w, int64_t b, int64_t f, double out[3], int has[3]) {
  if (any_null(out, has)) return null_arg();
  return guarded([&] {
    const wfis::PairProbs p = wfis::pair_probs({w, b, f});
    const std::optional<double>* parts[3] = {&p.p_ww, &p.p_wb, &p.p_bb};
    for (int i = 0; i < 3; ++i) {
      has[i] = parts[i]->has_value();
      out[i] = parts[i]->value_or(0.0);
    }
  });
}

wfis_status wfis_season_moments(int64_t w, int64_t b, int64_t f, wfis_moments* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] {
    const wfis::SeasonMoments m = wfis::season_moments_exact({w, b, f});
    *out = {m.mean_x, m.mean_y, m.var_x, m.var_y, m.cov_xy};
  });
}

wfis_status wfis_qtable_build(wfis_q_kind kind, int64_t max_n, unsigned jobs,
                              wfis_qtable** out) {
  if (any_null(out)) return null_arg();
  return guarded([&] { *out = new wfis_qtable{wfis::QTable::build(to_kind(kind), max_n, jobs)}; });
}

void wfis_qtable_free(wfis_qtable* table) { delete table; }

int64_t wfis_qtable_max_n(const wfis_qtable* table) {
  return table == nullptr ? -1 : table->table.max_n();
}

wfis_status wfis_qtable_value(const wfis_qtable* table, int64_t w, int64_t b, int64_t f,
                              double* out) {
  if (any_null(table, out)) return null_arg();
  return guarded([&] { *out = table->table.value({w, b, f}); });
}

wfis_status wfis_qtable_finite_diffs(const wfis_qtable* table, int64_t w, int64_t b, int64_t f,
                                     double* dx, double* dy) {
  if (any_null(table, dx, dy)) return null_arg();
  return guarded([&] {
    const auto [ddx, ddy] = table->table.finite_diffs({w, b, f});
    *dx = ddx;
    *dy = ddy;
  });
}

wfis_status wfis_sweep_table(wfis_q_kind kind, int64_t max_n, unsigned jobs,
                             wfis_table_visitor visit, void* user) {
  if (visit == nullptr) return null_arg();
  return guarded([&] {
    wfis::QLayerRoller roller(to_kind(kind), max_n, jobs);
    do {
      const wfis::QLayer layer = roller.current();
      for (int64_t w = 0; w <= layer.max_sum(); ++w) {
        for (int64_t b = 0; b <= layer.max_sum() - w; ++b) {
          if (visit(user, w, b, layer.f(), layer(w, b)) != 0) return;
        }
      }
    } while (roller.advance());
  });
}

/* season Monte Carlo */

wfis_status wfis_simulate_season(int64_t w, int64_t b, int64_t f, uint64_t seed,
                                 uint64_t stream, int64_t* x_count, int64_t* y_count) {
  if (any_null(x_count, y_count)) return null_arg();
  return guarded([&] {
    const wfis::SeasonOutcome o = wfis::simulate_season({w, b, f}, {seed, stream});
    *x_count = o.x_count;
    *y_count = o.y_count;
  });
}

wfis_status wfis_simulate_seasons(int64_t w, int64_t b, int64_t f, uint64_t reps, uint64_t seed,
                                  unsigned jobs, int64_t* x_counts, int64_t* y_counts) {
  if (reps > 0 && any_null(x_counts, y_counts)) return null_arg();
  return guarded([&] {
    const auto outcomes = wfis::simulate_seasons({w, b, f}, reps, seed, jobs);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      x_counts[i] = outcomes[i].x_count;
      y_counts[i] = outcomes[i].y_count;
    }
  });
}

wfis_status wfis_simulate_coupled(int64_t w, int64_t b, int64_t f, uint64_t seed, uint64_t stream,
                                  int* red_drawn_1, int* red_drawn_2) {
  if (any_null(red_drawn_1, red_drawn_2)) return null_arg();
  return guarded([&] {
    const wfis::CoupledOutcome o = wfis::simulate_coupled_urns({w, b, f}, {seed, stream});
    *red_drawn_1 = o.red_drawn_urn1;
    *red_drawn_2 = o.red_drawn_urn2;
  });
}

wfis_status wfis_count_coupled(int64_t w, int64_t b, int64_t f, uint64_t reps, uint64_t seed,
                               unsigned jobs, uint64_t counts[4]) {
  if (any_null(counts)) return null_arg();
  return guarded([&] {
    const wfis::CoupledCounts c = wfis::count_coupled_urns({w, b, f}, reps, seed, jobs);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) counts[2 * i + j] = c.counts[i][j];
    }
  });
}

wfis_status wfis_estimate_probs(int64_t w, int64_t b, int64_t f, uint64_t reps, uint64_t seed,
                                unsigned jobs, wfis_estimate* p_w, wfis_estimate* p_b) {
  if (any_null(p_w, p_b)) return null_arg();
  return guarded([&] {
    const wfis::ProbEstimates e = wfis::estimate_probs({w, b, f}, reps, seed, jobs);
    *p_w = to_c(e.p_w);
    *p_b = to_c(e.p_b);
  });
}

wfis_status wfis_tail_check(int64_t w, int64_t b, int64_t f, uint64_t reps,
                            const double* thresholds, size_t count, uint64_t seed, unsigned jobs,
                            wfis_tail_row* rows) {
  if (count > 0 && any_null(thresholds, rows)) return null_arg();
  return guarded([&] {
    const auto result =
        wfis::tail_check({w, b, f}, reps, std::span<const double>(thresholds, count), seed, jobs);
    for (std::size_t i = 0; i < result.size(); ++i) {
      const wfis::TailRow& r = result[i];
      rows[i] = {r.d,          r.bound_x,         r.bound_y,         to_c(r.tail_x),
                 to_c(r.tail_y), r.violated_x ? 1 : 0, r.violated_y ? 1 : 0};
    }
  });
}

/* limits */

wfis_status wfis_solve_T(double x, double y, double z, double tol, double* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] {
    *out = wfis::solve_T({x, y, z}, tol > 0.0 ? tol : wfis::kDefaultRootTolerance);
  });
}

wfis_status wfis_eval_limit(double x, double y, double z, wfis_limit_eval* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] {
    const wfis::LimitEval e = wfis::eval_limit({x, y, z});
    out->T = e.T;
    out->u = e.u;
    out->v = e.v;
    for (int i = 0; i < 3; ++i) {
      out->grad_T[i] = e.grad_T[i];
      out->grad_u[i] = e.grad_u[i];
      out->grad_v[i] = e.grad_v[i];
    }
  });
}

wfis_status wfis_eval_u_tilde(double x, double y, double z, double* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] { *out = wfis::eval_u_tilde({x, y, z}); });
}

wfis_status wfis_eval_vs(double s, double x, wfis_vs_eval* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] {
    const wfis::VsEval e = wfis::eval_vs(s, x);
    *out = {e.s, e.x, e.v_s, e.v_s_prime, e.v_s_second};
  });
}

wfis_status wfis_vs_bounds_for(double s, wfis_vs_bounds* out) {
  if (any_null(out)) return null_arg();
  return guarded([&] {
    const wfis::VsBounds b = wfis::vs_bounds(s);
    *out = {b.v_lo, b.v_hi, b.prime_lo, b.prime_hi, b.second_lo, b.second_hi};
  });
}

wfis_status wfis_diffusion_coeffs(double s, double x, double beta, double* a, double* b) {
  if (any_null(a, b)) return null_arg();
  return guarded([&] {
    const wfis::DiffusionCoeffs c = wfis::diffusion_coeffs(s, x, beta);
    *a = c.a;
    *b = c.b;
  });
}

wfis_status wfis_classical_coeffs(double x, double beta, double* a, double* b) {
  if (any_null(a, b)) return null_arg();
  return guarded([&] {
    const wfis::DiffusionCoeffs c = wfis::classical_coeffs(x, beta);
    *a = c.a;
    *b = c.b;
  });
}

/* chains */

void wfis_chain_config_init(wfis_chain_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = {100, 0.5, 0.0, 0.5, 100, 0, WFIS_SCALE_PER_MALES, WFIS_MODEL_INDIRECT};
}

wfis_status wfis_chain_step(const wfis_chain_config* cfg, int64_t whites, uint64_t stream,
                            int64_t* out) {
  if (any_null(cfg, out)) return null_arg();
  return guarded([&] {
    wfis::ChainConfig c = to_cpp(*cfg);
    c.x0 = 0.0;
    wfis::validate(c);
    if (whites < 0 || whites > c.n) throw wfis::DomainError("white count outside [0, n]");
    wfis::Rng rng({c.seed, stream});
    wfis::SeasonSimulator sim;
    *out = wfis::model_step(whites, c, rng, sim);
  });
}

wfis_status wfis_run_chain(const wfis_chain_config* cfg, uint64_t stream, wfis_trajectory** out) {
  if (any_null(cfg, out)) return null_arg();
  return guarded([&] { *out = new wfis_trajectory{wfis::run_chain(to_cpp(*cfg), stream)}; });
}

void wfis_trajectory_free(wfis_trajectory* traj) { delete traj; }

size_t wfis_trajectory_length(const wfis_trajectory* traj) {
  return traj == nullptr ? 0 : traj->traj.counts.size();
}

const int64_t* wfis_trajectory_counts(const wfis_trajectory* traj) {
  return traj == nullptr ? nullptr : traj->traj.counts.data();
}

int wfis_trajectory_absorbed(const wfis_trajectory* traj, int64_t* generation, int* boundary) {
  if (traj == nullptr || !traj->traj.absorbed) return 0;
  if (generation != nullptr) *generation = traj->traj.absorbed->generation;
  if (boundary != nullptr) *boundary = static_cast<int>(traj->traj.absorbed->boundary);
  return 1;
}

/* diffusion */

void wfis_sde_config_init(wfis_sde_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = {0.5, 0.0, 0.5, 1e-3, 1.0, 0, WFIS_MODEL_INDIRECT};
}

wfis_status wfis_em_simulate(const wfis_sde_config* cfg, uint64_t stream, wfis_sde_path** out) {
  if (any_null(cfg, out)) return null_arg();
  return guarded([&] { *out = new wfis_sde_path{wfis::em_simulate(to_cpp(*cfg), stream)}; });
}

void wfis_sde_path_free(wfis_sde_path* path) { delete path; }

size_t wfis_sde_path_length(const wfis_sde_path* path) {
  return path == nullptr ? 0 : path->path.values.size();
}

const double* wfis_sde_path_times(const wfis_sde_path* path) {
  return path == nullptr ? nullptr : path->path.times.data();
}

const double* wfis_sde_path_values(const wfis_sde_path* path) {
  return path == nullptr ? nullptr : path->path.values.data();
}

int wfis_sde_path_absorbed(const wfis_sde_path* path, double* time, int* boundary) {
  if (path == nullptr || !path->path.absorbed) return 0;
  if (time != nullptr) *time = path->path.absorbed->time;
  if (boundary != nullptr) *boundary = path->path.absorbed->boundary;
  return 1;
}

int wfis_sde_path_boundary_validated(const wfis_sde_path* path) {
  return path != nullptr && path->path.boundary_validated ? 1 : 0;
}

wfis_status wfis_path_moments(const wfis_sde_config* cfg, uint64_t reps, const double* t_grid,
                              size_t count, unsigned jobs, wfis_time_moments* out) {
  if (any_null(cfg)) return null_arg();
  if (count > 0 && any_null(t_grid, out)) return null_arg();
  return guarded([&] {
    const auto moments =
        wfis::path_moments(to_cpp(*cfg), reps, std::span<const double>(t_grid, count), jobs);
    for (std::size_t i = 0; i < moments.size(); ++i) {
      out[i] = {moments[i].t, to_c(moments[i].mean), to_c(moments[i].variance)};
    }
  });
}

/* verification experiments */

const char* wfis_target_name(wfis_rate_target target) {
  const auto index = static_cast<std::size_t>(target);
  if (index >= wfis::kAllRateTargets.size()) return "unknown";
  return wfis::target_name(wfis::kAllRateTargets[index]).data();
}

wfis_status wfis_parse_target(const char* name, wfis_rate_target* out) {
  if (any_null(name, out)) return null_arg();
  const auto parsed = wfis::parse_target(name);
  if (!parsed) return fail(WFIS_ERR_DOMAIN, (std::string("unknown rate target ") + name).c_str());
  *out = static_cast<wfis_rate_target>(*parsed);
  return WFIS_OK;
}

wfis_status wfis_region_contains(wfis_region_kind kind, double param, double x, double y,
                                 double z, int* inside) {
  if (any_null(inside)) return null_arg();
  return guarded([&] { *inside = to_region(kind, param).contains({x, y, z}) ? 1 : 0; });
}

void wfis_sweep_options_init(wfis_sweep_options* opts) {
  if (opts == nullptr) return;
  const wfis::SweepOptions defaults;
  *opts = {defaults.jobs, defaults.max_n, defaults.full_limit};
}

wfis_status wfis_rate_sweep(wfis_region_kind kind, double param, const int64_t* ns, size_t n_count,
                            const wfis_rate_target* targets, size_t target_count,
                            const wfis_sweep_options* opts, wfis_rate_tables** out) {
  if (any_null(ns, targets, out)) return null_arg();
  return guarded([&] {
    wfis::SweepOptions options;
    if (opts != nullptr) options = {opts->jobs, opts->max_n, opts->full_limit};
    std::vector<wfis::RateTarget> wanted;
    for (size_t i = 0; i < target_count; ++i) wanted.push_back(to_target(targets[i]));
    auto tables = wfis::rate_sweep(to_region(kind, param),
                                   std::span<const std::int64_t>(ns, n_count), wanted, options);
    *out = new wfis_rate_tables{std::move(tables)};
  });
}

void wfis_rate_tables_free(wfis_rate_tables* tables) { delete tables; }

size_t wfis_rate_tables_count(const wfis_rate_tables* tables) {
  return tables == nullptr ? 0 : tables->tables.size();
}

wfis_status wfis_rate_tables_fit(const wfis_rate_tables* tables, size_t index,
                                 wfis_rate_fit* out) {
  if (any_null(tables, out)) return null_arg();
  if (index >= tables->tables.size()) return fail(WFIS_ERR_OUT_OF_RANGE, "table index");
  const wfis::RateTable& t = tables->tables[index];
  *out = {static_cast<wfis_rate_target>(t.target), t.fit.slope, t.fit.intercept, t.fit.r2,
          t.nonincreasing ? 1 : 0};
  return WFIS_OK;
}

size_t wfis_rate_tables_rows(const wfis_rate_tables* tables, size_t index) {
  if (tables == nullptr || index >= tables->tables.size()) return 0;
  return tables->tables[index].rows.size();
}

wfis_status wfis_rate_tables_row(const wfis_rate_tables* tables, size_t index, size_t row,
                                 wfis_rate_row* out) {
  if (any_null(tables, out)) return null_arg();
  if (index >= tables->tables.size() || row >= tables->tables[index].rows.size()) {
    return fail(WFIS_ERR_OUT_OF_RANGE, "rate table row");
  }
  const wfis::RateRow& r = tables->tables[index].rows[row];
  *out = {r.n, r.sup_error, r.argmax.w, r.argmax.b, r.argmax.f, r.points, r.coverage};
  return WFIS_OK;
}

wfis_status wfis_infinitesimal_check(const wfis_infinitesimal_config* cfg,
                                     wfis_infinitesimal_report** out) {
  if (any_null(cfg, out)) return null_arg();
  if ((cfg->n_count > 0 && cfg->ns == nullptr) || (cfg->x_count > 0 && cfg->xs == nullptr) ||
      (cfg->beta_count > 0 && cfg->betas == nullptr)) {
    return null_arg();
  }
  return guarded([&] {
    wfis::InfinitesimalConfig c;
    c.ns.assign(cfg->ns, cfg->ns + cfg->n_count);
    c.xs.assign(cfg->xs, cfg->xs + cfg->x_count);
    c.betas.assign(cfg->betas, cfg->betas + cfg->beta_count);
    c.s = cfg->s;
    c.reps = cfg->reps;
    c.seed = cfg->seed;
    c.scale = to_scale(cfg->scale);
    c.jobs = cfg->jobs;
    *out = new wfis_infinitesimal_report{wfis::infinitesimal_check(c)};
  });
}

void wfis_infinitesimal_report_free(wfis_infinitesimal_report* report) { delete report; }

size_t wfis_infinitesimal_report_cells(const wfis_infinitesimal_report* report) {
  return report == nullptr ? 0 : report->report.cells.size();
}

wfis_status wfis_infinitesimal_report_cell(const wfis_infinitesimal_report* report, size_t index,
                                           wfis_infinitesimal_cell* out) {
  if (any_null(report, out)) return null_arg();
  if (index >= report->report.cells.size()) return fail(WFIS_ERR_OUT_OF_RANGE, "cell index");
  const wfis::InfinitesimalCell& c = report->report.cells[index];
  out->n = c.n;
  out->x = c.x;
  out->beta = c.beta;
  out->drift = to_c(c.drift);
  out->variance = to_c(c.variance);
  out->has_shift = c.shift.has_value();
  out->shift = c.shift ? to_c(*c.shift) : wfis_estimate{0.0, 0.0, 0};
  out->shift_reference = c.shift_reference;
  out->shift_within = c.shift_within ? 1 : 0;
  out->drift_error_decreasing = c.drift_error_decreasing ? 1 : 0;
  return WFIS_OK;
}

int wfis_infinitesimal_report_passed(const wfis_infinitesimal_report* report) {
  return report != nullptr && report->report.passed ? 1 : 0;
}

void wfis_compare_config_init(wfis_compare_config* cfg) {
  if (cfg == nullptr) return;
  const wfis::CompareConfig d;
  *cfg = {d.n,    d.s,  d.beta, d.x0, d.t, d.reps, d.seed, d.dt, WFIS_MODEL_INDIRECT,
          WFIS_SCALE_PER_MALES, d.jobs};
}

wfis_status wfis_chain_vs_diffusion(const wfis_compare_config* cfg, wfis_compare_report* out) {
  if (any_null(cfg, out)) return null_arg();
  return guarded([&] {
    wfis::CompareConfig c{cfg->n,    cfg->s,  cfg->beta, cfg->x0,
                          cfg->t,    cfg->reps, cfg->seed, cfg->dt,
                          to_model(cfg->model), to_scale(cfg->scale), cfg->jobs};
    const wfis::CompareReport r = wfis::chain_vs_diffusion(c);
    out->generations = r.generations;
    out->mean = to_c(r.mean);
    out->variance = to_c(r.variance);
    out->boundary_validated = r.boundary_validated ? 1 : 0;
    out->passed = r.passed ? 1 : 0;
  });
}

}  // extern "C"
