#include "wfis/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "wfis/diffusion.hpp"
#include "wfis/errors.hpp"
#include "wfis/parallel.hpp"
#include "wfis/replicas.hpp"
#include "wfis/season_exact.hpp"
#include "wfis/season_mc.hpp"

namespace wfis {

namespace {
constexpr double kRegionSlack = 1e-12;
}

bool Region::contains(const LimitPoint& p) const {
  if (p.x < -kRegionSlack || p.y < -kRegionSlack || p.z < -kRegionSlack ||
      p.x + p.y + p.z > 1.0 + kRegionSlack) {
    return false;
  }
  if (kind == RegionKind::omega_y0) return p.y >= param - kRegionSlack;
  const double s = param;
  return p.z <= s * (p.x + p.y) + kRegionSlack &&
         p.x - p.z >= (1.0 - s) / (2.0 + 2.0 * s) - kRegionSlack;
}

std::string Region::label() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", param);
  return (kind == RegionKind::omega_y0 ? "omega_y0(" : "omega_s(") + std::string(buf) + ")";
}

Region omega_y0(double y0) {
  if (!(y0 > 0.0 && y0 <= 1.0)) throw DomainError("omega_y0 needs 0 < y0 <= 1");
  return {RegionKind::omega_y0, y0};
}

Region omega_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("omega_s needs 0 < s < 1");
  return {RegionKind::omega_s, s};
}

std::string_view target_name(RateTarget target) {
  switch (target) {
    case RateTarget::q_vs_u: return "q_vs_u";
    case RateTarget::dxq_vs_ux: return "dxq_vs_ux";
    case RateTarget::dyq_vs_uy: return "dyq_vs_uy";
    case RateTarget::qtilde_vs_u2: return "qtilde_vs_u2";
    case RateTarget::fitness_gap: return "fitness_gap";
  }
  return "unknown";
}

std::optional<RateTarget> parse_target(std::string_view name) {
  for (RateTarget t : kAllRateTargets) {
    if (target_name(t) == name) return t;
  }
  return std::nullopt;
}

LineFit fit_log_log(std::span<const RateRow> rows) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const RateRow& r : rows) {
    if (r.sup_error > 0.0) {
      lx.push_back(std::log(static_cast<double>(r.n)));
      ly.push_back(std::log(r.sup_error));
    }
  }
  LineFit fit;
  if (lx.size() < 2) {
    fit.slope = fit.intercept = fit.r2 = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace {

struct Best {
  double error = -1.0;
  UrnState at;
  std::uint64_t points = 0;

  void offer(double e, UrnState p) {
    ++points;
    if (e > error) {
      error = e;
      at = p;
    }
  }
  void absorb(const Best& other) {
    points += other.points;
    if (other.error > error) {
      error = other.error;
      at = other.at;
    }
  }
};

using BestSet = std::array<Best, kAllRateTargets.size()>;

std::size_t slot(RateTarget t) { return static_cast<std::size_t>(t); }

// Sup errors of every target over the region for one N.
BestSet sweep_one(const Region& region, std::int64_t n, std::int64_t stride, unsigned jobs) {
  QLayerRoller q(QKind::q, n + 1, jobs);
  QLayerRoller qt(QKind::q_tilde, n + 1, jobs);
  BestSet total;
  const double scale = static_cast<double>(n);
  for (std::int64_t f = 0; f <= n; ++f) {
    if (f % stride == 0) {
      const QLayer lq = q.current();
      const QLayer lqt = qt.current();
      const std::int64_t rows = (n - f) / stride + 1;
      std::vector<BestSet> partial(static_cast<std::size_t>(rows));
      parallel_for(static_cast<std::size_t>(rows), jobs, [&](std::size_t row) {
        const std::int64_t w = static_cast<std::int64_t>(row) * stride;
        BestSet& best = partial[row];
        for (std::int64_t b = stride; w + b <= n - f; b += stride) {
          const LimitPoint p{static_cast<double>(w) / scale, static_cast<double>(b) / scale,
                             static_cast<double>(f) / scale};
          if (!region.contains(p)) continue;
          const LimitEval e = eval_limit(p);
          const UrnState at{w, b, f};
          const double here = lq(w, b);
          best[slot(RateTarget::q_vs_u)].offer(std::abs(here - e.u), at);
          best[slot(RateTarget::dxq_vs_ux)].offer(
              std::abs(scale * (lq(w + 1, b) - here) - e.grad_u[0]), at);
          best[slot(RateTarget::dyq_vs_uy)].offer(
              std::abs(scale * (lq(w, b + 1) - here) - e.grad_u[1]), at);
          best[slot(RateTarget::qtilde_vs_u2)].offer(std::abs(lqt(w, b) - e.u * e.u), at);
          if (w >= 1) {
            const double gap = lq(w - 1, b) - lq(w, b - 1);  // p_b - p_w
            best[slot(RateTarget::fitness_gap)].offer(
                scale * std::abs(gap - (e.grad_v[0] - e.grad_v[1]) / scale), at);
          }
        }
      });
      for (const BestSet& part : partial) {
        for (std::size_t i = 0; i < total.size(); ++i) total[i].absorb(part[i]);
      }
    }
    q.advance();
    qt.advance();
  }
  return total;
}

bool nearly_nonincreasing(const std::vector<RateRow>& rows) {
  int rises = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double prev = rows[i - 1].sup_error;
    const double cur = rows[i].sup_error;
    if (cur > prev) {
      if (cur > 1.05 * prev) return false;
      ++rises;
    }
  }
  return rises <= 1;
}

}  // namespace

std::vector<RateTable> rate_sweep(const Region& region, std::span<const std::int64_t> ns,
                                  std::span<const RateTarget> targets,
                                  const SweepOptions& options) {
  if (ns.empty()) throw DomainError("rate sweep needs at least one N");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw DomainError("rate sweep needs N >= 1");
    if (i > 0 && ns[i] <= ns[i - 1]) throw DomainError("rate sweep Ns must be strictly increasing");
    if (ns[i] > options.max_n) {
      throw InfeasibleError("N = " + std::to_string(ns[i]) + " exceeds the sweep limit " +
                            std::to_string(options.max_n));
    }
  }
  std::vector<RateTable> tables;
  for (RateTarget t : targets) tables.push_back(RateTable{t, region, {}, {}, true});

  for (std::int64_t n : ns) {
    const std::int64_t limit = std::max<std::int64_t>(options.full_limit, 1);
    const std::int64_t stride = n <= limit ? 1 : (n + limit - 1) / limit;
    const BestSet best = sweep_one(region, n, stride, options.jobs);
    const double coverage = 1.0 / static_cast<double>(stride * stride * stride);
    for (RateTable& table : tables) {
      const Best& b = best[slot(table.target)];
      if (b.points == 0) {
        throw DegenerateError("region " + region.label() + " has no lattice point for target " +
                              std::string(target_name(table.target)) + " at N = " +
                              std::to_string(n));
      }
      table.rows.push_back({n, b.error, b.at, b.points, coverage});
    }
  }
  for (RateTable& table : tables) {
    table.fit = fit_log_log(table.rows);
    table.nonincreasing = nearly_nonincreasing(table.rows);
  }
  return tables;
}

RateTable rate_sweep_q(const Region& region, std::span<const std::int64_t> ns, RateTarget target,
                       const SweepOptions& options) {
  const RateTarget one[] = {target};
  return rate_sweep(region, ns, one, options).front();
}

// ---------------------------------------------------------------------------

namespace {

// Binomial(n, z) coupled to `base` ~ Binomial(n, z_base): thinning or
// adding successes keeps the pair on one probability space.
std::int64_t coupled_binomial(std::int64_t n, std::int64_t base, double z_base, double z,
                              Rng& rng) {
  if (z == z_base) return base;
  if (z > z_base) {
    return base + rng.binomial(n - base, (z - z_base) / (1.0 - z_base));
  }
  return base - rng.binomial(base, (z_base - z) / z_base);
}

struct CellSamples {
  // whites after one generation, one vector per beta
  std::vector<std::vector<double>> whites;
};

}  // namespace

InfinitesimalReport infinitesimal_check(const InfinitesimalConfig& cfg) {
  if (cfg.ns.empty() || cfg.xs.empty() || cfg.betas.empty()) {
    throw DomainError("infinitesimal check needs nonempty n, x and beta lists");
  }
  if (cfg.reps < 2) throw DomainError("infinitesimal check needs reps >= 2");
  for (double x : cfg.xs) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1]");
    if (x == 1.0 && cfg.s >= 1.0) {
      throw DomainError("x = 1 with s >= 1 is outside the range of the coefficient limit");
    }
  }
  std::vector<std::int64_t> ns = cfg.ns;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const std::size_t nb = cfg.betas.size();

  InfinitesimalReport report;
  std::uint64_t cell_index = 0;
  for (std::int64_t n : ns) {
    for (double x_nominal : cfg.xs) {
      const std::int64_t w = std::llround(x_nominal * static_cast<double>(n));
      const double x = static_cast<double>(w) / static_cast<double>(n);
      std::vector<ChainConfig> chains;
      for (double beta : cfg.betas) {
        ChainConfig c{n, cfg.s, beta, x, 1, cfg.seed, cfg.scale, Model::indirect};
        validate(c);
        chains.push_back(c);
      }
      const std::int64_t draws = season_draws(chains.front());

      const auto blocks = run_replica_blocks(
          cfg.reps, RngStream{cfg.seed, job_stream(cell_index, 0)}, cfg.jobs, kReplicaBlock,
          [&](Rng& rng, std::uint64_t, std::uint64_t count) {
            CellSamples out;
            out.whites.assign(nb, std::vector<double>(count));
            SeasonSimulator sim;
            std::vector<double> z(nb);
            for (std::uint64_t r = 0; r < count; ++r) {
              const SeasonOutcome season = sim.run({w, n - w, draws}, rng);
              if (season.x_count + season.y_count == 0) {
                throw DegenerateError("season produced no reproduction");
              }
              for (std::size_t k = 0; k < nb; ++k) {
                const double weighted = (1.0 + selection_increment(chains[k])) *
                                        static_cast<double>(season.x_count);
                z[k] = weighted / (weighted + static_cast<double>(season.y_count));
              }
              const std::int64_t base = rng.binomial(n, z[0]);
              out.whites[0][r] = static_cast<double>(base);
              for (std::size_t k = 1; k < nb; ++k) {
                out.whites[k][r] = static_cast<double>(coupled_binomial(n, base, z[0], z[k], rng));
              }
            }
            return out;
          });

      std::vector<std::vector<double>> whites(nb);
      for (const CellSamples& block : blocks) {
        for (std::size_t k = 0; k < nb; ++k) {
          whites[k].insert(whites[k].end(), block.whites[k].begin(), block.whites[k].end());
        }
      }
      const double dn = static_cast<double>(n);
      for (std::size_t k = 0; k < nb; ++k) {
        const double beta_eff = selection_increment(chains[k]) * dn;
        const DiffusionCoeffs ref = diffusion_coeffs(cfg.s, x, beta_eff);
        const SampleMoments m = sample_moments(whites[k]);
        InfinitesimalCell cell;
        cell.n = n;
        cell.x = x;
        cell.beta = cfg.betas[k];
        // n (E[X_1] - x) = E[W_1] - w; n Var(X_1) = Var(W_1) / n.
        cell.drift.estimate = {m.mean.value - static_cast<double>(w), m.mean.std_error,
                               m.mean.n_samples};
        cell.drift.reference = ref.b;
        cell.variance.estimate = {m.variance.value / dn, m.variance.std_error / dn,
                                  m.variance.n_samples};
        cell.variance.reference = ref.a;
        if (k > 0) {
          RunningStats diff;
          for (std::size_t r = 0; r < whites[k].size(); ++r) diff.add(whites[k][r] - whites[0][r]);
          cell.shift = diff.estimate();
          const double beta0 = selection_increment(chains[0]) * dn;
          cell.shift_reference = (beta_eff - beta0) * x * (1.0 - x);
          cell.shift_within =
              std::abs(cell.shift->value - cell.shift_reference) <= 4.0 * cell.shift->std_error;
        }
        report.cells.push_back(cell);
      }
      ++cell_index;
    }
  }

  // Envelope C n^{-1/2} per (x, beta) series, least squares through the origin.
  const std::size_t nx = cfg.xs.size();
  auto at = [&](std::size_t ni, std::size_t xi, std::size_t bi) -> InfinitesimalCell& {
    return report.cells[(ni * nx + xi) * nb + bi];
  };
  auto fit_envelope = [&](std::size_t xi, std::size_t bi, CoefficientCheck InfinitesimalCell::*q) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      CoefficientCheck& c = at(ni, xi, bi).*q;
      c.error = std::abs(c.estimate.value - c.reference);
      const double h = 1.0 / std::sqrt(static_cast<double>(ns[ni]));
      num += c.error * h;
      den += h * h;
    }
    const double constant = num / den;
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      CoefficientCheck& c = at(ni, xi, bi).*q;
      c.envelope_c = constant;
      c.allowance = 4.0 * c.estimate.std_error + constant / std::sqrt(static_cast<double>(ns[ni]));
      c.within = c.error <= c.allowance;
    }
  };
  for (std::size_t xi = 0; xi < nx; ++xi) {
    for (std::size_t bi = 0; bi < nb; ++bi) {
      fit_envelope(xi, bi, &InfinitesimalCell::drift);
      fit_envelope(xi, bi, &InfinitesimalCell::variance);
      bool decreasing = true;
      for (std::size_t ni = 1; ni < ns.size(); ++ni) {
        decreasing = decreasing && at(ni, xi, bi).drift.error < at(ni - 1, xi, bi).drift.error;
      }
      for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        at(ni, xi, bi).drift_error_decreasing = decreasing;
      }
    }
  }
  report.passed = std::all_of(report.cells.begin(), report.cells.end(), [](const auto& c) {
    return c.drift.within && c.variance.within && c.shift_within;
  });
  return report;
}

// ---------------------------------------------------------------------------

CompareReport chain_vs_diffusion(const CompareConfig& cfg) {
  CompareReport report;
  report.config = cfg;
  if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t)) throw DomainError("t must be nonnegative");
  if (cfg.reps < 2) throw DomainError("comparison needs reps >= 2");
  report.generations =
      static_cast<std::int64_t>(std::ceil(cfg.t * static_cast<double>(cfg.n) - 1e-9));

  ChainConfig chain{cfg.n, cfg.s, cfg.beta, cfg.x0, report.generations, cfg.seed, cfg.scale,
                    cfg.model};
  validate(chain);
  // The SDE sees the same effective selection as the chain.
  const double beta_eff =
      cfg.model == Model::indirect ? selection_increment(chain) * static_cast<double>(cfg.n)
                                   : cfg.beta;
  SdeConfig sde{cfg.s, beta_eff, cfg.x0, cfg.dt, cfg.t, cfg.seed, cfg.model};
  validate(sde);
  report.boundary_validated = !(cfg.model == Model::indirect && cfg.s >= 1.0);

  std::vector<double> chain_end(cfg.reps);
  std::vector<double> sde_end(cfg.reps);
  parallel_for(static_cast<std::size_t>(cfg.reps), cfg.jobs, [&](std::size_t r) {
    const Trajectory traj = run_chain(chain, job_stream(0, r));
    chain_end[r] = traj.frequency(traj.counts.size() - 1);
    sde_end[r] = em_terminal(sde, job_stream(1, r));
  });
  const SampleMoments cm = sample_moments(chain_end);
  const SampleMoments sm = sample_moments(sde_end);
  auto compare = [](EstimateWithError a, EstimateWithError b) {
    MomentComparison c{a, b};
    c.difference = std::abs(a.value - b.value);
    c.tolerance = std::max(0.02, 5.0 * std::sqrt(a.std_error * a.std_error +
                                                 b.std_error * b.std_error));
    c.agrees = c.difference <= c.tolerance;
    return c;
  };
  report.mean = compare(cm.mean, sm.mean);
  report.variance = compare(cm.variance, sm.variance);
  report.passed = report.mean.agrees && report.variance.agrees;
  return report;
}

}  // namespace wfis
