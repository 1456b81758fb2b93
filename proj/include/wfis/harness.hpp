#pragma once

// Verification experiments linking the discrete model to its limits.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wfis/limit_analytic.hpp"
#include "wfis/stats.hpp"
#include "wfis/urn_state.hpp"
#include "wfis/wf_chain.hpp"

namespace wfis {

// ---------------------------------------------------------------------------
// Regions

enum class RegionKind { omega_y0, omega_s };

/// Omega(y0) = {y >= y0}; Omega(s) = {z <= s (x + y), x - z >= (1 - s)/(2 + 2 s)},
/// both inside the simplex.
struct Region {
  RegionKind kind = RegionKind::omega_y0;
  double param = 0.2;

  /// Membership with a 1e-12 tolerance on every inequality.
  bool contains(const LimitPoint& p) const;
  std::string label() const;
};

/// Throws DomainError unless y0 > 0.
Region omega_y0(double y0);
/// Throws DomainError unless 0 < s < 1.
Region omega_s(double s);

// ---------------------------------------------------------------------------
// Convergence-rate sweeps

enum class RateTarget { q_vs_u, dxq_vs_ux, dyq_vs_uy, qtilde_vs_u2, fitness_gap };

inline constexpr std::array<RateTarget, 5> kAllRateTargets = {
    RateTarget::q_vs_u, RateTarget::dxq_vs_ux, RateTarget::dyq_vs_uy, RateTarget::qtilde_vs_u2,
    RateTarget::fitness_gap};

std::string_view target_name(RateTarget target);
std::optional<RateTarget> parse_target(std::string_view name);

struct RateRow {
  std::int64_t n = 0;
  double sup_error = 0.0;
  UrnState argmax;              // lattice point attaining sup_error
  std::uint64_t points = 0;     // lattice points evaluated
  double coverage = 1.0;        // evaluated fraction of the region's points
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log(sup_error) on log(N). Rows with a zero error are
/// skipped; fewer than two usable rows give NaN slope.
LineFit fit_log_log(std::span<const RateRow> rows);

struct RateTable {
  RateTarget target = RateTarget::q_vs_u;
  Region region;
  std::vector<RateRow> rows;
  LineFit fit;
  /// sup_error nonincreasing in N, allowing one rise of under 5%.
  bool nonincreasing = true;
};

struct SweepOptions {
  unsigned jobs = 1;
  std::int64_t max_n = 4000;
  /// Up to this N every lattice point is visited; above it, only points with
  /// w, b, f all multiples of ceil(N / full_limit).
  std::int64_t full_limit = 400;
};

/// One table per target, all from the same pass over the q and q~ tables.
/// Lattice points (w, b, f) with w + b + f <= N, (w, b, f)/N in the region
/// and b >= 1 are evaluated; fitness_gap also needs w >= 1.
/// Throws DomainError unless Ns is strictly increasing and positive,
/// InfeasibleError when some N exceeds options.max_n, DegenerateError when a
/// target finds no lattice point for some N.
std::vector<RateTable> rate_sweep(const Region& region, std::span<const std::int64_t> ns,
                                  std::span<const RateTarget> targets,
                                  const SweepOptions& options = {});

RateTable rate_sweep_q(const Region& region, std::span<const std::int64_t> ns, RateTarget target,
                       const SweepOptions& options = {});

// ---------------------------------------------------------------------------
// Infinitesimal mean and variance of one chain generation

struct InfinitesimalConfig {
  std::vector<std::int64_t> ns;
  std::vector<double> xs;  // rounded to the grid of each n
  double s = 0.5;
  /// Every replica runs one season and one coupled binomial draw per beta.
  std::vector<double> betas{0.0};
  std::uint64_t reps = 100000;
  std::uint64_t seed = 0;
  SelectionScale scale = SelectionScale::per_males;
  unsigned jobs = 1;
};

struct CoefficientCheck {
  EstimateWithError estimate;
  double reference = 0.0;
  double error = 0.0;     // |estimate - reference|
  double envelope_c = 0.0;  // fitted across n for fixed (x, beta)
  double allowance = 0.0;   // 4 SE + C n^{-1/2}
  bool within = false;
};

struct InfinitesimalCell {
  std::int64_t n = 0;
  double x = 0.0;
  double beta = 0.0;
  CoefficientCheck drift;     // n (E[X_1] - x) against b(x)
  CoefficientCheck variance;  // n Var(X_1) against a(x)
  /// Paired drift difference to the first beta, against
  /// (beta - beta_0) x (1 - x); empty for the first beta.
  std::optional<EstimateWithError> shift;
  double shift_reference = 0.0;
  bool shift_within = true;
  /// |drift error| strictly decreasing in n for this (x, beta); reported only.
  bool drift_error_decreasing = true;
};

struct InfinitesimalReport {
  std::vector<InfinitesimalCell> cells;  // ordered by n, then x, then beta
  bool passed = false;
};

/// Throws DomainError on empty lists, reps < 2, or x = 1 with s >= 1.
InfinitesimalReport infinitesimal_check(const InfinitesimalConfig& cfg);

// ---------------------------------------------------------------------------
// Chain against diffusion

struct CompareConfig {
  std::int64_t n = 500;
  double s = 0.5;
  double beta = 0.0;
  double x0 = 0.5;
  double t = 0.5;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 0;
  double dt = 1e-3;
  Model model = Model::indirect;
  SelectionScale scale = SelectionScale::per_males;
  unsigned jobs = 1;
};

struct MomentComparison {
  EstimateWithError chain;
  EstimateWithError diffusion;
  double difference = 0.0;
  double tolerance = 0.0;  // max(0.02, 5 sqrt(se_chain^2 + se_diffusion^2))
  bool agrees = false;
};

struct CompareReport {
  CompareConfig config;
  std::int64_t generations = 0;  // ceil(t n)
  MomentComparison mean;
  MomentComparison variance;
  bool boundary_validated = true;
  bool passed = false;
};

CompareReport chain_vs_diffusion(const CompareConfig& cfg);

}  // namespace wfis
