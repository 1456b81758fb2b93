#pragma once

// Exact single-season probabilities.
//
// q(w,b,f) is the probability that one extra red ball is never drawn in f
// draws from an urn holding w whites (removed once drawn), b blacks
// (replaced) and the red ball; q~ is the same with two red balls. Every
// reproduction probability of the basic season follows from these two
// functions:
//
//   p_w  = 1 - q(w-1, b, f)          p_b  = 1 - q(w, b-1, f)
//   p_ww = q~(w-2, b, f) - 1 + 2 p_w
//   p_wb = q~(w-1, b-1, f) - 1 + p_w + p_b
//   p_bb = q~(w, b-2, f) - 1 + 2 p_b
//
// Both tables satisfy the first-draw recurrence
//
//   q(w,b,f) = w/(w+b+r) q(w-1,b,f-1) + b/(w+b+r) q(w,b,f-1),  q(.,.,0) = 1,
//
// with r red balls and q(-1,b,f) = 0.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "wfis/urn_state.hpp"

namespace wfis {

enum class QKind { q, q_tilde };

constexpr int red_balls(QKind kind) { return kind == QKind::q ? 1 : 2; }

double exact_q(UrnState state);
double exact_q_tilde(UrnState state);
double exact_table_value(QKind kind, UrnState state);

/// Reproduction probabilities of a designated white (p_w) and black (p_b)
/// ball. A component is empty when the urn has no ball of that color.
struct ReproProbs {
  std::optional<double> p_w;
  std::optional<double> p_b;
};

/// Throws DomainError when w = b = 0 (nothing is defined).
ReproProbs repro_probs(UrnState state);
/// Throw DomainError when the urn has no white (resp. black) ball.
double p_white(UrnState state);
double p_black(UrnState state);

/// Probabilities that two given distinct balls are both drawn. A component is
/// empty when the urn lacks the two balls it refers to.
struct PairProbs {
  std::optional<double> p_ww;
  std::optional<double> p_wb;
  std::optional<double> p_bb;
};

/// Throws DomainError when the urn holds fewer than two balls.
PairProbs pair_probs(UrnState state);

/// Exact first and second moments of the reproduction counts (X~, Y~).
struct SeasonMoments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double cov_xy = 0.0;
};

SeasonMoments season_moments_exact(UrnState state);

/// Read-only view of one f-layer of a q or q~ table: values q(w, b, f) for
/// w + b <= max_sum(). Index w = -1 reads the zero guard row.
class QLayer {
 public:
  QLayer(const double* data, std::int64_t stride, std::int64_t f, std::int64_t max_sum)
      : data_(data), stride_(stride), f_(f), max_sum_(max_sum) {}

  std::int64_t f() const { return f_; }
  std::int64_t max_sum() const { return max_sum_; }
  double operator()(std::int64_t w, std::int64_t b) const {
    return data_[(w + 1) * stride_ + b];
  }

 private:
  const double* data_;
  std::int64_t stride_;
  std::int64_t f_;
  std::int64_t max_sum_;
};

/// Rolling dynamic program over f keeping two (w, b) slabs, covering every
/// state with w + b + f <= max_n. Memory is O(max_n^2).
class QLayerRoller {
 public:
  QLayerRoller(QKind kind, std::int64_t max_n, unsigned jobs = 1);

  QKind kind() const { return kind_; }
  std::int64_t max_n() const { return max_n_; }
  /// Layer currently held; starts at f = 0.
  QLayer current() const;
  /// Computes the next layer. Returns false (and does nothing) once
  /// f == max_n.
  bool advance();

 private:
  QKind kind_;
  std::int64_t max_n_;
  unsigned jobs_;
  std::int64_t stride_;
  std::int64_t f_ = 0;
  std::vector<double> current_;
  std::vector<double> next_;
};

/// Runs the rolling dynamic program and hands each layer f = 0..max_n to
/// `visit` in order.
void sweep_q_layers(QKind kind, std::int64_t max_n, unsigned jobs,
                    const std::function<void(const QLayer&)>& visit);

/// Full table keeping every f-layer (triangular packing). Intended for
/// finite-difference work at moderate N; the rolling sweep covers large N.
class QTable {
 public:
  static constexpr std::int64_t kMaxFullN = 512;

  /// Throws InfeasibleError when max_n exceeds kMaxFullN.
  static QTable build(QKind kind, std::int64_t max_n, unsigned jobs = 1);

  QKind kind() const { return kind_; }
  std::int64_t max_n() const { return max_n_; }
  bool covers(UrnState state) const;

  /// Throws OutOfRangeError when the table does not cover `state`.
  double value(UrnState state) const;

  /// One-step differences (p(w+1,b,f) - p(w,b,f), p(w,b+1,f) - p(w,b,f)).
  /// Throws OutOfRangeError unless w + b + f + 1 <= max_n.
  std::pair<double, double> finite_diffs(UrnState state) const;

 private:
  QTable(QKind kind, std::int64_t max_n);
  std::size_t index(UrnState state) const;

  QKind kind_;
  std::int64_t max_n_;
  std::vector<std::size_t> layer_offset_;
  std::vector<double> values_;
};

}  // namespace wfis
