#include "wfis/season_exact.hpp"

#include <algorithm>
#include <string>

#include "wfis/errors.hpp"
#include "wfis/parallel.hpp"

namespace wfis {

namespace {

// One recurrence step with a single final division, so layers whose
// numerators are equal integers give bit-identical values.
inline double recurrence(std::int64_t w, std::int64_t b, int reds, double remove_white,
                         double keep) {
  const double total = static_cast<double>(w + b + reds);
  return (static_cast<double>(w) * remove_white + static_cast<double>(b) * keep) / total;
}

// Point evaluation: b never changes along the recurrence, so a single
// row over w' in [0, w] rolled f times suffices (O(w f) time, O(w) memory).
double point_value(int reds, UrnState state) {
  require_valid(state);
  if (state.f == 0) return 1.0;
  std::vector<double> row(static_cast<std::size_t>(state.w) + 1, 1.0);
  for (std::int64_t layer = 1; layer <= state.f; ++layer) {
    // Descending w' keeps row[w'-1] at the previous layer when it is read.
    for (std::int64_t w = state.w; w >= 0; --w) {
      const double removed = w == 0 ? 0.0 : row[static_cast<std::size_t>(w - 1)];
      row[static_cast<std::size_t>(w)] =
          recurrence(w, state.b, reds, removed, row[static_cast<std::size_t>(w)]);
    }
  }
  return row[static_cast<std::size_t>(state.w)];
}

}  // namespace

double exact_q(UrnState state) { return point_value(1, state); }

double exact_q_tilde(UrnState state) { return point_value(2, state); }

double exact_table_value(QKind kind, UrnState state) {
  return point_value(red_balls(kind), state);
}

double p_white(UrnState state) {
  require_valid(state);
  if (state.w < 1) throw DomainError("p_w needs at least one white ball, got " + to_string(state));
  return 1.0 - exact_q({state.w - 1, state.b, state.f});
}

double p_black(UrnState state) {
  require_valid(state);
  if (state.b < 1) throw DomainError("p_b needs at least one black ball, got " + to_string(state));
  return 1.0 - exact_q({state.w, state.b - 1, state.f});
}

ReproProbs repro_probs(UrnState state) {
  require_valid(state);
  if (state.w == 0 && state.b == 0) {
    throw DomainError("repro_probs on an urn without balls " + to_string(state));
  }
  ReproProbs out;
  if (state.w >= 1) out.p_w = p_white(state);
  if (state.b >= 1) out.p_b = p_black(state);
  return out;
}

PairProbs pair_probs(UrnState state) {
  require_valid(state);
  if (state.w + state.b < 2) {
    throw DomainError("pair_probs needs two balls, got " + to_string(state));
  }
  const auto [p_w, p_b] = repro_probs(state);
  PairProbs out;
  if (state.w >= 2) {
    out.p_ww = exact_q_tilde({state.w - 2, state.b, state.f}) - 1.0 + 2.0 * *p_w;
  }
  if (state.w >= 1 && state.b >= 1) {
    out.p_wb = exact_q_tilde({state.w - 1, state.b - 1, state.f}) - 1.0 + *p_w + *p_b;
  }
  if (state.b >= 2) {
    out.p_bb = exact_q_tilde({state.w, state.b - 2, state.f}) - 1.0 + 2.0 * *p_b;
  }
  return out;
}

SeasonMoments season_moments_exact(UrnState state) {
  require_valid(state);
  SeasonMoments m;
  if (state.w + state.b == 0) return m;
  const auto probs = repro_probs(state);
  const auto pairs = state.w + state.b >= 2 ? pair_probs(state) : PairProbs{};
  const double w = static_cast<double>(state.w);
  const double b = static_cast<double>(state.b);

  // Var(sum of k exchangeable indicators) = k p (1 - p) + k (k - 1) (p_pair - p^2);
  // the pair term vanishes when k < 2.
  if (probs.p_w) {
    const double p = *probs.p_w;
    m.mean_x = w * p;
    m.var_x = w * p * (1.0 - p);
    if (pairs.p_ww) m.var_x += w * (w - 1.0) * (*pairs.p_ww - p * p);
  }
  if (probs.p_b) {
    const double p = *probs.p_b;
    m.mean_y = b * p;
    m.var_y = b * p * (1.0 - p);
    if (pairs.p_bb) m.var_y += b * (b - 1.0) * (*pairs.p_bb - p * p);
  }
  if (pairs.p_wb) m.cov_xy = w * b * (*pairs.p_wb - *probs.p_w * *probs.p_b);
  return m;
}

// ---------------------------------------------------------------------------

QLayerRoller::QLayerRoller(QKind kind, std::int64_t max_n, unsigned jobs)
    : kind_(kind), max_n_(max_n), jobs_(jobs), stride_(max_n + 1) {
  if (max_n < 0) throw DomainError("table size must be nonnegative");
  const auto cells = static_cast<std::size_t>((max_n + 2) * stride_);
  current_.assign(cells, 0.0);
  next_.assign(cells, 0.0);
  for (std::int64_t w = 0; w <= max_n; ++w) {
    double* row = current_.data() + (w + 1) * stride_;
    std::fill(row, row + (max_n - w + 1), 1.0);
  }
}

QLayer QLayerRoller::current() const {
  return QLayer(current_.data(), stride_, f_, max_n_ - f_);
}

bool QLayerRoller::advance() {
  if (f_ >= max_n_) return false;
  const std::int64_t max_sum = max_n_ - f_ - 1;
  const int reds = red_balls(kind_);
  const double* prev = current_.data();
  double* out = next_.data();
  const std::int64_t stride = stride_;
  auto fill_row = [&](std::int64_t w) {
    const double* removed = prev + w * stride;  // row w - 1
    const double* kept = prev + (w + 1) * stride;
    double* dest = out + (w + 1) * stride;
    for (std::int64_t b = 0; b <= max_sum - w; ++b) {
      dest[b] = recurrence(w, b, reds, removed[b], kept[b]);
    }
  };
  const auto rows = static_cast<std::size_t>(max_sum + 1);
  if (jobs_ <= 1 || rows < 64) {
    for (std::int64_t w = 0; w <= max_sum; ++w) fill_row(w);
  } else {
    // Chunks of rows; every row of the layer is independent.
    constexpr std::size_t kChunk = 16;
    parallel_for((rows + kChunk - 1) / kChunk, jobs_, [&](std::size_t chunk) {
      const auto begin = static_cast<std::int64_t>(chunk * kChunk);
      const auto end = std::min<std::int64_t>(begin + kChunk, max_sum + 1);
      for (std::int64_t w = begin; w < end; ++w) fill_row(w);
    });
  }
  current_.swap(next_);
  ++f_;
  return true;
}

void sweep_q_layers(QKind kind, std::int64_t max_n, unsigned jobs,
                    const std::function<void(const QLayer&)>& visit) {
  QLayerRoller roller(kind, max_n, jobs);
  do {
    visit(roller.current());
  } while (roller.advance());
}

// ---------------------------------------------------------------------------

QTable::QTable(QKind kind, std::int64_t max_n) : kind_(kind), max_n_(max_n) {
  layer_offset_.resize(static_cast<std::size_t>(max_n) + 2);
  std::size_t offset = 0;
  for (std::int64_t f = 0; f <= max_n; ++f) {
    layer_offset_[static_cast<std::size_t>(f)] = offset;
    const auto m = static_cast<std::size_t>(max_n - f);
    offset += (m + 1) * (m + 2) / 2;
  }
  layer_offset_.back() = offset;
  values_.resize(offset);
}

QTable QTable::build(QKind kind, std::int64_t max_n, unsigned jobs) {
  if (max_n < 0) throw DomainError("table size must be nonnegative");
  if (max_n > kMaxFullN) {
    throw InfeasibleError("full table limited to max_n <= " + std::to_string(kMaxFullN) +
                          "; use the rolling layer sweep for larger N");
  }
  QTable table(kind, max_n);
  sweep_q_layers(kind, max_n, jobs, [&](const QLayer& layer) {
    for (std::int64_t w = 0; w <= layer.max_sum(); ++w) {
      for (std::int64_t b = 0; b <= layer.max_sum() - w; ++b) {
        table.values_[table.index({w, b, layer.f()})] = layer(w, b);
      }
    }
  });
  return table;
}

bool QTable::covers(UrnState state) const {
  return state.w >= 0 && state.b >= 0 && state.f >= 0 && state.scale() <= max_n_;
}

std::size_t QTable::index(UrnState state) const {
  const auto m = static_cast<std::size_t>(max_n_ - state.f);
  const auto w = static_cast<std::size_t>(state.w);
  // Row w of a layer with w + b <= m starts after rows 0..w-1 of lengths m+1, m, ...
  const std::size_t row_start = w * (m + 1) - (w == 0 ? 0 : w * (w - 1) / 2);
  return layer_offset_[static_cast<std::size_t>(state.f)] + row_start +
         static_cast<std::size_t>(state.b);
}

double QTable::value(UrnState state) const {
  if (!covers(state)) {
    throw OutOfRangeError("state " + to_string(state) + " outside table of size " +
                          std::to_string(max_n_));
  }
  return values_[index(state)];
}

std::pair<double, double> QTable::finite_diffs(UrnState state) const {
  if (!covers(state) || state.scale() + 1 > max_n_) {
    throw OutOfRangeError("finite differences at " + to_string(state) +
                          " need a table of size >= " + std::to_string(state.scale() + 1));
  }
  const double here = value(state);
  return {value({state.w + 1, state.b, state.f}) - here,
          value({state.w, state.b + 1, state.f}) - here};
}

}  // namespace wfis
