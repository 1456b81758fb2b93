#pragma once

// Exhaustive-enumeration oracle for tiny urns.
//
// Walks every ordered draw sequence of the season (and of the red-ball urns
// behind q and q~) with exact rational weights. It shares no code with the
// dynamic program in season_exact and is meant to certify it.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "wfis/urn_state.hpp"

namespace wfis {

struct OracleResult {
  UrnState state;
  mpq_class q;        // the single red ball is never drawn
  mpq_class q_tilde;  // neither of two red balls is drawn
  std::optional<mpq_class> p_w;
  std::optional<mpq_class> p_b;
  std::optional<mpq_class> p_ww;
  std::optional<mpq_class> p_wb;
  std::optional<mpq_class> p_bb;
  /// Law of (X~, Y~).
  std::map<std::pair<std::int64_t, std::int64_t>, mpq_class> joint;
  mpq_class mean_x;
  mpq_class mean_y;
  mpq_class var_x;
  mpq_class var_y;
  mpq_class cov_xy;
};

inline constexpr std::int64_t kDefaultOracleBound = 10;

/// Throws InfeasibleError when w + b + f exceeds `max_scale`.
OracleResult enumerate_oracle(UrnState state, std::int64_t max_scale = kDefaultOracleBound);

}  // namespace wfis
