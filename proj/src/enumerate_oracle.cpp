#include "wfis/enumerate_oracle.hpp"

#include <string>
#include <vector>

#include "wfis/errors.hpp"

namespace wfis {
namespace {

enum class Color { white, black, red };

// Probability that no red ball is ever drawn within `draws` draws; the
// process stops at the first red ball.
mpq_class no_red_drawn(std::vector<Color>& urn, std::int64_t draws) {
  if (draws == 0) return 1;
  const mpq_class share(1, static_cast<unsigned long>(urn.size()));
  mpq_class total = 0;
  for (std::size_t i = 0; i < urn.size(); ++i) {
    const Color drawn = urn[i];
    if (drawn == Color::red) continue;
    if (drawn == Color::black) {
      total += share * no_red_drawn(urn, draws - 1);
    } else {
      urn.erase(urn.begin() + static_cast<std::ptrdiff_t>(i));
      total += share * no_red_drawn(urn, draws - 1);
      urn.insert(urn.begin() + static_cast<std::ptrdiff_t>(i), Color::white);
    }
  }
  return total;
}

mpq_class red_urn(std::int64_t w, std::int64_t b, int reds, std::int64_t draws) {
  std::vector<Color> urn;
  urn.insert(urn.end(), static_cast<std::size_t>(w), Color::white);
  urn.insert(urn.end(), static_cast<std::size_t>(b), Color::black);
  urn.insert(urn.end(), static_cast<std::size_t>(reds), Color::red);
  return no_red_drawn(urn, draws);
}

// Season walk over ball identities. Balls 0..w-1 are white, w..w+b-1 black.
struct SeasonWalk {
  std::int64_t w;
  std::int64_t b;
  std::vector<std::int64_t> present;  // ids still in the urn
  std::vector<bool> marked;
  // Accumulators: P(ball i marked), P(balls i and j both marked), law of (X, Y).
  std::vector<mpq_class> single;
  std::vector<std::vector<mpq_class>> both;
  std::map<std::pair<std::int64_t, std::int64_t>, mpq_class> joint;

  void leaf(const mpq_class& weight) {
    const auto balls = static_cast<std::size_t>(w + b);
    std::int64_t x = 0;
    std::int64_t y = 0;
    for (std::size_t i = 0; i < balls; ++i) {
      if (!marked[i]) continue;
      (static_cast<std::int64_t>(i) < w ? x : y) += 1;
      single[i] += weight;
      for (std::size_t j = 0; j < balls; ++j) {
        if (j != i && marked[j]) both[i][j] += weight;
      }
    }
    joint[{x, y}] += weight;
  }

  void walk(std::int64_t draws, const mpq_class& weight) {
    if (draws == 0 || present.empty()) {
      leaf(weight);
      return;
    }
    const mpq_class next = weight / static_cast<unsigned long>(present.size());
    for (std::size_t k = 0; k < present.size(); ++k) {
      const std::int64_t id = present[k];
      const auto idx = static_cast<std::size_t>(id);
      const bool was_marked = marked[idx];
      marked[idx] = true;
      if (id < w) {
        present.erase(present.begin() + static_cast<std::ptrdiff_t>(k));
        walk(draws - 1, next);
        present.insert(present.begin() + static_cast<std::ptrdiff_t>(k), id);
      } else {
        walk(draws - 1, next);
      }
      marked[idx] = was_marked;
    }
  }
};

}  // namespace

OracleResult enumerate_oracle(UrnState state, std::int64_t max_scale) {
  require_valid(state);
  if (state.scale() > max_scale) {
    throw InfeasibleError("oracle refuses " + to_string(state) + ": w+b+f exceeds " +
                          std::to_string(max_scale));
  }
  OracleResult out;
  out.state = state;
  out.q = red_urn(state.w, state.b, 1, state.f);
  out.q_tilde = red_urn(state.w, state.b, 2, state.f);

  const auto balls = static_cast<std::size_t>(state.w + state.b);
  SeasonWalk season{state.w, state.b, {}, std::vector<bool>(balls, false),
                    std::vector<mpq_class>(balls, 0),
                    std::vector<std::vector<mpq_class>>(balls, std::vector<mpq_class>(balls, 0)),
                    {}};
  for (std::size_t i = 0; i < balls; ++i) season.present.push_back(static_cast<std::int64_t>(i));
  season.walk(state.f, mpq_class(1));
  out.joint = std::move(season.joint);

  const auto w = static_cast<std::size_t>(state.w);
  if (state.w >= 1) out.p_w = season.single[0];
  if (state.b >= 1) out.p_b = season.single[w];
  if (state.w >= 2) out.p_ww = season.both[0][1];
  if (state.w >= 1 && state.b >= 1) out.p_wb = season.both[0][w];
  if (state.b >= 2) out.p_bb = season.both[w][w + 1];

  mpq_class ex = 0, ey = 0, exx = 0, eyy = 0, exy = 0;
  for (const auto& [counts, prob] : out.joint) {
    const mpq_class x(static_cast<long>(counts.first));
    const mpq_class y(static_cast<long>(counts.second));
    ex += prob * x;
    ey += prob * y;
    exx += prob * x * x;
    eyy += prob * y * y;
    exy += prob * x * y;
  }
  out.mean_x = ex;
  out.mean_y = ey;
  out.var_x = exx - ex * ex;
  out.var_y = eyy - ey * ey;
  out.cov_xy = exy - ex * ey;
  return out;
}

}  // namespace wfis
