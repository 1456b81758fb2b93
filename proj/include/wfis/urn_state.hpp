#pragma once

#include <cstdint>
#include <string>

namespace wfis {

/// Composition of the urn before a season: `w` white balls (removed when
/// drawn), `b` black balls (replaced when drawn) and `f` draws.
/// `scale()` = w + b + f is the discretization scale N of every exact
/// computation.
struct UrnState {
  std::int64_t w = 0;
  std::int64_t b = 0;
  std::int64_t f = 0;

  constexpr std::int64_t scale() const { return w + b + f; }
  friend constexpr bool operator==(const UrnState&, const UrnState&) = default;
};

/// Throws DomainError when a count is negative.
void require_valid(const UrnState& state);

std::string to_string(const UrnState& state);

}  // namespace wfis
