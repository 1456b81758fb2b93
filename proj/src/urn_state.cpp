#include "wfis/urn_state.hpp"

#include "wfis/errors.hpp"

namespace wfis {

void require_valid(const UrnState& state) {
  if (state.w < 0 || state.b < 0 || state.f < 0) {
    throw DomainError("urn counts must be nonnegative, got " + to_string(state));
  }
}

std::string to_string(const UrnState& state) {
  return "(w=" + std::to_string(state.w) + ", b=" + std::to_string(state.b) +
         ", f=" + std::to_string(state.f) + ")";
}

}  // namespace wfis
