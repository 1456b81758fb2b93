#include "wfis/rng.hpp"

#include <array>

namespace wfis {
namespace {

std::mt19937_64 seeded_engine(RngStream stream) {
  const std::array<std::uint32_t, 4> words = {
      static_cast<std::uint32_t>(stream.seed), static_cast<std::uint32_t>(stream.seed >> 32),
      static_cast<std::uint32_t>(stream.stream_id),
      static_cast<std::uint32_t>(stream.stream_id >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(RngStream stream) : engine_(seeded_engine(stream)) {}

std::int64_t Rng::binomial(std::int64_t trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<std::int64_t>(trials, p)(engine_);
}

}  // namespace wfis
