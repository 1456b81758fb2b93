#pragma once

// Seeded random streams.
//
// Every stochastic operation draws from an Rng built from an RngStream
// (seed, stream_id). The engine is std::mt19937_64 seeded through
// std::seed_seq with the four 32-bit halves of (seed, stream_id), so equal
// pairs replay identical sequences and distinct stream ids give unrelated
// engine states. Distributions are the libstdc++ ones; seeded outputs are
// reproducible for a fixed standard library.

#include <cstdint>
#include <random>

namespace wfis {

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;
};

/// Stream id for replica `replica` of job `job`. Jobs occupy disjoint
/// 2^32-wide id ranges.
constexpr std::uint64_t job_stream(std::uint64_t job, std::uint64_t replica) {
  return (job << 32) | (replica & 0xffffffffULL);
}

class Rng {
 public:
  explicit Rng(RngStream stream);

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t index(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }
  /// Uniform in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return normal_(engine_); }
  std::int64_t binomial(std::int64_t trials, double p);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace wfis
