#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "wfis/parallel.hpp"
#include "wfis/rng.hpp"

namespace wfis {

/// Splits `reps` replicas into blocks of `block` and runs
/// fn(rng, first_replica, count) for each, block k drawing from stream
/// (base.seed, base.stream_id + k). Returns the per-block results in block
/// order, so any in-order reduction is independent of `jobs`.
template <class Fn>
auto run_replica_blocks(std::uint64_t reps, RngStream base, unsigned jobs, std::uint64_t block,
                        Fn&& fn) {
  using Result = decltype(fn(std::declval<Rng&>(), std::uint64_t{}, std::uint64_t{}));
  const std::uint64_t blocks = (reps + block - 1) / block;
  std::vector<Result> results(blocks);
  parallel_for(blocks, jobs, [&](std::size_t k) {
    Rng rng(RngStream{base.seed, base.stream_id + k});
    const std::uint64_t first = k * block;
    const std::uint64_t count = std::min(block, reps - first);
    results[k] = fn(rng, first, count);
  });
  return results;
}

}  // namespace wfis
