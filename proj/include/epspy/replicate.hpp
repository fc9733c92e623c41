#pragma once

// Monte Carlo replication kernels. Replicate i always draws from
// RngStream::derive(seed, i), so the OpenMP kernel and the serial reference
// produce bit-identical output for any thread count or schedule.

#include <cstdint>
#include <exception>
#include <type_traits>
#include <vector>

#include "epspy/rng.hpp"

namespace epspy {

/// Serial reference: out[i] = draw(RngStream::derive(seed, i)).
template <class Draw>
auto replicate_serial(std::size_t n, std::uint64_t seed, Draw&& draw) {
  using Result = std::invoke_result_t<Draw&, RngStream&>;
  std::vector<Result> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng = RngStream::derive(seed, i);
    out[i] = draw(rng);
  }
  return out;
}

/// OpenMP kernel with the same contract as replicate_serial. `draw` must be
/// safe to call concurrently (no shared mutable state). An exception
/// thrown by a replicate is rethrown after the loop.
template <class Draw>
auto replicate_parallel(std::size_t n, std::uint64_t seed, Draw&& draw) {
  using Result = std::invoke_result_t<Draw&, RngStream&>;
  std::vector<Result> out(n);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] = draw(rng);
    } catch (...) {
#pragma omp critical(epspy_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace epspy
