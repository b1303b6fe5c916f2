#pragma once

#include <cstddef>
#include <functional>

namespace nfisac {

/// Worker count: NFISAC_MAX_WORKERS if set (>= 1), else hardware concurrency.
std::size_t worker_count();

/// Calls body(i) for i in [0, count). Indices are split into contiguous chunks,
/// one per worker; body must only write state owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nfisac
