#pragma once

// Deterministic block-parallel loops. Work is cut into fixed-size blocks
// independent of the thread count and partial results are combined in block
// order, so output does not depend on scheduling.

#include <cstddef>
#include <functional>
#include <vector>

namespace finsler {

/// Worker count: FINSLER_SHARP_THREADS when set (>= 1), else hardware concurrency.
int thread_count();

/// Calls body(block_index, begin, end) for each block of [0, total).
void parallel_blocks(std::size_t total, std::size_t block,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Sum of per-block partials; each block returns its own (already compensated) partial.
double parallel_sum(std::size_t total, std::size_t block,
                    const std::function<double(std::size_t, std::size_t)>& partial);

}  // namespace finsler
