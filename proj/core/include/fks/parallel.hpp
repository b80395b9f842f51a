// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace fks {

// Process-wide cap on worker threads; 0 restores the hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
// never influence results as long as body writes only to its own indices.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fks
