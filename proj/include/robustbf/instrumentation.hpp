#pragma once

#include <cstdint>

namespace robustbf::instrumentation {

// Per-thread count of filter probes (one per addressed bit or counter).
// For the 2D filter every probe is one digest computation.
inline thread_local std::uint64_t probe_count = 0;

}  // namespace robustbf::instrumentation
