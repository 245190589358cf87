#pragma once

#include <cstddef>
#include <functional>

namespace sectorlab {

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 means the
/// hardware concurrency). Indices are claimed dynamically, so callers must
/// write results by index for the outcome to be independent of `threads`.
/// The exception thrown for the lowest failing index is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace sectorlab
