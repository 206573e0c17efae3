#pragma once

#include <functional>

namespace vopt {

/// Global worker-count knob (0 = hardware concurrency). Set once by the CLI.
void set_max_threads(int k);
int max_threads();

/// Runs fn(i) for i in [0,n). Tasks must be independent; each writes its own
/// slot, so the result is identical for any thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace vopt
