#pragma once

#include <functional>

namespace muskat {

// Worker count used by parallel_for; 0 restores hardware concurrency.
void set_num_threads(int n);
int num_threads();

// Runs fn(i) for i in [0, n) on a blocked static partition.  Each index is
// processed exactly once by one worker, so reductions written per-index are
// deterministic regardless of the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace muskat
