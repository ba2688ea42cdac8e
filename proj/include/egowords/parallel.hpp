#pragma once

namespace egowords {

// Every data-parallel kernel has a serial reference path and an OpenMP
// path. Both must produce bit-identical results.
enum class Execution { Serial, Parallel };

// Sets the OpenMP thread count used by Execution::Parallel kernels.
// jobs <= 0 keeps the runtime default.
void set_jobs(int jobs);
int max_jobs();

} // namespace egowords
