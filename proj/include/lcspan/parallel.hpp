#pragma once

namespace lcspan {

// Thread count used by the OpenMP kernels. Values < 1 restore the runtime default.
void set_num_threads(int n);
int max_threads();

}  // namespace lcspan
