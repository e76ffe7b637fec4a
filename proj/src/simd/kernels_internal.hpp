#pragma once

#include "gpsparx/simd/kernels.hpp"

namespace gpsparx::simd {

// nullptr when the build target or the running CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels_or_null();

}  // namespace gpsparx::simd
