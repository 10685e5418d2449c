#pragma once

#include "fopid/kernels.hpp"

namespace fopid::kernels::detail {

const KernelTable& scalar_table();

#if defined(FOPID_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

#if defined(FOPID_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace fopid::kernels::detail
