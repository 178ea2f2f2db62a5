#pragma once

#include "graphsum/kernels.hpp"

namespace graphsum::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(GRAPHSUM_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace graphsum::kernels::detail
