#pragma once

#include <cstddef>

// Internal kernel tables. Each backend fills one KernelTable; dispatch lives
// in kernels.cpp.

namespace leoisl::kernels::detail {

struct KernelTable {
    void (*squared_distances)(const double*, const double*, const double*, std::size_t, double,
                              double, double, double*);
    void (*two_leg_squared_sums)(const double*, const double*, const double*, std::size_t, double,
                                 double, double, double, double, double, double*);
    std::size_t (*index_of_min)(const double*, std::size_t);
};

const KernelTable& scalar_table();

#if defined(LEOISL_HAVE_AVX2)
const KernelTable& avx2_table();
bool cpu_has_avx2();
#endif

#if defined(LEOISL_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace leoisl::kernels::detail
