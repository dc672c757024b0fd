#include "kernels_impl.hpp"

// Scalar reference kernels. The SIMD variants replicate these element
// operations in the same order; any change here must be mirrored there.

namespace leoisl::kernels::detail {
namespace {

void squared_distances_scalar(const double* xs, const double* ys, const double* zs, std::size_t n,
                              double qx, double qy, double qz, double* out) {
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = xs[k] - qx;
        const double dy = ys[k] - qy;
        const double dz = zs[k] - qz;
        out[k] = dx * dx + dy * dy + dz * dz;
    }
}

void two_leg_squared_sums_scalar(const double* xs, const double* ys, const double* zs,
                                 std::size_t n, double ax, double ay, double az, double bx,
                                 double by, double bz, double* out) {
    for (std::size_t k = 0; k < n; ++k) {
        const double dax = xs[k] - ax;
        const double day = ys[k] - ay;
        const double daz = zs[k] - az;
        const double dbx = xs[k] - bx;
        const double dby = ys[k] - by;
        const double dbz = zs[k] - bz;
        const double da2 = dax * dax + day * day + daz * daz;
        const double db2 = dbx * dbx + dby * dby + dbz * dbz;
        out[k] = da2 + db2;
    }
}

std::size_t index_of_min_scalar(const double* values, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (values[k] < values[best]) best = k;
    }
    return best;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{squared_distances_scalar, two_leg_squared_sums_scalar,
                                   index_of_min_scalar};
    return table;
}

}  // namespace leoisl::kernels::detail
