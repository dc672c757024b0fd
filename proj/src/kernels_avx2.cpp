#include "kernels_impl.hpp"

#if defined(LEOISL_HAVE_AVX2)

#include <immintrin.h>

// AVX2 variants, 4 doubles per vector. Arithmetic is sub/mul/add in the same
// association order as the scalar reference (no FMA), so every lane rounds
// exactly like the scalar loop and results are bit-identical.

namespace leoisl::kernels::detail {
namespace {

inline __m256d squared_distance_lanes(__m256d x, __m256d y, __m256d z, __m256d qx, __m256d qy,
                                      __m256d qz) {
    const __m256d dx = _mm256_sub_pd(x, qx);
    const __m256d dy = _mm256_sub_pd(y, qy);
    const __m256d dz = _mm256_sub_pd(z, qz);
    __m256d acc = _mm256_mul_pd(dx, dx);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(dy, dy));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(dz, dz));
    return acc;
}

void squared_distances_avx2(const double* xs, const double* ys, const double* zs, std::size_t n,
                            double qx, double qy, double qz, double* out) {
    const __m256d vqx = _mm256_set1_pd(qx);
    const __m256d vqy = _mm256_set1_pd(qy);
    const __m256d vqz = _mm256_set1_pd(qz);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d d2 = squared_distance_lanes(_mm256_loadu_pd(xs + k), _mm256_loadu_pd(ys + k),
                                                  _mm256_loadu_pd(zs + k), vqx, vqy, vqz);
        _mm256_storeu_pd(out + k, d2);
    }
    for (; k < n; ++k) {
        const double dx = xs[k] - qx;
        const double dy = ys[k] - qy;
        const double dz = zs[k] - qz;
        out[k] = dx * dx + dy * dy + dz * dz;
    }
}

void two_leg_squared_sums_avx2(const double* xs, const double* ys, const double* zs, std::size_t n,
                               double ax, double ay, double az, double bx, double by, double bz,
                               double* out) {
    const __m256d vax = _mm256_set1_pd(ax);
    const __m256d vay = _mm256_set1_pd(ay);
    const __m256d vaz = _mm256_set1_pd(az);
    const __m256d vbx = _mm256_set1_pd(bx);
    const __m256d vby = _mm256_set1_pd(by);
    const __m256d vbz = _mm256_set1_pd(bz);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d x = _mm256_loadu_pd(xs + k);
        const __m256d y = _mm256_loadu_pd(ys + k);
        const __m256d z = _mm256_loadu_pd(zs + k);
        const __m256d da2 = squared_distance_lanes(x, y, z, vax, vay, vaz);
        const __m256d db2 = squared_distance_lanes(x, y, z, vbx, vby, vbz);
        _mm256_storeu_pd(out + k, _mm256_add_pd(da2, db2));
    }
    for (; k < n; ++k) {
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

std::size_t index_of_min_avx2(const double* values, std::size_t n) {
    // Exact global minimum first (min is order-insensitive), then the first
    // index holding it, which matches the scalar lowest-index rule.
    double m = values[0];
    std::size_t k = 0;
    if (n >= 4) {
        __m256d vmin = _mm256_loadu_pd(values);
        for (k = 4; k + 4 <= n; k += 4) {
            vmin = _mm256_min_pd(vmin, _mm256_loadu_pd(values + k));
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, vmin);
        m = lanes[0];
        for (int i = 1; i < 4; ++i) {
            if (lanes[i] < m) m = lanes[i];
        }
    }
    for (; k < n; ++k) {
        if (values[k] < m) m = values[k];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i] == m) return i;
    }
    return 0;  // unreachable for finite inputs
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{squared_distances_avx2, two_leg_squared_sums_avx2,
                                   index_of_min_avx2};
    return table;
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

}  // namespace leoisl::kernels::detail

#endif  // LEOISL_HAVE_AVX2
