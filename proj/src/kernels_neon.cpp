#include "kernels_impl.hpp"

#if defined(LEOISL_HAVE_NEON)

#include <arm_neon.h>

// NEON variants, 2 doubles per vector. Same sub/mul/add association as the
// scalar reference (vmlaq would fuse, so it is deliberately not used); results
// are bit-identical to the scalar kernels.

namespace leoisl::kernels::detail {
namespace {

inline float64x2_t squared_distance_lanes(float64x2_t x, float64x2_t y, float64x2_t z,
                                          float64x2_t qx, float64x2_t qy, float64x2_t qz) {
    const float64x2_t dx = vsubq_f64(x, qx);
    const float64x2_t dy = vsubq_f64(y, qy);
    const float64x2_t dz = vsubq_f64(z, qz);
    float64x2_t acc = vmulq_f64(dx, dx);
    acc = vaddq_f64(acc, vmulq_f64(dy, dy));
    acc = vaddq_f64(acc, vmulq_f64(dz, dz));
    return acc;
}

void squared_distances_neon(const double* xs, const double* ys, const double* zs, std::size_t n,
                            double qx, double qy, double qz, double* out) {
    const float64x2_t vqx = vdupq_n_f64(qx);
    const float64x2_t vqy = vdupq_n_f64(qy);
    const float64x2_t vqz = vdupq_n_f64(qz);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t d2 = squared_distance_lanes(vld1q_f64(xs + k), vld1q_f64(ys + k),
                                                      vld1q_f64(zs + k), vqx, vqy, vqz);
        vst1q_f64(out + k, d2);
    }
    for (; k < n; ++k) {
        const double dx = xs[k] - qx;
        const double dy = ys[k] - qy;
        const double dz = zs[k] - qz;
        out[k] = dx * dx + dy * dy + dz * dz;
    }
}

void two_leg_squared_sums_neon(const double* xs, const double* ys, const double* zs, std::size_t n,
                               double ax, double ay, double az, double bx, double by, double bz,
                               double* out) {
    const float64x2_t vax = vdupq_n_f64(ax);
    const float64x2_t vay = vdupq_n_f64(ay);
    const float64x2_t vaz = vdupq_n_f64(az);
    const float64x2_t vbx = vdupq_n_f64(bx);
    const float64x2_t vby = vdupq_n_f64(by);
    const float64x2_t vbz = vdupq_n_f64(bz);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t x = vld1q_f64(xs + k);
        const float64x2_t y = vld1q_f64(ys + k);
        const float64x2_t z = vld1q_f64(zs + k);
        const float64x2_t da2 = squared_distance_lanes(x, y, z, vax, vay, vaz);
        const float64x2_t db2 = squared_distance_lanes(x, y, z, vbx, vby, vbz);
        vst1q_f64(out + k, vaddq_f64(da2, db2));
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

std::size_t index_of_min_neon(const double* values, std::size_t n) {
    double m = values[0];
    std::size_t k = 0;
    if (n >= 2) {
        float64x2_t vmin = vld1q_f64(values);
        for (k = 2; k + 2 <= n; k += 2) {
            vmin = vminq_f64(vmin, vld1q_f64(values + k));
        }
        m = vminvq_f64(vmin);
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

const KernelTable& neon_table() {
    static const KernelTable table{squared_distances_neon, two_leg_squared_sums_neon,
                                   index_of_min_neon};
    return table;
}

}  // namespace leoisl::kernels::detail

#endif  // LEOISL_HAVE_NEON
