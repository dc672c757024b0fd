#pragma once

#include <cstddef>

// Data-parallel distance kernels over structure-of-arrays satellite
// positions. Every kernel ships as a scalar reference implementation plus
// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected at runtime.
//
// Contract: all variants of a kernel produce bit-identical results. The SIMD
// code uses the same per-element operation order as the scalar reference and
// no FMA contraction, so topology construction and acceptance oracles do not
// depend on which backend happens to run.

namespace leoisl::kernels {

enum class Backend { Scalar, Avx2, Neon };

const char* backend_name(Backend b);

// Backend chosen at first use: best supported SIMD variant, unless the
// LEOISL_KERNEL_BACKEND environment variable ("scalar", "avx2", "neon")
// overrides it.
Backend active_backend();

bool backend_available(Backend b);

// Pins the dispatch to one backend; throws std::invalid_argument if that
// backend is not available on this machine/build.
void force_backend(Backend b);

// out[k] = (xs[k]-qx)^2 + (ys[k]-qy)^2 + (zs[k]-qz)^2
void squared_distances(const double* xs, const double* ys, const double* zs, std::size_t n,
                       double qx, double qy, double qz, double* out);

// out[k] = |p_k - a|^2 + |p_k - b|^2  (the two-leg relay cost through p_k)
void two_leg_squared_sums(const double* xs, const double* ys, const double* zs, std::size_t n,
                          double ax, double ay, double az, double bx, double by, double bz,
                          double* out);

// Index of the smallest element; the lowest index wins ties. n must be > 0.
std::size_t index_of_min(const double* values, std::size_t n);

}  // namespace leoisl::kernels
