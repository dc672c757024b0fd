#include "leoisl/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace leoisl::kernels {

namespace {

using detail::KernelTable;

const KernelTable* table_for(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return &detail::scalar_table();
        case Backend::Avx2:
#if defined(LEOISL_HAVE_AVX2)
            return &detail::avx2_table();
#else
            return nullptr;
#endif
        case Backend::Neon:
#if defined(LEOISL_HAVE_NEON)
            return &detail::neon_table();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

Backend pick_default() {
    if (const char* env = std::getenv("LEOISL_KERNEL_BACKEND")) {
        const std::string want(env);
        if (want == "scalar") return Backend::Scalar;
        if (want == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
        if (want == "neon" && backend_available(Backend::Neon)) return Backend::Neon;
        // Unknown or unavailable names fall through to auto-detection.
    }
#if defined(LEOISL_HAVE_AVX2)
    if (detail::cpu_has_avx2()) return Backend::Avx2;
#endif
#if defined(LEOISL_HAVE_NEON)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

struct Dispatch {
    Backend backend;
    const KernelTable* table;
    Dispatch() : backend(pick_default()), table(table_for(backend)) {}
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

}  // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return "scalar";
        case Backend::Avx2:
            return "avx2";
        case Backend::Neon:
            return "neon";
    }
    return "unknown";
}

bool backend_available(Backend b) {
    if (b == Backend::Scalar) return true;
#if defined(LEOISL_HAVE_AVX2)
    if (b == Backend::Avx2) return detail::cpu_has_avx2();
#endif
#if defined(LEOISL_HAVE_NEON)
    if (b == Backend::Neon) return true;
#endif
    return false;
}

Backend active_backend() { return dispatch().backend; }

void force_backend(Backend b) {
    if (!backend_available(b)) {
        throw std::invalid_argument(std::string("kernel backend not available: ") +
                                    backend_name(b));
    }
    dispatch().backend = b;
    dispatch().table = table_for(b);
}

void squared_distances(const double* xs, const double* ys, const double* zs, std::size_t n,
                       double qx, double qy, double qz, double* out) {
    dispatch().table->squared_distances(xs, ys, zs, n, qx, qy, qz, out);
}

void two_leg_squared_sums(const double* xs, const double* ys, const double* zs, std::size_t n,
                          double ax, double ay, double az, double bx, double by, double bz,
                          double* out) {
    dispatch().table->two_leg_squared_sums(xs, ys, zs, n, ax, ay, az, bx, by, bz, out);
}

std::size_t index_of_min(const double* values, std::size_t n) {
    return dispatch().table->index_of_min(values, n);
}

}  // namespace leoisl::kernels
