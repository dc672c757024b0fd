#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "leoisl/kernels.hpp"
#include "oracles.hpp"

using namespace leoisl;

namespace {

struct Soa {
    std::vector<double> x, y, z;
};

Soa random_soa(std::size_t n, std::uint64_t seed) {
    oracles::XorShift rng(seed);
    Soa s;
    s.x.resize(n);
    s.y.resize(n);
    s.z.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.x[k] = rng.uniform(-7000.0, 7000.0);
        s.y[k] = rng.uniform(-7000.0, 7000.0);
        s.z[k] = rng.uniform(-7000.0, 7000.0);
    }
    return s;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    return a.empty() ||
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("squared_distances matches elementwise reference") {
    const Soa s = random_soa(33, 42);
    std::vector<double> out(33);
    kernels::squared_distances(s.x.data(), s.y.data(), s.z.data(), 33, 100.0, -50.0, 7.5,
                               out.data());
    for (std::size_t k = 0; k < 33; ++k) {
        const double dx = s.x[k] - 100.0;
        const double dy = s.y[k] + 50.0;
        const double dz = s.z[k] - 7.5;
        CHECK(out[k] == dx * dx + dy * dy + dz * dz);
    }
}

TEST_CASE("two_leg_squared_sums matches elementwise reference") {
    const Soa s = random_soa(29, 43);
    std::vector<double> out(29);
    kernels::two_leg_squared_sums(s.x.data(), s.y.data(), s.z.data(), 29, 1.0, 2.0, 3.0, -4.0,
                                  5.0, -6.0, out.data());
    for (std::size_t k = 0; k < 29; ++k) {
        const double ax = s.x[k] - 1.0, ay = s.y[k] - 2.0, az = s.z[k] - 3.0;
        const double bx = s.x[k] + 4.0, by = s.y[k] - 5.0, bz = s.z[k] + 6.0;
        const double da2 = ax * ax + ay * ay + az * az;
        const double db2 = bx * bx + by * by + bz * bz;
        CHECK(out[k] == da2 + db2);
    }
}

TEST_CASE("index_of_min finds the minimum and breaks ties low") {
    const std::vector<double> v{3.0, 1.0, 2.0, 1.0, 5.0};
    CHECK(kernels::index_of_min(v.data(), v.size()) == 1);

    const std::vector<double> all_same{7.0, 7.0, 7.0, 7.0, 7.0, 7.0, 7.0, 7.0, 7.0};
    CHECK(kernels::index_of_min(all_same.data(), all_same.size()) == 0);

    const std::vector<double> one{4.5};
    CHECK(kernels::index_of_min(one.data(), 1) == 0);

    // Minimum sitting in the scalar tail past any vector width.
    std::vector<double> tail(19, 10.0);
    tail[18] = -1.0;
    CHECK(kernels::index_of_min(tail.data(), tail.size()) == 18);

    // Tie between a vector lane and the tail: lowest index wins.
    std::vector<double> tie(13, 10.0);
    tie[2] = -3.0;
    tie[12] = -3.0;
    CHECK(kernels::index_of_min(tie.data(), tie.size()) == 2);
}

TEST_CASE("all available backends agree bit for bit with scalar") {
    std::vector<kernels::Backend> simd;
    for (auto b : {kernels::Backend::Avx2, kernels::Backend::Neon}) {
        if (kernels::backend_available(b)) simd.push_back(b);
    }
    if (simd.empty()) {
        MESSAGE("no SIMD backend available in this build; scalar-only");
        return;
    }

    // Sizes straddling vector widths, including 0 and pure-tail cases.
    const std::size_t sizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 67};
    for (std::size_t n : sizes) {
        const Soa s = random_soa(n, 1000 + n);
        std::vector<double> scalar_d2(n), scalar_two(n);
        kernels::force_backend(kernels::Backend::Scalar);
        kernels::squared_distances(s.x.data(), s.y.data(), s.z.data(), n, 12.0, -3.0, 0.25,
                                   scalar_d2.data());
        kernels::two_leg_squared_sums(s.x.data(), s.y.data(), s.z.data(), n, 12.0, -3.0, 0.25,
                                      -800.0, 41.0, 6371.0, scalar_two.data());
        std::size_t scalar_min = n ? kernels::index_of_min(scalar_d2.data(), n) : 0;

        for (auto b : simd) {
            kernels::force_backend(b);
            std::vector<double> d2(n), two(n);
            kernels::squared_distances(s.x.data(), s.y.data(), s.z.data(), n, 12.0, -3.0, 0.25,
                                       d2.data());
            kernels::two_leg_squared_sums(s.x.data(), s.y.data(), s.z.data(), n, 12.0, -3.0,
                                          0.25, -800.0, 41.0, 6371.0, two.data());
            CHECK(bitwise_equal(scalar_d2, d2));
            CHECK(bitwise_equal(scalar_two, two));
            if (n) CHECK(kernels::index_of_min(d2.data(), n) == scalar_min);
        }
    }
    kernels::force_backend(kernels::Backend::Scalar);

    // Duplicate-value tie handling must match across backends too.
    std::vector<double> ties(37, 5.0);
    ties[9] = 1.0;
    ties[20] = 1.0;
    for (auto b : simd) {
        kernels::force_backend(b);
        CHECK(kernels::index_of_min(ties.data(), ties.size()) == 9);
    }
    kernels::force_backend(kernels::Backend::Scalar);
}

TEST_CASE("force_backend rejects unavailable backends") {
    CHECK(kernels::backend_available(kernels::Backend::Scalar));
    kernels::force_backend(kernels::Backend::Scalar);
    CHECK(kernels::active_backend() == kernels::Backend::Scalar);

    for (auto b : {kernels::Backend::Avx2, kernels::Backend::Neon}) {
        if (!kernels::backend_available(b)) {
            CHECK_THROWS_AS(kernels::force_backend(b), std::invalid_argument);
        }
    }
}

TEST_CASE("backend names are stable") {
    CHECK(std::string(kernels::backend_name(kernels::Backend::Scalar)) == "scalar");
    CHECK(std::string(kernels::backend_name(kernels::Backend::Avx2)) == "avx2");
    CHECK(std::string(kernels::backend_name(kernels::Backend::Neon)) == "neon");
}
