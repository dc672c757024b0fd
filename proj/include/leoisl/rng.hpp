#pragma once

#include <cstdint>
#include <random>

namespace leoisl {

// Deterministic RNG used everywhere randomness is needed. mt19937_64 has a
// standard-specified output sequence, and the uniform draw below avoids
// std::uniform_real_distribution (whose algorithm is implementation-defined),
// so identical seeds give identical streams on every platform.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    // Uniform double in [0, 1): top 53 bits of one engine output.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t next_u64() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

// Per-trial seed: the index-th output of a splitmix64 sequence whose state
// starts at the master seed. Mixing by sequence position (rather than
// xor-ing master and index together) keeps the seed sets of nearby master
// seeds disjoint instead of merely permuted.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace leoisl
