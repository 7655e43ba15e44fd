#pragma once

#include <cstdint>
#include <initializer_list>

namespace vqkz {

// Deterministic pseudo-random stream.  A fixed in-house generator (splitmix64)
// is used instead of std::uniform_*_distribution so that seeded outputs stay
// byte-identical across standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), unbiased via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Uniform integer in [lo, hi], inclusive.
    long long next_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

// Stable seed derivation for per-instance streams: hash the master seed with
// the given words (rank, instance index, ...).
inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    Rng h(seed);
    std::uint64_t acc = h.next_u64();
    for (std::uint64_t w : words) {
        Rng g(acc ^ (w + 0x9e3779b97f4a7c15ULL));
        acc = g.next_u64();
    }
    return acc;
}

}  // namespace vqkz
