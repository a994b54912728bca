#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace regc {

/// splitmix64 step. Used to derive independent substream seeds from a run
/// seed plus salts, so results never depend on call or scheduling order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Mixes a seed with up to three salts into a new seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x165667b19e3779f9ULL;
    h ^= splitmix64(s);
    s ^= b + 0x27d4eb2f165667c5ULL;
    h ^= splitmix64(s);
    s ^= c + 0x85ebca77c2b2ae63ULL;
    h ^= splitmix64(s);
    return h;
}

/// Small deterministic PRNG (xoshiro-free: iterated splitmix64). All library
/// randomness goes through this type rather than std:: distributions, which
/// keeps streams identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection sampling on the top bits; bias-free.
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Standard normal via Box-Muller (used by synthetic data helpers).
    double next_gaussian() {
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = next_unit();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace regc
