#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace isc {

/// Deterministic random source. All bounded draws go through uniform(),
/// which uses mask-and-reject instead of std::uniform_int_distribution,
/// so identical seeds give identical streams on every platform.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform draw from [0, n). n must be positive.
    std::uint64_t uniform(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0};
        const int bits = 64 - std::countl_zero(n - 1);
        if (bits < 64) mask = (std::uint64_t{1} << bits) - 1;
        std::uint64_t r;
        do {
            r = engine_() & mask;
        } while (r >= n);
        return r;
    }

    /// Independent stream for (master seed, stream index) pairs, e.g. one
    /// stream per Monte Carlo trial.
    static Rng derive(std::uint64_t master, std::uint64_t stream) {
        return Rng(mix(mix(master) ^ mix(stream ^ 0x9e3779b97f4a7c15ull)));
    }

   private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace isc
