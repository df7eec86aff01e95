#pragma once

#include <cstdint>
#include <initializer_list>

namespace sublat {

// 64-bit finalizer with full avalanche; bijective on uint64_t.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

/// Counter-based generator: output i depends only on (seed, i), so streams
/// are reproducible and splittable regardless of evaluation order.
struct CounterRng {
    std::uint64_t seed = 0;

    std::uint64_t at(std::uint64_t counter) const {
        return mix64(seed + (counter + 1) * 0x9e3779b97f4a7c15ull);
    }
};

/// Derives an independent stream seed from a base seed and a tag sequence.
/// Used to give every (n, method, purpose) row of an experiment its own stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = mix64(base ^ 0x6a09e667f3bcc908ull);
    for (std::uint64_t t : tags) s = mix64(s ^ mix64(t + 0x9e3779b97f4a7c15ull));
    return s;
}

// Tags for derive_seed built from short strings (FNV-1a).
inline std::uint64_t tag(const char* s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 0x100000001b3ull;
    return h;
}

/// Sequential view over a counter stream.  Rejection steps consume counters,
/// so identical seeds give identical draws on every platform.
struct RngStream {
    CounterRng gen;
    std::uint64_t counter = 0;

    explicit RngStream(std::uint64_t seed) : gen{seed} {}

    std::uint64_t next_u64() { return gen.at(counter++); }

    // Unbiased integer in [0, n) by widening multiply with rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t x = next_u64();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        std::uint64_t lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<unsigned __int128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

} // namespace sublat
