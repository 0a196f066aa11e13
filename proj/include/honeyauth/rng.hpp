#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace honeyauth {

// Portable seeded randomness. std::mt19937_64 output is fully specified by the
// standard, but the standard distributions are not, so bounded integers and
// unit doubles are derived here to keep outputs identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derive an independent stream seed from a master seed and a label.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label) {
    return splitmix64(splitmix64(master) ^ label);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
    return derive_seed(master, fnv1a64(label));
}

}  // namespace honeyauth
