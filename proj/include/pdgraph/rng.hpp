#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pdgraph {

// 64-bit finalizer from splitmix64; also used to derive stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derive an independent sub-stream seed, e.g. one per side of a two-sample
// comparison. tag values must differ between uses sharing the same base seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag ^ 0x5851F42D4C957F2DULL));
}

// xoshiro256++ with counter-based seeding. Replicate r of a given seed draws
// its four state words from disjoint positions of the splitmix64 sequence, so
// (seed, replicate) fully determines the stream independent of execution
// order. Sampling helpers are hand-rolled rather than taken from <random>
// because the standard distributions are implementation-defined and would
// break the bitwise reproducibility contract across toolchains.
class Rng {
public:
    Rng() : Rng(0, 0) {}

    Rng(std::uint64_t seed, std::uint64_t replicate) {
        constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
        const std::uint64_t base = 4 * replicate;
        bool all_zero = true;
        for (int i = 0; i < 4; ++i) {
            s_[i] = mix64(seed + golden * (base + i + 1));
            all_zero = all_zero && s_[i] == 0;
        }
        if (all_zero) s_[0] = golden;
    }

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Exponential waiting time; rate must be positive.
    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Unbiased integer in [0, n). Lemire's multiply-shift rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Binomial(n, p) by geometric skips over the smaller of p, 1-p.
    // Expected cost O(n * min(p, 1-p)), fine for the population sizes here.
    std::uint64_t binomial(std::uint64_t n, double p) {
        if (n == 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        const bool flip = p > 0.5;
        const double q = flip ? 1.0 - p : p;
        const double log_fail = std::log1p(-q);
        std::uint64_t successes = 0;
        double pos = 0.0;
        while (true) {
            const double u = 1.0 - uniform01();  // in (0,1]
            pos += std::floor(std::log(u) / log_fail) + 1.0;
            if (pos > static_cast<double>(n)) break;
            ++successes;
        }
        return flip ? n - successes : successes;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace pdgraph
