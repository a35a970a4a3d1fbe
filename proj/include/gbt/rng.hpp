// Deterministic randomness for sampling and test-input generation.
//
// The generator is std::mt19937_64, whose output sequence is pinned by the
// C++ standard, seeded directly with a user-supplied 64-bit value. Uniform
// doubles take the top 53 bits of one output word, so a seed fully
// determines every draw. Named sub-streams (per-trial seeds) are derived
// with SplitMix64.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gbt/linalg.hpp"

namespace gbt {

// SplitMix64 step (Steele, Lea, Flood 2014): used only to spread a base
// seed into decorrelated per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for sub-stream `stream` of a base seed. Stream 0 is reserved for
// input generation, streams 1.. for per-trial measurement sampling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box–Muller.
    double gauss() {
        double u1 = uniform01(), u2 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    cnum complex_gauss() { return cnum{gauss(), gauss()}; }

    // Random normalized amplitude vector of the given length.
    std::vector<cnum> amplitudes(std::size_t n) {
        std::vector<cnum> a(n);
        double norm2 = 0.0;
        while (norm2 < 1e-12) {
            norm2 = 0.0;
            for (auto& z : a) {
                z = complex_gauss();
                norm2 += std::norm(z);
            }
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& z : a) z *= inv;
        return a;
    }

  private:
    std::mt19937_64 gen_;
};

// Haar-ish random state on the given factor structure.
inline StateVec random_state(SeededRng& rng, std::vector<std::size_t> dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    return StateVec(std::move(dims), rng.amplitudes(total));
}

}  // namespace gbt
