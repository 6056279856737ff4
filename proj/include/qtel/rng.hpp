#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "qtel/densemath.hpp"

namespace qtel {

// Counter-based generator: every (seed, index) pair yields an independent
// stream, so parallel and serial sample loops produce identical values.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double next_unit() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }
};

inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x5851F42D4C957F2DULL * (index + 1)));
    mixer.next();
    return mixer;
}

inline std::array<double, 2> gaussian_pair(SplitMix64& rng) {
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

// Haar-uniform pure state of dimension 4: normalized standard complex Gaussian.
inline std::array<complex, 4> haar_state4(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng = sample_stream(seed, index);
    std::array<complex, 4> psi;
    double norm2 = 0.0;
    for (auto& amp : psi) {
        const auto g = gaussian_pair(rng);
        amp = complex(g[0], g[1]);
        norm2 += std::norm(amp);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& amp : psi) amp *= inv;
    return psi;
}

inline std::vector<complex> haar_vector(std::size_t dim, SplitMix64& rng) {
    std::vector<complex> v(dim);
    double norm2 = 0.0;
    for (auto& amp : v) {
        const auto g = gaussian_pair(rng);
        amp = complex(g[0], g[1]);
        norm2 += std::norm(amp);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& amp : v) amp *= inv;
    return v;
}

}  // namespace qtel
