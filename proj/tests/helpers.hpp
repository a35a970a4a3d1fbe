// Shared test utilities: random inputs with fixed seeds and closeness
// predicates. Every generator takes an explicit seed so test runs are
// reproducible and order-independent.

#pragma once

#include <vector>

#include "gbt/gbt.hpp"

namespace gbt::test {

inline double max_diff(const std::vector<cnum>& a, const std::vector<cnum>& b) {
    REQUIRE(a.size() == b.size());
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    return err;
}

inline double max_diff(const StateVec& a, const StateVec& b) {
    REQUIRE(a.dims == b.dims);
    return max_diff(a.amps, b.amps);
}

inline double max_diff(const OperatorMat& a, const OperatorMat& b) {
    REQUIRE(a.dim == b.dim);
    return max_abs(a - b);
}

// Distance after removing the global phase from both sides.
inline double phase_insensitive_diff(const StateVec& a, const StateVec& b) {
    return max_diff(global_phase_canonical(a), global_phase_canonical(b));
}

inline OperatorMat random_hermitian(SeededRng& rng, std::size_t n, double scale = 1.0) {
    OperatorMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = cnum{scale * rng.gauss(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cnum z = 0.5 * scale * rng.complex_gauss();
            m.at(i, j) = z;
            m.at(j, i) = std::conj(z);
        }
    }
    return m;
}

inline OperatorMat random_matrix(SeededRng& rng, std::size_t n) {
    OperatorMat m(n);
    for (auto& e : m.entries) e = rng.complex_gauss();
    return m;
}

// Random mixed state: normalized Gram matrix of a few random vectors.
inline DensityMat random_density(SeededRng& rng, std::size_t n) {
    OperatorMat g(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::vector<cnum> v = rng.amplitudes(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g.at(i, j) += v[i] * std::conj(v[j]);
    }
    const cnum t = trace(g);
    g = (cnum{1.0, 0.0} / t) * g;
    return DensityMat(n, std::move(g.entries));
}

}  // namespace gbt::test
