// Generalized Bell basis for any local dimension d ≥ 2.
//
// A Bell state is indexed by a shift m and a phase n, both in Z_d:
//
//   |B(m,n)⟩ = (1/√d) Σ_j ω^{j·n} |j⟩ ⊗ |(j+m) mod d⟩,   ω = e^{2πi/d}.
//
// The flat numbering k = d·m + n + 1 runs through the standard lists: at
// d = 2 it gives the four qubit Bell states φ₁…φ₄ (with ω = −1), at d = 3
// the nine qutrit states ψ₁…ψ₉. All d² states are orthonormal and
// maximally entangled, and |B(m,n)⟩ = (Z^n ⊗ X^m)|B(0,0)⟩.

#pragma once

#include <cstddef>
#include <vector>

#include "gbt/linalg.hpp"

namespace gbt {

// (m, n) ∈ Z_d × Z_d naming one generalized Bell state.
struct BellIndex {
    std::size_t d;  // local dimension
    std::size_t m;  // shift index
    std::size_t n;  // phase index

    BellIndex(std::size_t d_, std::size_t m_, std::size_t n_) : d(d_), m(m_), n(n_) {
        if (d < 2) throw std::invalid_argument("BellIndex: dimension must be >= 2");
        if (m >= d || n >= d) throw std::invalid_argument("BellIndex: index out of range");
    }

    // 1-based flat index: k = d·m + n + 1 ∈ {1, …, d²}.
    std::size_t flat() const { return d * m + n + 1; }

    static BellIndex from_flat(std::size_t d, std::size_t k) {
        if (k < 1 || k > d * d) throw std::invalid_argument("BellIndex: flat index out of range");
        return BellIndex(d, (k - 1) / d, (k - 1) % d);
    }
};

inline bool operator==(const BellIndex& a, const BellIndex& b) {
    return a.d == b.d && a.m == b.m && a.n == b.n;
}

// |B(m,n)⟩ on dims (d, d).
inline StateVec bell_state(const BellIndex& idx) {
    const std::size_t d = idx.d;
    const double inv = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<cnum> amps(d * d, cnum{0.0, 0.0});
    for (std::size_t j = 0; j < d; ++j) {
        const std::size_t col = (j + idx.m) % d;
        amps[j * d + col] = inv * omega_pow(d, static_cast<long long>(j * idx.n));
    }
    return StateVec({d, d}, std::move(amps));
}

// All d² Bell states in flat-index order.
inline std::vector<StateVec> bell_basis(std::size_t d) {
    if (d < 2) throw std::invalid_argument("bell_basis: dimension must be >= 2");
    std::vector<StateVec> basis;
    basis.reserve(d * d);
    for (std::size_t k = 1; k <= d * d; ++k) basis.push_back(bell_state(BellIndex::from_flat(d, k)));
    return basis;
}

// Coefficients c_k with |i⟩⊗|j⟩ = Σ_k c_k |B_k⟩, in flat-index order.
// Exactly d of the d² coefficients are nonzero (those with m = j−i mod d),
// each of magnitude 1/√d.
inline std::vector<cnum> product_in_bell_basis(std::size_t i, std::size_t j, std::size_t d) {
    if (d < 2) throw std::invalid_argument("product_in_bell_basis: dimension must be >= 2");
    if (i >= d || j >= d) throw std::invalid_argument("product_in_bell_basis: ket index out of range");
    const StateVec ket = StateVec::basis({d, d}, i * d + j);
    std::vector<cnum> coeffs;
    coeffs.reserve(d * d);
    for (std::size_t k = 1; k <= d * d; ++k)
        coeffs.push_back(inner(bell_state(BellIndex::from_flat(d, k)), ket));
    return coeffs;
}

}  // namespace gbt
