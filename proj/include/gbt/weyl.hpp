// Pauli and generalized Weyl (shift/clock) operators.
//
//   X|j⟩ = |(j+1) mod d⟩        Z|j⟩ = ω^j |j⟩        ZX = ω XZ
//
// with X^d = Z^d = 1. At d = 2 these are σ₁ and σ₃. Words in X and Z are
// kept in the canonical form ω^p X^a Z^b (X-power left of Z-power); an
// operator written in any other order is normalized by folding the
// commutation phase into p. The phase group is the powers of ω for d ≥ 3
// and the quarter phases {1, i, −1, −i} for d = 2, so that σ₂ = i·X·Z and
// its multiples are representable.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "gbt/bell.hpp"
#include "gbt/linalg.hpp"

namespace gbt {

// σ₁, σ₂, σ₃.
inline OperatorMat pauli(int k) {
    OperatorMat m(2);
    switch (k) {
        case 1: m.at(0, 1) = m.at(1, 0) = cnum{1.0, 0.0}; break;
        case 2: m.at(0, 1) = cnum{0.0, -1.0}; m.at(1, 0) = cnum{0.0, 1.0}; break;
        case 3: m.at(0, 0) = cnum{1.0, 0.0}; m.at(1, 1) = cnum{-1.0, 0.0}; break;
        default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
    }
    return m;
}

inline OperatorMat identity(std::size_t d) { return OperatorMat::identity(d); }

// Shift: X|j⟩ = |(j+1) mod d⟩.
inline OperatorMat weyl_x(std::size_t d) {
    if (d < 2) throw std::invalid_argument("weyl_x: dimension must be >= 2");
    OperatorMat m(d);
    for (std::size_t j = 0; j < d; ++j) m.at((j + 1) % d, j) = cnum{1.0, 0.0};
    return m;
}

// Clock: Z|j⟩ = ω^j |j⟩.
inline OperatorMat weyl_z(std::size_t d) {
    if (d < 2) throw std::invalid_argument("weyl_z: dimension must be >= 2");
    OperatorMat m(d);
    for (std::size_t j = 0; j < d; ++j) m.at(j, j) = omega_pow(d, static_cast<long long>(j));
    return m;
}

inline OperatorMat matrix_power(const OperatorMat& m, std::size_t p) {
    OperatorMat r = OperatorMat::identity(m.dim);
    for (std::size_t i = 0; i < p; ++i) r = r * m;
    return r;
}

// ── WeylWord ─────────────────────────────────────────────────────────────

// Canonical word ω^p X^a Z^b. The phase exponent p lives in Z_4 at d = 2
// (phase unit i) and in Z_d at d ≥ 3 (phase unit ω); in both cases the
// unit is e^{2πi/order}.
struct WeylWord {
    std::size_t d;
    std::size_t x_pow;      // a ∈ Z_d
    std::size_t z_pow;      // b ∈ Z_d
    std::size_t phase_pow;  // p ∈ Z_order

    static std::size_t phase_order(std::size_t d) { return d == 2 ? 4 : d; }

    // Commutation ZX = ωXZ expressed in phase-group steps: ω is the unit
    // itself for d ≥ 3 but i² at d = 2.
    static std::size_t omega_step(std::size_t d) { return d == 2 ? 2 : 1; }

    WeylWord(std::size_t d_, std::size_t a, std::size_t b, std::size_t p)
        : d(d_), x_pow(a), z_pow(b), phase_pow(p) {
        if (d < 2) throw std::invalid_argument("WeylWord: dimension must be >= 2");
        if (a >= d || b >= d) throw std::invalid_argument("WeylWord: operator power out of range");
        if (p >= phase_order(d)) throw std::invalid_argument("WeylWord: phase power out of range");
    }

    static WeylWord identity_word(std::size_t d) { return WeylWord(d, 0, 0, 0); }

    cnum phase() const {
        return omega_pow(phase_order(d), static_cast<long long>(phase_pow));
    }
};

inline bool operator==(const WeylWord& a, const WeylWord& b) {
    return a.d == b.d && a.x_pow == b.x_pow && a.z_pow == b.z_pow && a.phase_pow == b.phase_pow;
}

// Same operator content up to a global phase.
inline bool phase_equivalent(const WeylWord& a, const WeylWord& b) {
    return a.d == b.d && a.x_pow == b.x_pow && a.z_pow == b.z_pow;
}

// (ω^{p₁} X^{a₁} Z^{b₁})(ω^{p₂} X^{a₂} Z^{b₂})
//   = ω^{p₁+p₂+b₁a₂} X^{a₁+a₂} Z^{b₁+b₂}
// — the Z^{b₁} X^{a₂} = ω^{b₁a₂} X^{a₂} Z^{b₁} exchange folded into p.
inline WeylWord weyl_mul(const WeylWord& u, const WeylWord& v) {
    if (u.d != v.d) throw std::invalid_argument("weyl_mul: dimension mismatch");
    const std::size_t d = u.d;
    const std::size_t order = WeylWord::phase_order(d);
    const std::size_t p =
        (u.phase_pow + v.phase_pow + WeylWord::omega_step(d) * u.z_pow * v.x_pow) % order;
    return WeylWord(d, (u.x_pow + v.x_pow) % d, (u.z_pow + v.z_pow) % d, p);
}

inline WeylWord operator*(const WeylWord& u, const WeylWord& v) { return weyl_mul(u, v); }

inline WeylWord wx(std::size_t d, std::size_t a = 1) { return WeylWord(d, a % d, 0, 0); }
inline WeylWord wz(std::size_t d, std::size_t b = 1) { return WeylWord(d, 0, b % d, 0); }
inline WeylWord wphase(std::size_t d, std::size_t p) {
    return WeylWord(d, 0, 0, p % WeylWord::phase_order(d));
}

// ω^p X^a Z^b as a matrix; always unitary.
inline OperatorMat materialize(const WeylWord& w) {
    OperatorMat m = matrix_power(weyl_x(w.d), w.x_pow) * matrix_power(weyl_z(w.d), w.z_pow);
    return w.phase() * m;
}

// Human-readable form, e.g. "ω²·X·Z²" or "-XZ" at d = 2.
inline std::string to_string(const WeylWord& w) {
    std::string s;
    if (w.d == 2) {
        static const char* q[4] = {"", "i·", "-", "-i·"};
        s += q[w.phase_pow];
    } else if (w.phase_pow == 1) {
        s += "ω·";
    } else if (w.phase_pow > 1) {
        s += "ω^" + std::to_string(w.phase_pow) + "·";
    }
    auto append_pow = [&](const char* name, std::size_t p) {
        if (p == 0) return;
        s += name;
        if (p > 1) s += "^" + std::to_string(p);
    };
    append_pow("X", w.x_pow);
    append_pow("Z", w.z_pow);
    if (w.x_pow == 0 && w.z_pow == 0) s += "1";
    return s;
}

// ── Observables with the Bell states as eigenvectors ─────────────────────

// d² real numbers assigned to the Bell states in flat order; the intended
// eigenvalues of Q̂ = Σ_k a_k |B_k⟩⟨B_k|.
struct ObservableSpec {
    std::size_t d;
    std::vector<double> eigenvalues;

    ObservableSpec(std::size_t d_, std::vector<double> eig) : d(d_), eigenvalues(std::move(eig)) {
        if (d < 2) throw std::invalid_argument("ObservableSpec: dimension must be >= 2");
        if (eigenvalues.size() != d * d)
            throw std::invalid_argument("ObservableSpec: need d*d eigenvalues");
    }
};

// Flat Bell indices grouped by eigenvalue; clusters with more than one
// member make the observable degenerate.
inline std::vector<std::vector<std::size_t>> eigenvalue_clusters(const ObservableSpec& spec) {
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<bool> used(spec.eigenvalues.size(), false);
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> c{i + 1};
        used[i] = true;
        for (std::size_t j = i + 1; j < spec.eigenvalues.size(); ++j)
            if (!used[j] && std::abs(spec.eigenvalues[i] - spec.eigenvalues[j]) <= GROUP_TOL) {
                c.push_back(j + 1);
                used[j] = true;
            }
        clusters.push_back(std::move(c));
    }
    return clusters;
}

inline bool is_nondegenerate(const ObservableSpec& spec) {
    for (const auto& c : eigenvalue_clusters(spec))
        if (c.size() > 1) return false;
    return true;
}

// Q̂ = Σ_k a_k |B_k⟩⟨B_k| on the d²-dimensional pair space.
inline OperatorMat build_observable(const ObservableSpec& spec) {
    const std::size_t n = spec.d * spec.d;
    OperatorMat q(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const StateVec b = bell_state(BellIndex::from_flat(spec.d, k));
        const double a = spec.eigenvalues[k - 1];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                q.at(i, j) += a * b.amps[i] * std::conj(b.amps[j]);
    }
    return q;
}

// For d = 2 the observable a|φ₁⟩⟨φ₁|+b|φ₂⟩⟨φ₂|+c|φ₃⟩⟨φ₃|+d|φ₄⟩⟨φ₄| equals
//   (a+b+c+d)/4·1⊗1 + (a−b+c−d)/4·σ₁⊗σ₁ + (−a+b+c−d)/4·σ₂⊗σ₂ + (a+b−c−d)/4·σ₃⊗σ₃.
// Returns those four coefficients in that order.
inline std::array<double, 4> pauli_form_qubit(const ObservableSpec& spec) {
    if (spec.d != 2) throw std::invalid_argument("pauli_form_qubit: requires d = 2");
    const double a = spec.eigenvalues[0], b = spec.eigenvalues[1];
    const double c = spec.eigenvalues[2], d = spec.eigenvalues[3];
    return {(a + b + c + d) / 4.0, (a - b + c - d) / 4.0, (-a + b + c - d) / 4.0,
            (a + b - c - d) / 4.0};
}

inline OperatorMat assemble_pauli_form(const std::array<double, 4>& coeff) {
    OperatorMat q = cnum{coeff[0], 0.0} * kron(identity(2), identity(2));
    q = q + cnum{coeff[1], 0.0} * kron(pauli(1), pauli(1));
    q = q + cnum{coeff[2], 0.0} * kron(pauli(2), pauli(2));
    q = q + cnum{coeff[3], 0.0} * kron(pauli(3), pauli(3));
    return q;
}

// Hilbert–Schmidt expansion of a d²×d² operator over the unitary basis
// {X^a Z^b ⊗ X^c Z^e}: coefficient = tr(B† Q)/d². No closed form is
// assumed; reassembly from these d⁴ coefficients reproduces Q.
inline std::vector<cnum> weyl_expansion(const OperatorMat& q, std::size_t d) {
    if (q.dim != d * d) throw std::invalid_argument("weyl_expansion: operator must act on d*d");
    std::vector<cnum> coeffs;
    coeffs.reserve(d * d * d * d);
    const double inv = 1.0 / static_cast<double>(d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e) {
                    const OperatorMat basis =
                        kron(materialize(WeylWord(d, a, b, 0)), materialize(WeylWord(d, c, e, 0)));
                    coeffs.push_back(inv * trace(dagger(basis) * q));
                }
    return coeffs;
}

inline OperatorMat assemble_weyl_expansion(const std::vector<cnum>& coeffs, std::size_t d) {
    if (coeffs.size() != d * d * d * d)
        throw std::invalid_argument("assemble_weyl_expansion: need d^4 coefficients");
    OperatorMat q(d * d);
    std::size_t idx = 0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e) {
                    const OperatorMat basis =
                        kron(materialize(WeylWord(d, a, b, 0)), materialize(WeylWord(d, c, e, 0)));
                    q = q + coeffs[idx++] * basis;
                }
    return q;
}

// ── Ket-bra decompositions over the operator algebra ─────────────────────

struct KetbraCheck {
    OperatorMat lhs;   // |i⟩⟨j|
    OperatorMat rhs;   // the X/Z (or Pauli) expression
    double diff_norm;  // max-abs difference
};

inline OperatorMat basis_ketbra(std::size_t d, std::size_t i, std::size_t j) {
    OperatorMat m(d);
    m.at(i, j) = cnum{1.0, 0.0};
    return m;
}

// Qubit identities:
//   |0⟩⟨0| = ½(1+σ₃)   |1⟩⟨1| = ½(1−σ₃)
//   |0⟩⟨1| = ½(σ₁+iσ₂) |1⟩⟨0| = ½(σ₁−iσ₂)
inline KetbraCheck ketbra_decomposition_qubit(std::size_t i, std::size_t j) {
    if (i > 1 || j > 1) throw std::invalid_argument("ketbra_decomposition_qubit: index out of range");
    const cnum half{0.5, 0.0};
    OperatorMat rhs(2);
    if (i == j) {
        const cnum sign = (i == 0) ? cnum{1.0, 0.0} : cnum{-1.0, 0.0};
        rhs = half * (identity(2) + sign * pauli(3));
    } else {
        const cnum unit = (i == 0) ? cnum{0.0, 1.0} : cnum{0.0, -1.0};
        rhs = half * (pauli(1) + unit * pauli(2));
    }
    OperatorMat lhs = basis_ketbra(2, i, j);
    return {lhs, rhs, max_abs(lhs - rhs)};
}

// Qutrit identities: each |i⟩⟨j| is one third of a sum of three X/Z words,
// each word of the shape X^l Z^m X^r:
//   |0⟩⟨0| = ⅓(1+Z+Z²)            |1⟩⟨1| = ⅓(1+XZX²+XZ²X²)
//   |2⟩⟨2| = ⅓(1+X²ZX+X²Z²X)      |0⟩⟨1| = ⅓(X²+ZX²+Z²X²)
//   |1⟩⟨0| = ⅓(X+XZ+XZ²)          |0⟩⟨2| = ⅓(X+ZX+Z²X)
//   |2⟩⟨0| = ⅓(X²+X²Z+X²Z²)       |1⟩⟨2| = ⅓(X²+XZX+XZ²X)
//   |2⟩⟨1| = ⅓(X+X²ZX²+X²Z²X²)
inline KetbraCheck ketbra_decomposition_qutrit(std::size_t i, std::size_t j) {
    if (i > 2 || j > 2) throw std::invalid_argument("ketbra_decomposition_qutrit: index out of range");
    using Term = std::array<std::size_t, 3>;  // (l, m, r) ↦ X^l Z^m X^r
    auto table = [&]() -> std::array<Term, 3> {
        if (i == 0 && j == 0) return {{{0, 0, 0}, {0, 1, 0}, {0, 2, 0}}};
        if (i == 1 && j == 1) return {{{0, 0, 0}, {1, 1, 2}, {1, 2, 2}}};
        if (i == 2 && j == 2) return {{{0, 0, 0}, {2, 1, 1}, {2, 2, 1}}};
        if (i == 0 && j == 1) return {{{0, 0, 2}, {0, 1, 2}, {0, 2, 2}}};
        if (i == 1 && j == 0) return {{{1, 0, 0}, {1, 1, 0}, {1, 2, 0}}};
        if (i == 0 && j == 2) return {{{0, 0, 1}, {0, 1, 1}, {0, 2, 1}}};
        if (i == 2 && j == 0) return {{{2, 0, 0}, {2, 1, 0}, {2, 2, 0}}};
        if (i == 1 && j == 2) return {{{0, 0, 2}, {1, 1, 1}, {1, 2, 1}}};
        return {{{0, 0, 1}, {2, 1, 2}, {2, 2, 2}}};  // (2, 1)
    }();
    const OperatorMat x = weyl_x(3), z = weyl_z(3);
    OperatorMat rhs(3);
    for (const Term& t : table)
        rhs = rhs + matrix_power(x, t[0]) * matrix_power(z, t[1]) * matrix_power(x, t[2]);
    rhs = cnum{1.0 / 3.0, 0.0} * rhs;
    OperatorMat lhs = basis_ketbra(3, i, j);
    return {lhs, rhs, max_abs(lhs - rhs)};
}

// General-d form of the same idea: |i⟩⟨j| = (1/d) Σ_t ω^{−tj} X^{i−j} Z^t.
inline KetbraCheck ketbra_decomposition_general(std::size_t d, std::size_t i, std::size_t j) {
    if (i >= d || j >= d) throw std::invalid_argument("ketbra_decomposition_general: index out of range");
    OperatorMat rhs(d);
    const std::size_t shift = (i + d - j) % d;
    for (std::size_t t = 0; t < d; ++t) {
        const cnum c = omega_pow(d, -static_cast<long long>(t * j));
        rhs = rhs + c * materialize(WeylWord(d, shift, t, 0));
    }
    rhs = cnum{1.0 / static_cast<double>(d), 0.0} * rhs;
    OperatorMat lhs = basis_ketbra(d, i, j);
    return {lhs, rhs, max_abs(lhs - rhs)};
}

}  // namespace gbt
