// Dense complex linear algebra on small tensor-product Hilbert spaces.
//
// Everything here is sized for qudit protocols: local dimensions d ≤ ~8,
// composite spaces up to d³. Values are immutable after construction and
// every operation returns a fresh value; nothing mutates its inputs.
//
// Index convention is row-major / big-endian: for dims (d₀, d₁, …) the
// composite index of digits (j₀, j₁, …) is j₀·d₁·d₂·… + j₁·d₂·… + ….
// The leftmost tensor factor is the most significant digit, matching the
// usual left-to-right ket ordering |·⟩₁ ⊗ |·⟩₂.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbt {

using cnum = std::complex<double>;

// Numerical tolerances. Dimensions are tiny (≤ 27), so double precision
// leaves several orders of headroom below each of these.
inline constexpr double TOL_NORM = 1e-12;   // state normalization, traces
inline constexpr double TOL_MAT = 1e-10;    // matrix identities
inline constexpr double GROUP_TOL = 1e-8;   // eigenvalue clustering
inline constexpr double PHASE_TOL = 1e-9;   // smallest amplitude usable as a phase reference

inline bool is_finite(cnum z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ω_d^p with the exponent reduced mod d, so ω⁰ = 1 exactly and powers of
// the same residue are bit-identical.
inline cnum omega_pow(std::size_t d, long long p) {
    if (d < 2) throw std::invalid_argument("omega_pow: dimension must be >= 2");
    long long r = p % static_cast<long long>(d);
    if (r < 0) r += static_cast<long long>(d);
    if (r == 0) return {1.0, 0.0};
    if (2 * static_cast<std::size_t>(r) == d) return {-1.0, 0.0};
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(d));
}

// The d-th roots of unity {1, ω, ω², …}. Validates Σ_r ω^r = 0 and
// ω̄ = ω^{d-1} on every construction; at d = 3 these are the identities
// 1 + ω + ω² = 0 and ω̄ = ω².
inline std::vector<cnum> roots_of_unity(std::size_t d) {
    std::vector<cnum> roots(d);
    cnum sum{0.0, 0.0};
    for (std::size_t r = 0; r < d; ++r) {
        roots[r] = omega_pow(d, static_cast<long long>(r));
        sum += roots[r];
    }
    if (std::abs(sum) > 1e-12 * static_cast<double>(d))
        throw std::runtime_error("roots_of_unity: sum of roots deviates from zero");
    if (std::abs(std::conj(roots[1]) - roots[d - 1]) > 1e-12)
        throw std::runtime_error("roots_of_unity: conjugation identity failed");
    return roots;
}

// ── StateVec ─────────────────────────────────────────────────────────────

// Normalized amplitude vector on a tensor product of local spaces.
struct StateVec {
    std::vector<std::size_t> dims;  // local dimensions, leftmost factor first
    std::vector<cnum> amps;         // length ∏ dims, ‖amps‖₂ = 1

    StateVec(std::vector<std::size_t> dims_, std::vector<cnum> amps_)
        : dims(std::move(dims_)), amps(std::move(amps_)) {
        std::size_t total = 1;
        for (std::size_t d : dims) {
            if (d == 0) throw std::invalid_argument("StateVec: zero local dimension");
            total *= d;
        }
        if (amps.size() != total)
            throw std::invalid_argument("StateVec: amplitude count does not match dims");
        double n2 = 0.0;
        for (cnum a : amps) {
            if (!is_finite(a)) throw std::invalid_argument("StateVec: non-finite amplitude");
            n2 += std::norm(a);
        }
        if (std::abs(std::sqrt(n2) - 1.0) > TOL_NORM)
            throw std::invalid_argument("StateVec: vector is not normalized");
    }

    std::size_t total_dim() const {
        std::size_t total = 1;
        for (std::size_t d : dims) total *= d;
        return total;
    }

    // Basis ket |flat⟩ on the given factor structure.
    static StateVec basis(std::vector<std::size_t> dims_, std::size_t flat) {
        std::size_t total = 1;
        for (std::size_t d : dims_) total *= d;
        if (flat >= total) throw std::invalid_argument("StateVec::basis: index out of range");
        std::vector<cnum> a(total, cnum{0.0, 0.0});
        a[flat] = cnum{1.0, 0.0};
        return StateVec(std::move(dims_), std::move(a));
    }
};

inline bool operator==(const StateVec& a, const StateVec& b) {
    return a.dims == b.dims && a.amps == b.amps;
}

// ── OperatorMat ──────────────────────────────────────────────────────────

// Dense complex square matrix, row-major. Used for Hermitian observables,
// unitaries, and projectors alike; specific algebraic properties are
// checked where they matter (eig_hermitian rejects non-Hermitian input),
// not at construction.
struct OperatorMat {
    std::size_t dim = 0;
    std::vector<cnum> entries;  // row-major, dim × dim

    OperatorMat() = default;
    explicit OperatorMat(std::size_t n) : dim(n), entries(n * n, cnum{0.0, 0.0}) {
        if (n == 0) throw std::invalid_argument("OperatorMat: zero dimension");
    }
    OperatorMat(std::size_t n, std::vector<cnum> e) : dim(n), entries(std::move(e)) {
        if (n == 0 || entries.size() != n * n)
            throw std::invalid_argument("OperatorMat: entry count does not match dimension");
        for (cnum z : entries)
            if (!is_finite(z)) throw std::invalid_argument("OperatorMat: non-finite entry");
    }

    cnum& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    const cnum& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

    static OperatorMat identity(std::size_t n) {
        OperatorMat m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cnum{1.0, 0.0};
        return m;
    }
};

inline bool operator==(const OperatorMat& a, const OperatorMat& b) {
    return a.dim == b.dim && a.entries == b.entries;
}

inline OperatorMat operator+(const OperatorMat& a, const OperatorMat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("operator+: dimension mismatch");
    OperatorMat r(a.dim);
    for (std::size_t i = 0; i < a.entries.size(); ++i) r.entries[i] = a.entries[i] + b.entries[i];
    return r;
}

inline OperatorMat operator-(const OperatorMat& a, const OperatorMat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("operator-: dimension mismatch");
    OperatorMat r(a.dim);
    for (std::size_t i = 0; i < a.entries.size(); ++i) r.entries[i] = a.entries[i] - b.entries[i];
    return r;
}

inline OperatorMat operator*(cnum s, const OperatorMat& a) {
    OperatorMat r(a.dim);
    for (std::size_t i = 0; i < a.entries.size(); ++i) r.entries[i] = s * a.entries[i];
    return r;
}

inline OperatorMat operator*(const OperatorMat& a, const OperatorMat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("operator*: dimension mismatch");
    OperatorMat r(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t k = 0; k < a.dim; ++k) {
            cnum aik = a.at(i, k);
            if (aik == cnum{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < a.dim; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

// Conjugate transpose.
inline OperatorMat dagger(const OperatorMat& m) {
    OperatorMat r(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = 0; j < m.dim; ++j) r.at(j, i) = std::conj(m.at(i, j));
    return r;
}

inline cnum trace(const OperatorMat& m) {
    cnum t{0.0, 0.0};
    for (std::size_t i = 0; i < m.dim; ++i) t += m.at(i, i);
    return t;
}

inline double max_abs(const OperatorMat& m) {
    double v = 0.0;
    for (cnum z : m.entries) v = std::max(v, std::abs(z));
    return v;
}

inline double frobenius_norm(const OperatorMat& m) {
    double s = 0.0;
    for (cnum z : m.entries) s += std::norm(z);
    return std::sqrt(s);
}

inline bool is_hermitian(const OperatorMat& m, double tol = TOL_MAT) {
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = i; j < m.dim; ++j)
            if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > tol) return false;
    return true;
}

inline bool is_unitary(const OperatorMat& m, double tol = TOL_MAT) {
    return max_abs(dagger(m) * m - OperatorMat::identity(m.dim)) <= tol;
}

// ── DensityMat ───────────────────────────────────────────────────────────

// Mixed-state density matrix: Hermitian, trace 1. Positivity holds by
// construction for everything built from pure states here and is checked
// in tests rather than at every construction.
struct DensityMat {
    std::size_t dim = 0;
    std::vector<cnum> entries;  // row-major

    DensityMat(std::size_t n, std::vector<cnum> e) : dim(n), entries(std::move(e)) {
        if (n == 0 || entries.size() != n * n)
            throw std::invalid_argument("DensityMat: entry count does not match dimension");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (std::abs(entries[i * n + j] - std::conj(entries[j * n + i])) > TOL_MAT)
                    throw std::invalid_argument("DensityMat: matrix is not Hermitian");
        cnum t{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) t += entries[i * n + i];
        if (std::abs(t - cnum{1.0, 0.0}) > 1e3 * TOL_NORM)
            throw std::invalid_argument("DensityMat: trace is not 1");
    }

    cnum& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    const cnum& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

    static DensityMat maximally_mixed(std::size_t n) {
        std::vector<cnum> e(n * n, cnum{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = cnum{1.0 / static_cast<double>(n), 0.0};
        return DensityMat(n, std::move(e));
    }
};

inline OperatorMat as_operator(const DensityMat& rho) { return OperatorMat(rho.dim, rho.entries); }

// |ψ⟩⟨ψ| as a density matrix.
inline DensityMat outer(const StateVec& s) {
    std::size_t n = s.total_dim();
    std::vector<cnum> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = s.amps[i] * std::conj(s.amps[j]);
    return DensityMat(n, std::move(e));
}

// |a⟩⟨b| as a plain matrix (not a density matrix unless a = b).
inline OperatorMat ketbra(const StateVec& a, const StateVec& b) {
    if (a.total_dim() != b.total_dim()) throw std::invalid_argument("ketbra: dimension mismatch");
    std::size_t n = a.total_dim();
    OperatorMat m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a.amps[i] * std::conj(b.amps[j]);
    return m;
}

// tr(ρ²); 1 for pure states, 1/dim for the maximally mixed state.
inline double purity(const DensityMat& rho) {
    double s = 0.0;
    for (cnum z : rho.entries) s += std::norm(z);
    return s;
}

// U ρ U†.
inline DensityMat evolve(const OperatorMat& u, const DensityMat& rho) {
    if (u.dim != rho.dim) throw std::invalid_argument("evolve: dimension mismatch");
    OperatorMat m = u * as_operator(rho) * dagger(u);
    return DensityMat(m.dim, std::move(m.entries));
}

// ── Tensor products ──────────────────────────────────────────────────────

// Composite index of (j, k) is j·dim(b) + k: the left factor is the most
// significant digit.
inline StateVec kron(const StateVec& a, const StateVec& b) {
    std::vector<std::size_t> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    std::size_t nb = b.total_dim();
    std::vector<cnum> amps(a.total_dim() * nb);
    for (std::size_t i = 0; i < a.amps.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j) amps[i * nb + j] = a.amps[i] * b.amps[j];
    return StateVec(std::move(dims), std::move(amps));
}

inline OperatorMat kron(const OperatorMat& a, const OperatorMat& b) {
    std::size_t na = a.dim, nb = b.dim, n = na * nb;
    OperatorMat r(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            cnum aij = a.at(i, j);
            if (aij == cnum{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    r.at(i * nb + k, j * nb + l) = aij * b.at(k, l);
        }
    return r;
}

inline DensityMat kron(const DensityMat& a, const DensityMat& b) {
    OperatorMat m = kron(as_operator(a), as_operator(b));
    return DensityMat(m.dim, std::move(m.entries));
}

// ── Inner products, application, fidelity ────────────────────────────────

// ⟨a|b⟩, conjugate-linear in the first argument.
inline cnum inner(const StateVec& a, const StateVec& b) {
    if (a.dims != b.dims) throw std::invalid_argument("inner: dimension mismatch");
    cnum s{0.0, 0.0};
    for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

inline std::vector<cnum> matvec(const OperatorMat& m, const std::vector<cnum>& v) {
    if (v.size() != m.dim) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<cnum> r(m.dim, cnum{0.0, 0.0});
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = 0; j < m.dim; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

// Apply a full-space operator; only valid when it preserves the norm.
inline StateVec apply(const OperatorMat& m, const StateVec& s) {
    if (m.dim != s.total_dim()) throw std::invalid_argument("apply: dimension mismatch");
    return StateVec(s.dims, matvec(m, s.amps));
}

// Enumerates flat-index offsets for a subset of tensor factors, so an
// operator on the selected factors can be applied in place of (op ⊗ 1).
struct SubsystemIndexer {
    std::vector<std::size_t> sel_offsets;   // indexed by the operator's row index
    std::vector<std::size_t> rest_offsets;  // one per assignment of the untouched digits

    SubsystemIndexer(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& subsystems) {
        std::size_t n = dims.size();
        std::vector<bool> selected(n, false);
        for (std::size_t s : subsystems) {
            if (s >= n) throw std::invalid_argument("SubsystemIndexer: subsystem index out of range");
            if (selected[s]) throw std::invalid_argument("SubsystemIndexer: duplicate subsystem index");
            selected[s] = true;
        }
        std::vector<std::size_t> strides(n, 1);
        for (std::size_t i = n; i-- > 1;) strides[i - 1] = strides[i] * dims[i];

        auto enumerate = [&](const std::vector<std::size_t>& factors) {
            std::vector<std::size_t> offsets{0};
            for (std::size_t f : factors) {
                std::vector<std::size_t> next;
                next.reserve(offsets.size() * dims[f]);
                for (std::size_t base : offsets)
                    for (std::size_t digit = 0; digit < dims[f]; ++digit)
                        next.push_back(base + digit * strides[f]);
                offsets = std::move(next);
            }
            return offsets;
        };

        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (!selected[i]) rest.push_back(i);
        sel_offsets = enumerate(subsystems);
        rest_offsets = enumerate(rest);
    }
};

// (op ⊗ 1_rest)|ψ⟩ with op acting on the given tensor factors. Returns raw
// amplitudes because the result of a projector need not be normalized.
inline std::vector<cnum> apply_on_subsystems(const OperatorMat& op, const std::vector<std::size_t>& dims,
                                             const std::vector<cnum>& amps,
                                             const std::vector<std::size_t>& subsystems) {
    SubsystemIndexer ix(dims, subsystems);
    if (op.dim != ix.sel_offsets.size())
        throw std::invalid_argument("apply_on_subsystems: operator does not match selected factors");
    std::vector<cnum> out(amps.size(), cnum{0.0, 0.0});
    std::size_t m = op.dim;
    for (std::size_t rest : ix.rest_offsets)
        for (std::size_t a = 0; a < m; ++a) {
            cnum acc{0.0, 0.0};
            for (std::size_t b = 0; b < m; ++b) acc += op.at(a, b) * amps[ix.sel_offsets[b] + rest];
            out[ix.sel_offsets[a] + rest] = acc;
        }
    return out;
}

// Embed op (acting on the given factors) into the full space as a matrix.
inline OperatorMat embed(const OperatorMat& op, const std::vector<std::size_t>& dims,
                         const std::vector<std::size_t>& subsystems) {
    SubsystemIndexer ix(dims, subsystems);
    if (op.dim != ix.sel_offsets.size())
        throw std::invalid_argument("embed: operator does not match selected factors");
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    OperatorMat r(total);
    for (std::size_t rest : ix.rest_offsets)
        for (std::size_t a = 0; a < op.dim; ++a)
            for (std::size_t b = 0; b < op.dim; ++b)
                r.at(ix.sel_offsets[a] + rest, ix.sel_offsets[b] + rest) = op.at(a, b);
    return r;
}

// Reduced density matrix of one tensor factor, tracing out all others.
inline DensityMat partial_trace(const DensityMat& rho, const std::vector<std::size_t>& dims,
                                std::size_t keep) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    if (total != rho.dim) throw std::invalid_argument("partial_trace: dims do not match matrix");
    if (keep >= dims.size()) throw std::invalid_argument("partial_trace: bad subsystem index");
    SubsystemIndexer ix(dims, {keep});
    std::size_t m = dims[keep];
    std::vector<cnum> e(m * m, cnum{0.0, 0.0});
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            cnum acc{0.0, 0.0};
            for (std::size_t rest : ix.rest_offsets)
                acc += rho.at(ix.sel_offsets[a] + rest, ix.sel_offsets[b] + rest);
            e[a * m + b] = acc;
        }
    return DensityMat(m, std::move(e));
}

// ⟨ψ|ρ|ψ⟩, clamped to [0, 1].
inline double fidelity(const StateVec& pure, const DensityMat& rho) {
    if (pure.total_dim() != rho.dim) throw std::invalid_argument("fidelity: dimension mismatch");
    cnum v{0.0, 0.0};
    for (std::size_t i = 0; i < rho.dim; ++i)
        for (std::size_t j = 0; j < rho.dim; ++j)
            v += std::conj(pure.amps[i]) * rho.at(i, j) * pure.amps[j];
    if (std::abs(v.imag()) > TOL_MAT) throw std::runtime_error("fidelity: value is not real");
    return std::clamp(v.real(), 0.0, 1.0);
}

// |⟨a|b⟩|² for two pure states.
inline double fidelity(const StateVec& a, const StateVec& b) {
    return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

// Remove the physically meaningless global phase: the first amplitude of
// magnitude > PHASE_TOL is made real and positive.
inline StateVec global_phase_canonical(const StateVec& s) {
    for (cnum a : s.amps) {
        if (std::abs(a) > PHASE_TOL) {
            cnum factor = std::conj(a) / std::abs(a);
            std::vector<cnum> amps(s.amps.size());
            for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = factor * s.amps[i];
            return StateVec(s.dims, std::move(amps));
        }
    }
    throw std::invalid_argument("global_phase_canonical: zero vector");
}

}  // namespace gbt
