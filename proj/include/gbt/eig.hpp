// Hermitian eigendecomposition by cyclic Jacobi with complex rotations,
// returning the spectrum as (eigenvalue, eigenspace projector) pairs with
// degeneracy explicit.
//
// Degeneracy is a first-class concept here: after sorting, eigenvalues
// closer than GROUP_TOL are merged into one eigenspace and the projector
// is the sum of the merged rank-1 projectors. Measurement semantics
// (Lüders reduction) are built on this form, so an observable with a
// repeated eigenvalue projects onto the whole eigenspace instead of
// singling out an arbitrary eigenvector.

#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "gbt/linalg.hpp"

namespace gbt {

// Distinct eigenvalues sorted descending, matching orthogonal projectors,
// and their multiplicities (Σ multiplicities = dim).
struct SpectralForm {
    std::size_t dim = 0;
    std::vector<double> eigenvalues;
    std::vector<OperatorMat> projectors;
    std::vector<std::size_t> multiplicities;

    std::size_t outcome_count() const { return eigenvalues.size(); }
    bool degenerate() const {
        for (std::size_t m : multiplicities)
            if (m > 1) return true;
        return false;
    }
};

namespace detail {

// One cyclic Jacobi pass structure: for each (p, q) find the unitary
//   V = [[c, s], [-s̄, c]],  c real, s = t·c·e^{iφ},  a_pq = r·e^{iφ}
// that zeroes A[p][q] in V†AV. t is the smaller-magnitude root of
// t² + 2τt − 1 = 0 with τ = (A[q][q] − A[p][p]) / (2r).
struct JacobiResult {
    std::vector<double> eigenvalues;     // unsorted, position i ↔ column i
    std::vector<std::vector<cnum>> vecs; // vecs[i] is the i-th eigenvector
};

inline JacobiResult jacobi_hermitian(const OperatorMat& h) {
    const std::size_t n = h.dim;
    // Force exact Hermitian symmetry of the working copy before iterating.
    OperatorMat a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
    OperatorMat w = OperatorMat::identity(n);

    constexpr double off_target = 1e-13;
    constexpr int max_sweeps = 100;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * std::norm(a.at(p, q));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() >= off_target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a.at(p, q));
                if (r == 0.0) continue;
                const cnum phase = a.at(p, q) / r;
                const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * r);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cnum s = t * c * phase;

                // A ← A·V (columns p, q)
                for (std::size_t i = 0; i < n; ++i) {
                    const cnum aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - std::conj(s) * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                // A ← V†·A (rows p, q)
                for (std::size_t j = 0; j < n; ++j) {
                    const cnum apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj - s * aqj;
                    a.at(q, j) = std::conj(s) * apj + c * aqj;
                }
                a.at(p, q) = cnum{0.0, 0.0};
                a.at(q, p) = cnum{0.0, 0.0};
                // W ← W·V
                for (std::size_t i = 0; i < n; ++i) {
                    const cnum wip = w.at(i, p), wiq = w.at(i, q);
                    w.at(i, p) = c * wip - std::conj(s) * wiq;
                    w.at(i, q) = s * wip + c * wiq;
                }
            }
    }

    JacobiResult r;
    r.eigenvalues.resize(n);
    r.vecs.assign(n, std::vector<cnum>(n));
    for (std::size_t i = 0; i < n; ++i) {
        r.eigenvalues[i] = a.at(i, i).real();
        for (std::size_t k = 0; k < n; ++k) r.vecs[i][k] = w.at(k, i);
    }
    return r;
}

}  // namespace detail

// Full spectral form of a Hermitian matrix. Eigenvalues are sorted
// descending; adjacent values with gap < GROUP_TOL are merged into one
// eigenspace whose reported eigenvalue is the cluster mean.
inline SpectralForm eig_hermitian(const OperatorMat& h) {
    if (!is_hermitian(h)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    const std::size_t n = h.dim;
    detail::JacobiResult jr = detail::jacobi_hermitian(h);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return jr.eigenvalues[i] > jr.eigenvalues[j]; });

    SpectralForm sf;
    sf.dim = n;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n &&
               jr.eigenvalues[order[end - 1]] - jr.eigenvalues[order[end]] < GROUP_TOL)
            ++end;
        double mean = 0.0;
        OperatorMat proj(n);
        for (std::size_t k = start; k < end; ++k) {
            const auto& v = jr.vecs[order[k]];
            mean += jr.eigenvalues[order[k]];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) proj.at(i, j) += v[i] * std::conj(v[j]);
        }
        mean /= static_cast<double>(end - start);
        sf.eigenvalues.push_back(mean);
        sf.projectors.push_back(std::move(proj));
        sf.multiplicities.push_back(end - start);
        start = end;
    }
    return sf;
}

}  // namespace gbt
