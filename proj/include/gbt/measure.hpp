// Projective measurement: Born rule for outcome probabilities, Lüders rule
// for state reduction.
//
// The reduction always projects onto the full eigenspace and renormalizes:
//   |ψ'⟩ = (P_k ⊗ 1)|ψ⟩ / ‖(P_k ⊗ 1)|ψ⟩‖.
// For a degenerate eigenvalue this leaves a superposition inside the
// eigenspace — it never picks a privileged eigenvector. An observable with
// degenerate eigenvalues therefore cannot reveal which basis vector of the
// eigenspace "occurred", which is exactly what breaks teleportation when
// the measured operator fails to separate the Bell states.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gbt/eig.hpp"
#include "gbt/linalg.hpp"
#include "gbt/rng.hpp"

namespace gbt {

struct MeasurementOutcome {
    double eigenvalue;
    double probability;   // Born probability of the realized projector
    StateVec post_state;  // normalized Lüders reduction
    bool degenerate;      // eigenspace multiplicity > 1
};

// Probabilities below this are treated as exactly zero when sampling, so
// round-off never manufactures an outcome.
inline constexpr double SAMPLING_ZERO = 1e-14;

namespace detail {

inline std::vector<double> born_probabilities(const StateVec& state, const SpectralForm& obs,
                                              const std::vector<std::size_t>& subsystems) {
    std::size_t sel_dim = 1;
    for (std::size_t s : subsystems) {
        if (s >= state.dims.size())
            throw std::invalid_argument("measure: subsystem index out of range");
        sel_dim *= state.dims[s];
    }
    if (obs.dim != sel_dim)
        throw std::invalid_argument("measure: observable does not match selected subsystems");
    std::vector<double> ps;
    ps.reserve(obs.outcome_count());
    for (const OperatorMat& p : obs.projectors) {
        const std::vector<cnum> projected = apply_on_subsystems(p, state.dims, state.amps, subsystems);
        double n2 = 0.0;
        for (cnum z : projected) n2 += std::norm(z);
        ps.push_back(n2);
    }
    return ps;
}

}  // namespace detail

// Exact Born distribution as (eigenvalue, probability) pairs in spectral
// order (descending eigenvalue). Probabilities sum to 1 for a normalized
// state and a complete spectral form.
inline std::vector<std::pair<double, double>> outcome_distribution(
    const StateVec& state, const SpectralForm& obs, const std::vector<std::size_t>& subsystems) {
    const std::vector<double> ps = detail::born_probabilities(state, obs, subsystems);
    std::vector<std::pair<double, double>> dist;
    dist.reserve(ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k) dist.emplace_back(obs.eigenvalues[k], ps[k]);
    return dist;
}

// Sample one outcome with Born probabilities and apply the Lüders
// reduction. Deterministic given rng_seed: a single uniform draw picks the
// outcome by inverse CDF over the spectral order.
inline MeasurementOutcome measure(const StateVec& state, const SpectralForm& obs,
                                  const std::vector<std::size_t>& subsystems,
                                  std::uint64_t rng_seed) {
    std::vector<double> ps = detail::born_probabilities(state, obs, subsystems);
    double total = 0.0;
    for (double& p : ps) {
        if (p < SAMPLING_ZERO) p = 0.0;
        total += p;
    }
    if (total < TOL_NORM)
        throw std::runtime_error("measure: all outcome probabilities vanish (inconsistent spectral form)");

    SeededRng rng(rng_seed);
    const double u = rng.uniform01() * total;
    std::size_t chosen = obs.outcome_count();
    double cum = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        if (ps[k] == 0.0) continue;
        cum += ps[k];
        chosen = k;
        if (u < cum) break;
    }

    const std::vector<cnum> projected =
        apply_on_subsystems(obs.projectors[chosen], state.dims, state.amps, subsystems);
    double n2 = 0.0;
    for (cnum z : projected) n2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<cnum> post(projected.size());
    for (std::size_t i = 0; i < post.size(); ++i) post[i] = inv * projected[i];

    return MeasurementOutcome{obs.eigenvalues[chosen], n2, StateVec(state.dims, std::move(post)),
                              obs.multiplicities[chosen] > 1};
}

// Reduced density matrix of one factor of a (post-measurement) state.
inline DensityMat bob_marginal(const StateVec& post_state, std::size_t bob_index) {
    if (bob_index >= post_state.dims.size())
        throw std::invalid_argument("bob_marginal: bad subsystem index");
    return partial_trace(outer(post_state), post_state.dims, bob_index);
}

}  // namespace gbt
