// The teleportation protocol for qudits of any dimension d ≥ 2, with the
// shared resource a generalized Bell state.
//
// One run:
//   (i)   Alice measures an observable on particles (1, A) whose
//         eigenvectors are the Bell states and whose eigenvalues are all
//         simple. The three-particle state collapses onto one Bell branch.
//   (ii)  The outcome's flat Bell index is the classical message.
//   (iii) Bob's particle now carries a unitary image of the input state.
//   (iv)  Bob applies the correcting Weyl word and recovers the input.
//
// The correction solver works for every dimension, resource and outcome;
// the two classical tables (d = 2 with the singlet resource, d = 3 with
// its ω-phased analogue) are kept verbatim and checked against the solver.
//
// run_teleport refuses observables with degenerate eigenvalues: after such
// a measurement the post state is a superposition across Bell branches and
// no fixed correction can recover the input. run_degenerate_demo runs that
// broken variant anyway and quantifies the damage.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "gbt/bell.hpp"
#include "gbt/eig.hpp"
#include "gbt/linalg.hpp"
#include "gbt/measure.hpp"
#include "gbt/weyl.hpp"

namespace gbt {

// ── Configuration ────────────────────────────────────────────────────────

struct ProtocolConfig {
    std::size_t d;
    std::vector<cnum> input_amps;  // normalized, length d
    BellIndex resource;            // shared pair, maximally entangled by construction
    ObservableSpec observable;     // eigenvalues assigned to Bell states in flat order
    std::uint64_t seed = 0;
};

struct ClassicalMessage {
    std::size_t bell_flat_index;  // 1 … d²
};

struct CorrectionTable {
    std::size_t d;
    BellIndex resource;
    std::map<std::size_t, WeylWord> entries;  // flat Bell index → correction word
};

struct TeleportReport {
    ProtocolConfig config;
    MeasurementOutcome outcome;
    ClassicalMessage message;
    WeylWord correction;
    StateVec bob_state;  // after correction, global phase canonicalized
    double fidelity;
    bool success;  // fidelity > 1 − 1e-9
};

inline constexpr double SUCCESS_FIDELITY = 1.0 - 1e-9;

// Simple observable with eigenvalues d²−1, d²−2, …, 0 on the Bell states.
inline ObservableSpec default_observable(std::size_t d) {
    std::vector<double> eig(d * d);
    for (std::size_t k = 0; k < d * d; ++k) eig[k] = static_cast<double>(d * d - 1 - k);
    return ObservableSpec(d, std::move(eig));
}

// σ₁⊗σ₁ + σ₂⊗σ₂ in Bell eigenvalues: (0, 0, 2, −2). Degenerate.
inline ObservableSpec op12_spec() { return ObservableSpec(2, {0.0, 0.0, 2.0, -2.0}); }

// σ₁⊗σ₁ + σ₃⊗σ₃ in Bell eigenvalues: (2, 0, 0, −2). Degenerate: the two
// middle Bell states share the eigenvalue 0.
inline ObservableSpec op13_spec() { return ObservableSpec(2, {2.0, 0.0, 0.0, -2.0}); }

// The classical qubit choice a=3, b=1, c=−1, d=−3, i.e. σ₁⊗σ₁ + 2σ₃⊗σ₃.
inline ObservableSpec good_d2_spec() { return ObservableSpec(2, {3.0, 1.0, -1.0, -3.0}); }

// Nine distinct integers 8 … 0 for the qutrit protocol.
inline ObservableSpec good_d3_spec() { return default_observable(3); }

inline void validate_input_amps(std::size_t d, const std::vector<cnum>& amps) {
    if (amps.size() != d) throw std::invalid_argument("input state: need d amplitudes");
    double n2 = 0.0;
    for (cnum a : amps) {
        if (!is_finite(a)) throw std::invalid_argument("input state: non-finite amplitude");
        n2 += std::norm(a);
    }
    if (std::abs(std::sqrt(n2) - 1.0) > TOL_NORM)
        throw std::invalid_argument("input state: not normalized");
}

// The d = 2 protocol preset: singlet-style resource B(1,1) = (|01⟩−|10⟩)/√2
// and the (3, 1, −1, −3) observable.
inline ProtocolConfig preset_d2(std::vector<cnum> input, std::uint64_t seed) {
    validate_input_amps(2, input);
    return ProtocolConfig{2, std::move(input), BellIndex(2, 1, 1), good_d2_spec(), seed};
}

// The d = 3 protocol preset: resource B(1,1) = (|01⟩+ω|12⟩+ω²|20⟩)/√3 and
// eigenvalues 8 … 0.
inline ProtocolConfig preset_d3(std::vector<cnum> input, std::uint64_t seed) {
    validate_input_amps(3, input);
    return ProtocolConfig{3, std::move(input), BellIndex(3, 1, 1), good_d3_spec(), seed};
}

// General-d config with the canonical resource B(0,0) and default observable.
inline ProtocolConfig default_config(std::size_t d, std::vector<cnum> input, std::uint64_t seed) {
    validate_input_amps(d, input);
    return ProtocolConfig{d, std::move(input), BellIndex(d, 0, 0), default_observable(d), seed};
}

// ── State preparation and Bell-branch structure ──────────────────────────

// (Σ_i c_i |i⟩₁) ⊗ |resource⟩_AB on dims (d, d, d).
inline StateVec three_particle_state(const ProtocolConfig& cfg) {
    validate_input_amps(cfg.d, cfg.input_amps);
    StateVec input({cfg.d}, cfg.input_amps);
    return kron(input, bell_state(cfg.resource));
}

struct BellBranch {
    BellIndex index;
    StateVec conditional;  // normalized state of Bob's particle on this branch
};

// Contract ⟨B_k| against the (1, A) factors of a three-particle state.
// Returns the unnormalized conditional B-vector (norm 1/d for a Bell-state
// resource and normalized input).
inline std::vector<cnum> contract_bell(const StateVec& psi3, const BellIndex& outcome) {
    const std::size_t d = outcome.d;
    if (psi3.dims != std::vector<std::size_t>{d, d, d})
        throw std::invalid_argument("contract_bell: expected a (d, d, d) state");
    const StateVec bell = bell_state(outcome);
    std::vector<cnum> cond(d, cnum{0.0, 0.0});
    for (std::size_t ij = 0; ij < d * d; ++ij) {
        const cnum w = std::conj(bell.amps[ij]);
        if (w == cnum{0.0, 0.0}) continue;
        for (std::size_t b = 0; b < d; ++b) cond[b] += w * psi3.amps[ij * d + b];
    }
    return cond;
}

// The exact decomposition  |ψ₃⟩ = Σ_k (1/d) |B_k⟩_{1A} ⊗ |cond_k⟩_B  with
// every conditional normalized, in flat-index order.
inline std::vector<BellBranch> expand_in_bell_branches(const ProtocolConfig& cfg) {
    const StateVec psi3 = three_particle_state(cfg);
    std::vector<BellBranch> branches;
    branches.reserve(cfg.d * cfg.d);
    for (std::size_t k = 1; k <= cfg.d * cfg.d; ++k) {
        const BellIndex idx = BellIndex::from_flat(cfg.d, k);
        std::vector<cnum> cond = contract_bell(psi3, idx);
        double n2 = 0.0;
        for (cnum z : cond) n2 += std::norm(z);
        if (n2 < TOL_NORM)
            throw std::runtime_error("expand_in_bell_branches: vanishing branch");
        const double inv = 1.0 / std::sqrt(n2);
        for (cnum& z : cond) z *= inv;
        branches.push_back(BellBranch{idx, StateVec({cfg.d}, std::move(cond))});
    }
    return branches;
}

// The conditional linear map M_k with  |cond⟩ = M_k |input⟩: column i is
// the contraction of ⟨B_outcome| against |i⟩ ⊗ |resource⟩, scaled by d.
// For a Bell-state resource M_k is unitary (a phased Weyl operator).
inline OperatorMat conditional_map(std::size_t d, const BellIndex& resource,
                                   const BellIndex& outcome) {
    const StateVec res = bell_state(resource);
    const StateVec bell = bell_state(outcome);
    OperatorMat m(d);
    for (std::size_t i = 0; i < d; ++i) {
        // d · ⟨B_out|_{1A} (|i⟩₁ ⊗ |res⟩_AB), assembled without forming ψ₃
        for (std::size_t j = 0; j < d; ++j) {
            const cnum w = std::conj(bell.amps[i * d + j]);
            if (w == cnum{0.0, 0.0}) continue;
            for (std::size_t b = 0; b < d; ++b)
                m.at(b, i) += static_cast<double>(d) * w * res.amps[j * d + b];
        }
    }
    return m;
}

// ── Corrections ──────────────────────────────────────────────────────────

// Find the Weyl word w with materialize(w)·M_outcome = c·1, c real > 0.
// Exhaustive over (a, b) ∈ Z_d²; the phase power is snapped to the phase
// group afterwards. A solution always exists for a Bell-state resource, so
// failure to find one signals an implementation bug.
inline WeylWord solve_correction(std::size_t d, const BellIndex& resource,
                                 const BellIndex& outcome) {
    const OperatorMat m = conditional_map(d, resource, outcome);
    const std::size_t order = WeylWord::phase_order(d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const OperatorMat t = materialize(WeylWord(d, a, b, 0)) * m;
            const cnum c = t.at(0, 0);
            if (std::abs(std::abs(c) - 1.0) > 1e-6) continue;
            bool proportional = true;
            for (std::size_t i = 0; i < d && proportional; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    const cnum expect = (i == j) ? c : cnum{0.0, 0.0};
                    if (std::abs(t.at(i, j) - expect) > 1e-9) {
                        proportional = false;
                        break;
                    }
                }
            if (!proportional) continue;
            // phase^p · c must be real positive: p = −arg(c) in group steps
            const double step = 2.0 * M_PI / static_cast<double>(order);
            long long p = std::llround(-std::arg(c) / step);
            p %= static_cast<long long>(order);
            if (p < 0) p += static_cast<long long>(order);
            const cnum fixed = omega_pow(order, p) * c;
            if (std::abs(fixed - cnum{1.0, 0.0}) > 1e-9)
                throw std::runtime_error("solve_correction: residual phase is not in the phase group");
            return WeylWord(d, a, b, static_cast<std::size_t>(p));
        }
    throw std::runtime_error("solve_correction: no Weyl correction found (implementation bug)");
}

// Every correction for one resource, keyed by flat outcome index.
inline CorrectionTable solve_correction_table(std::size_t d, const BellIndex& resource) {
    CorrectionTable table{d, resource, {}};
    for (std::size_t k = 1; k <= d * d; ++k)
        table.entries.emplace(k, solve_correction(d, resource, BellIndex::from_flat(d, k)));
    return table;
}

// The classical correction tables, entered as written and normalized into
// canonical ω^p X^a Z^b form by the word algebra.
//
//   d = 2 (resource B(1,1)):  iσ₂, σ₁, −σ₃, −1₂
//   d = 3 (resource B(1,1)):  Z²X², X², ZX², ω²Z²X, ω²X, ω²ZX, ωZ², ω1₃, ωZ
inline CorrectionTable paper_correction_table(std::size_t d) {
    CorrectionTable table{d, BellIndex(d, 1, 1), {}};
    if (d == 2) {
        const WeylWord i2 = wphase(2, 1) * wphase(2, 1);  // −1
        table.entries.emplace(1, i2 * wx(2) * wz(2));     // iσ₂ = −XZ
        table.entries.emplace(2, wx(2));                  // σ₁
        table.entries.emplace(3, i2 * wz(2));             // −σ₃
        table.entries.emplace(4, i2);                     // −1₂
    } else if (d == 3) {
        table.entries.emplace(1, wz(3, 2) * wx(3, 2));
        table.entries.emplace(2, wx(3, 2));
        table.entries.emplace(3, wz(3, 1) * wx(3, 2));
        table.entries.emplace(4, wphase(3, 2) * wz(3, 2) * wx(3, 1));
        table.entries.emplace(5, wphase(3, 2) * wx(3, 1));
        table.entries.emplace(6, wphase(3, 2) * wz(3, 1) * wx(3, 1));
        table.entries.emplace(7, wphase(3, 1) * wz(3, 2));
        table.entries.emplace(8, wphase(3, 1));
        table.entries.emplace(9, wphase(3, 1) * wz(3, 1));
    } else {
        throw std::invalid_argument("paper_correction_table: only d = 2 and d = 3 have preset tables");
    }
    return table;
}

// ── Protocol runs ────────────────────────────────────────────────────────

namespace detail {

inline std::string describe_cluster(const ObservableSpec& spec,
                                    const std::vector<std::size_t>& cluster) {
    std::ostringstream os;
    os << "eigenvalue " << spec.eigenvalues[cluster.front() - 1] << " is shared by Bell states {";
    for (std::size_t i = 0; i < cluster.size(); ++i) os << (i ? ", " : "") << cluster[i];
    os << "}";
    return os.str();
}

// Flat Bell index whose assigned eigenvalue matches the measured one.
inline std::size_t message_for_eigenvalue(const ObservableSpec& spec, double eigenvalue) {
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        const double gap = std::abs(spec.eigenvalues[k] - eigenvalue);
        if (gap < best_gap) {
            best_gap = gap;
            best = k + 1;
        }
    }
    if (best_gap > GROUP_TOL)
        throw std::runtime_error("run_teleport: measured eigenvalue matches no Bell state");
    return best;
}

}  // namespace detail

// One full protocol run. Requires an observable with simple eigenvalues;
// a degenerate spectrum is rejected up front with the offending cluster
// named, because measuring it cannot identify a Bell branch.
inline TeleportReport run_teleport(const ProtocolConfig& cfg) {
    validate_input_amps(cfg.d, cfg.input_amps);
    if (cfg.observable.d != cfg.d)
        throw std::invalid_argument("run_teleport: observable dimension mismatch");
    for (const auto& cluster : eigenvalue_clusters(cfg.observable))
        if (cluster.size() > 1)
            throw std::invalid_argument("run_teleport: degenerate observable rejected: " +
                                        detail::describe_cluster(cfg.observable, cluster));

    const StateVec psi3 = three_particle_state(cfg);
    const SpectralForm spectral = eig_hermitian(build_observable(cfg.observable));
    MeasurementOutcome outcome = measure(psi3, spectral, {0, 1}, cfg.seed);

    const std::size_t flat = detail::message_for_eigenvalue(cfg.observable, outcome.eigenvalue);
    const BellIndex out_idx = BellIndex::from_flat(cfg.d, flat);

    // The post state factors as |B_k⟩ ⊗ |cond⟩; peel off Bob's pure state.
    std::vector<cnum> cond = contract_bell(outcome.post_state, out_idx);
    double n2 = 0.0;
    for (cnum z : cond) n2 += std::norm(z);
    if (n2 < 1.0 - 1e-6)
        throw std::runtime_error("run_teleport: post state does not factor over the Bell branch");
    const double inv = 1.0 / std::sqrt(n2);
    for (cnum& z : cond) z *= inv;

    const WeylWord correction = solve_correction(cfg.d, cfg.resource, out_idx);
    const StateVec bob =
        global_phase_canonical(apply(materialize(correction), StateVec({cfg.d}, std::move(cond))));

    const StateVec input({cfg.d}, cfg.input_amps);
    const double fid = fidelity(input, bob);
    return TeleportReport{cfg,      std::move(outcome),       ClassicalMessage{flat}, correction,
                          bob,      fid,                      fid > SUCCESS_FIDELITY};
}

// ── The degeneracy hazard, quantified ────────────────────────────────────

struct OutcomeAnalysis {
    double eigenvalue;
    double probability;
    bool degenerate;
    std::vector<std::size_t> bell_cluster;  // flat indices sharing this eigenvalue
    double bob_purity;                      // tr(ρ_B²) after Lüders reduction
    WeylWord table_correction;              // fixed table entry (first of the cluster)
    double fidelity_table;
    WeylWord best_correction;               // best fixed Weyl word, exhaustive
    double fidelity_best;
};

struct DegenerateDemoReport {
    ProtocolConfig config;
    std::vector<OutcomeAnalysis> outcomes;
    double average_fidelity_table;
    double average_fidelity_best;
    ObservableSpec control_observable;  // non-degenerate control on the same input
    double control_fidelity;            // always 1 within tolerance
};

// Run the protocol with a degenerate observable and report, per outcome,
// how mixed Bob's particle is and how well the best fixed Weyl correction
// can do. The per-outcome states come from the exact Born distribution, so
// the report is deterministic. The control row repeats the computation
// with the non-degenerate (3, 1, −1, −3) observable.
inline DegenerateDemoReport run_degenerate_demo(const ProtocolConfig& cfg) {
    if (cfg.d != 2) throw std::invalid_argument("run_degenerate_demo: requires d = 2");
    validate_input_amps(cfg.d, cfg.input_amps);
    const StateVec input({cfg.d}, cfg.input_amps);
    const StateVec psi3 = three_particle_state(cfg);
    const SpectralForm spectral = eig_hermitian(build_observable(cfg.observable));
    const CorrectionTable table = paper_correction_table(2);
    const auto clusters = eigenvalue_clusters(cfg.observable);

    auto cluster_for = [&](double eigenvalue) -> std::vector<std::size_t> {
        for (const auto& c : clusters)
            if (std::abs(cfg.observable.eigenvalues[c.front() - 1] - eigenvalue) <= GROUP_TOL)
                return c;
        throw std::runtime_error("run_degenerate_demo: eigenvalue matches no cluster");
    };

    DegenerateDemoReport report{cfg, {}, 0.0, 0.0, good_d2_spec(), 0.0};
    for (std::size_t k = 0; k < spectral.outcome_count(); ++k) {
        const OperatorMat& proj = spectral.projectors[k];
        std::vector<cnum> projected = apply_on_subsystems(proj, psi3.dims, psi3.amps, {0, 1});
        double p = 0.0;
        for (cnum z : projected) p += std::norm(z);
        if (p < SAMPLING_ZERO) continue;
        const double inv = 1.0 / std::sqrt(p);
        for (cnum& z : projected) z *= inv;
        const StateVec post(psi3.dims, std::move(projected));
        const DensityMat rho_b = bob_marginal(post, 2);

        const std::vector<std::size_t> cluster = cluster_for(spectral.eigenvalues[k]);
        const WeylWord table_word = table.entries.at(cluster.front());
        const double fid_table = fidelity(input, evolve(materialize(table_word), rho_b));

        WeylWord best_word = WeylWord::identity_word(2);
        double fid_best = -1.0;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                const WeylWord w(2, a, b, 0);
                const double f = fidelity(input, evolve(materialize(w), rho_b));
                if (f > fid_best) {
                    fid_best = f;
                    best_word = w;
                }
            }

        report.outcomes.push_back(OutcomeAnalysis{spectral.eigenvalues[k], p,
                                                  spectral.multiplicities[k] > 1, cluster,
                                                  purity(rho_b), table_word, fid_table, best_word,
                                                  fid_best});
        report.average_fidelity_table += p * fid_table;
        report.average_fidelity_best += p * fid_best;
    }

    // Control: the same input through the non-degenerate observable.
    ProtocolConfig control = cfg;
    control.observable = report.control_observable;
    double control_avg = 0.0;
    const SpectralForm control_spectral = eig_hermitian(build_observable(control.observable));
    const auto dist = outcome_distribution(psi3, control_spectral, {0, 1});
    for (std::size_t k = 0; k < dist.size(); ++k) {
        std::vector<cnum> projected =
            apply_on_subsystems(control_spectral.projectors[k], psi3.dims, psi3.amps, {0, 1});
        double p = 0.0;
        for (cnum z : projected) p += std::norm(z);
        const double inv = 1.0 / std::sqrt(p);
        for (cnum& z : projected) z *= inv;
        const StateVec post(psi3.dims, std::move(projected));
        const std::size_t flat = detail::message_for_eigenvalue(control.observable, dist[k].first);
        const WeylWord w = solve_correction(2, cfg.resource, BellIndex::from_flat(2, flat));
        control_avg += p * fidelity(input, evolve(materialize(w), bob_marginal(post, 2)));
    }
    report.control_fidelity = control_avg;
    return report;
}

}  // namespace gbt
