#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "gbt/gbt.hpp"
#include "helpers.hpp"

using namespace gbt;
using gbt::test::max_diff;

namespace {

// Measuring the protocol observable on input ⊗ resource. Returns the
// three-particle state for the d = 2 preset input (0.6, 0.8).
StateVec formula1_state() {
    return three_particle_state(preset_d2({cnum{0.6, 0}, cnum{0.8, 0}}, 0));
}

}  // namespace

TEST_CASE("measuring sigma3 on |0> is deterministic") {
    const SpectralForm sf = eig_hermitian(pauli(3));
    const StateVec k0 = StateVec::basis({2}, 0);
    const MeasurementOutcome out = measure(k0, sf, {0}, 42);
    REQUIRE(out.eigenvalue == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(out.probability == Catch::Approx(1.0).margin(1e-12));
    REQUIRE_FALSE(out.degenerate);
    REQUIRE(max_diff(out.post_state, k0) < 1e-12);

    const auto dist = outcome_distribution(k0, sf, {0});
    REQUIRE(dist.size() == 2);
    REQUIRE(dist[0].first == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(dist[0].second == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(dist[1].second == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("protocol observable on the three-particle state: uniform quarters, factoring branches") {
    const StateVec psi3 = formula1_state();
    const SpectralForm sf = eig_hermitian(build_observable(good_d2_spec()));
    const auto dist = outcome_distribution(psi3, sf, {0, 1});
    REQUIRE(dist.size() == 4);
    for (const auto& [eigenvalue, p] : dist) REQUIRE(p == Catch::Approx(0.25).margin(1e-12));

    // every eigenvalue occurs for some seed, and the post state factors as
    // |B_k⟩ ⊗ (conditional B state)
    const ProtocolConfig cfg = preset_d2({cnum{0.6, 0}, cnum{0.8, 0}}, 0);
    const std::vector<BellBranch> branches = expand_in_bell_branches(cfg);
    std::map<long, bool> seen;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const MeasurementOutcome out = measure(psi3, sf, {0, 1}, seed);
        REQUIRE(out.probability == Catch::Approx(0.25).margin(1e-12));
        REQUIRE_FALSE(out.degenerate);
        const long rounded = std::lround(out.eigenvalue);
        seen[rounded] = true;
        // eigenvalues (3,1,-1,-3) map to flat Bell indices (1,2,3,4)
        const std::size_t flat = static_cast<std::size_t>((3 - rounded) / 2 + 1);
        const StateVec expect = kron(bell_state(BellIndex::from_flat(2, flat)),
                                     branches[flat - 1].conditional);
        REQUIRE(gbt::test::phase_insensitive_diff(out.post_state, expect) < 1e-10);
    }
    REQUIRE(seen.size() == 4);
}

TEST_CASE("degenerate outcome preserves the superposition inside the eigenspace") {
    // α B(0,1) + β B(1,0) is a 0-eigenvector of σ₁⊗σ₁ + σ₃⊗σ₃; measuring
    // that observable must return it unchanged, not collapse it to one
    // Bell state.
    const double alpha = 0.6, beta = 0.8;
    const StateVec phi2 = bell_state(BellIndex(2, 0, 1));
    const StateVec phi3 = bell_state(BellIndex(2, 1, 0));
    std::vector<cnum> amps(4);
    for (std::size_t t = 0; t < 4; ++t) amps[t] = alpha * phi2.amps[t] + beta * phi3.amps[t];
    const StateVec input({2, 2}, amps);

    const SpectralForm sf = eig_hermitian(build_observable(op13_spec()));
    REQUIRE(sf.degenerate());
    const auto dist = outcome_distribution(input, sf, {0, 1});
    REQUIRE(dist[1].first == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(dist[1].second == Catch::Approx(1.0).margin(1e-12));

    for (std::uint64_t seed : {0ULL, 7ULL, 123ULL}) {
        const MeasurementOutcome out = measure(input, sf, {0, 1}, seed);
        REQUIRE(out.eigenvalue == Catch::Approx(0.0).margin(1e-10));
        REQUIRE(out.degenerate);
        REQUIRE(max_diff(out.post_state, input) < 1e-10);
    }
}

TEST_CASE("outcome distribution of the hazard operator on the three-particle state") {
    // branch weights 1/4 each; eigenvalue 0 collects two branches
    const SpectralForm sf = eig_hermitian(build_observable(op13_spec()));
    const auto dist = outcome_distribution(formula1_state(), sf, {0, 1});
    REQUIRE(dist.size() == 3);
    REQUIRE(dist[0].first == Catch::Approx(2.0).margin(1e-10));
    REQUIRE(dist[0].second == Catch::Approx(0.25).margin(1e-12));
    REQUIRE(dist[1].first == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(dist[1].second == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(dist[2].first == Catch::Approx(-2.0).margin(1e-10));
    REQUIRE(dist[2].second == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("qutrit protocol observable gives nine uniform outcomes") {
    SeededRng rng(701);
    const ProtocolConfig cfg = preset_d3(rng.amplitudes(3), 0);
    const StateVec psi3 = three_particle_state(cfg);
    const SpectralForm sf = eig_hermitian(build_observable(cfg.observable));
    const auto dist = outcome_distribution(psi3, sf, {0, 1});
    REQUIRE(dist.size() == 9);
    double sum = 0.0;
    for (const auto& [eigenvalue, p] : dist) {
        REQUIRE(p == Catch::Approx(1.0 / 9.0).margin(1e-12));
        sum += p;
    }
    REQUIRE(sum == Catch::Approx(1.0).margin(TOL_NORM));
}

TEST_CASE("born probabilities sum to one on random states", "[property]") {
    SeededRng rng(702);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVec s = random_state(rng, {2, 2, 2});
        const OperatorMat h = gbt::test::random_hermitian(rng, 4);
        const SpectralForm sf = eig_hermitian(h);
        const auto dist = outcome_distribution(s, sf, {0, 1});
        double sum = 0.0;
        for (const auto& [eigenvalue, p] : dist) sum += p;
        REQUIRE(sum == Catch::Approx(1.0).margin(TOL_NORM));
    }
}

TEST_CASE("fixed seed reproduces the outcome bit for bit") {
    const StateVec psi3 = formula1_state();
    const SpectralForm sf = eig_hermitian(build_observable(good_d2_spec()));
    for (std::uint64_t seed : {1ULL, 99ULL, 0xdeadbeefULL}) {
        const MeasurementOutcome a = measure(psi3, sf, {0, 1}, seed);
        const MeasurementOutcome b = measure(psi3, sf, {0, 1}, seed);
        REQUIRE(a.eigenvalue == b.eigenvalue);
        REQUIRE(a.probability == b.probability);
        REQUIRE(a.post_state.amps == b.post_state.amps);
    }
}

TEST_CASE("empirical frequencies track the exact distribution", "[property]") {
    const StateVec psi3 = formula1_state();
    const SpectralForm sf = eig_hermitian(build_observable(good_d2_spec()));
    const auto dist = outcome_distribution(psi3, sf, {0, 1});
    const std::size_t trials = 10000;
    std::map<long, std::size_t> counts;
    for (std::uint64_t seed = 0; seed < trials; ++seed)
        ++counts[std::lround(measure(psi3, sf, {0, 1}, derive_seed(2024, seed)).eigenvalue)];
    for (const auto& [eigenvalue, p] : dist) {
        const double expect = p * trials;
        const double sigma = std::sqrt(p * (1.0 - p) * trials);
        REQUIRE(std::abs(double(counts[std::lround(eigenvalue)]) - expect) <= 4.0 * sigma);
    }
}

TEST_CASE("post state of a non-degenerate measurement is an eigenvector", "[property]") {
    SeededRng rng(703);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVec s = random_state(rng, {3, 3});
        const OperatorMat h = gbt::test::random_hermitian(rng, 9);
        const SpectralForm sf = eig_hermitian(h);
        const MeasurementOutcome out = measure(s, sf, {0, 1}, 5000 + trial);
        if (out.degenerate) continue;  // random spectra are simple in practice
        const OperatorMat q = embed(h, s.dims, {0, 1});
        const std::vector<cnum> qpost = matvec(q, out.post_state.amps);
        for (std::size_t t = 0; t < qpost.size(); ++t)
            REQUIRE(std::abs(qpost[t] - out.eigenvalue * out.post_state.amps[t]) < TOL_MAT);
    }
}

TEST_CASE("bob_marginal") {
    SECTION("after a non-degenerate outcome it is the rank-1 branch state") {
        const ProtocolConfig cfg = preset_d2({cnum{0.6, 0}, cnum{0.8, 0}}, 0);
        const StateVec psi3 = three_particle_state(cfg);
        const SpectralForm sf = eig_hermitian(build_observable(cfg.observable));
        const std::vector<BellBranch> branches = expand_in_bell_branches(cfg);
        const MeasurementOutcome out = measure(psi3, sf, {0, 1}, 11);
        const std::size_t flat = static_cast<std::size_t>((3 - std::lround(out.eigenvalue)) / 2 + 1);
        const DensityMat rho = bob_marginal(out.post_state, 2);
        REQUIRE(purity(rho) == Catch::Approx(1.0).margin(1e-10));
        REQUIRE(fidelity(branches[flat - 1].conditional, rho) == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("after the degenerate outcome Bob holds the maximally mixed state") {
        // with real input (0.6, 0.8) the two 0-branch conditionals are
        // orthogonal, so the equal mixture is 1₂/2 with purity 1/2
        const StateVec psi3 = formula1_state();
        const SpectralForm sf = eig_hermitian(build_observable(op13_spec()));
        std::vector<cnum> projected =
            apply_on_subsystems(sf.projectors[1], psi3.dims, psi3.amps, {0, 1});
        double n2 = 0.0;
        for (cnum z : projected) n2 += std::norm(z);
        for (cnum& z : projected) z /= std::sqrt(n2);
        const DensityMat rho = bob_marginal(StateVec(psi3.dims, projected), 2);
        REQUIRE(purity(rho) == Catch::Approx(0.5).margin(1e-10));
        REQUIRE(max_abs(as_operator(rho) - as_operator(DensityMat::maximally_mixed(2))) < 1e-10);
    }
    SECTION("degeneracy hazard: mixed only for the degenerate observable", "[property]") {
        const StateVec psi3 = formula1_state();
        const SpectralForm bad = eig_hermitian(build_observable(op13_spec()));
        const SpectralForm good = eig_hermitian(build_observable(good_d2_spec()));
        // degenerate outcome: purity well below 1
        std::vector<cnum> projected =
            apply_on_subsystems(bad.projectors[1], psi3.dims, psi3.amps, {0, 1});
        double n2 = 0.0;
        for (cnum z : projected) n2 += std::norm(z);
        for (cnum& z : projected) z /= std::sqrt(n2);
        REQUIRE(purity(bob_marginal(StateVec(psi3.dims, projected), 2)) < 1.0 - 1e-3);
        // every outcome of the non-degenerate observable: purity 1
        for (std::size_t k = 0; k < good.outcome_count(); ++k) {
            std::vector<cnum> pk = apply_on_subsystems(good.projectors[k], psi3.dims, psi3.amps, {0, 1});
            double m2 = 0.0;
            for (cnum z : pk) m2 += std::norm(z);
            for (cnum& z : pk) z /= std::sqrt(m2);
            REQUIRE(purity(bob_marginal(StateVec(psi3.dims, pk), 2)) > 1.0 - TOL_MAT);
        }
    }
    SECTION("bad index throws") {
        REQUIRE_THROWS_AS(bob_marginal(formula1_state(), 3), std::invalid_argument);
    }
}

TEST_CASE("measurement error paths") {
    const StateVec k0 = StateVec::basis({2}, 0);
    SECTION("observable does not match the selected subsystems") {
        const SpectralForm sf = eig_hermitian(gbt::test::random_hermitian(
            *std::make_unique<SeededRng>(704), 3));
        REQUIRE_THROWS_AS(measure(k0, sf, {0}, 0), std::invalid_argument);
    }
    SECTION("inconsistent spectral form: projectors that annihilate the state") {
        SpectralForm sf;
        sf.dim = 2;
        sf.eigenvalues = {1.0};
        sf.projectors = {basis_ketbra(2, 1, 1)};  // |1⟩⟨1| only, misses |0⟩
        sf.multiplicities = {1};
        REQUIRE_THROWS_AS(measure(k0, sf, {0}, 0), std::runtime_error);
    }
    SECTION("subsystem index out of range") {
        const SpectralForm sf = eig_hermitian(pauli(3));
        REQUIRE_THROWS_AS(measure(k0, sf, {1}, 0), std::invalid_argument);
    }
}
