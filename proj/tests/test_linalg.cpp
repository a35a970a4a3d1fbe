#include <catch2/catch_amalgamated.hpp>

#include "gbt/gbt.hpp"
#include "helpers.hpp"

using namespace gbt;
using gbt::test::max_diff;

namespace {
const double INV_SQRT2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("roots of unity satisfy the defining identities") {
    for (std::size_t d = 2; d <= 8; ++d) {
        const std::vector<cnum> roots = roots_of_unity(d);
        REQUIRE(roots[0] == cnum{1.0, 0.0});
        cnum pow{1.0, 0.0};
        for (std::size_t r = 0; r < d; ++r) {
            REQUIRE(std::abs(roots[r] - pow) < 1e-12);
            pow *= roots[1];
        }
    }
    // 1 + ω + ω² = 0 and ω̄ = ω² at d = 3
    const std::vector<cnum> r3 = roots_of_unity(3);
    REQUIRE(std::abs(r3[0] + r3[1] + r3[2]) < 1e-15);
    REQUIRE(std::abs(std::conj(r3[1]) - r3[2]) < 1e-15);
}

TEST_CASE("StateVec validates its invariants") {
    REQUIRE_THROWS_AS(StateVec({2}, {cnum{1.0, 0.0}, cnum{1.0, 0.0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(StateVec({2}, {cnum{1.0, 0.0}}), std::invalid_argument);
    REQUIRE_NOTHROW(StateVec({2, 2}, std::vector<cnum>(4, cnum{0.5, 0.0})));
}

TEST_CASE("kron places basis kets by the big-endian convention") {
    // |0⟩ ⊗ |1⟩ → (0, 1, 0, 0)
    const StateVec k0 = StateVec::basis({2}, 0);
    const StateVec k1 = StateVec::basis({2}, 1);
    const StateVec prod = kron(k0, k1);
    REQUIRE(prod.dims == std::vector<std::size_t>{2, 2});
    REQUIRE(max_diff(prod.amps, {cnum{0, 0}, cnum{1, 0}, cnum{0, 0}, cnum{0, 0}}) == 0.0);
}

TEST_CASE("kron of identities is the identity") {
    REQUIRE(max_diff(kron(OperatorMat::identity(2), OperatorMat::identity(2)),
                     OperatorMat::identity(4)) == 0.0);
}

TEST_CASE("sigma3 x sigma3 fixes the first Bell state with eigenvalue +1") {
    const StateVec phi1({2, 2}, {cnum{INV_SQRT2, 0}, cnum{0, 0}, cnum{0, 0}, cnum{INV_SQRT2, 0}});
    const StateVec out = apply(kron(pauli(3), pauli(3)), phi1);
    REQUIRE(max_diff(out, phi1) < 1e-15);
}

TEST_CASE("dagger") {
    SECTION("sigma2 is Hermitian") {
        REQUIRE(max_diff(dagger(pauli(2)), pauli(2)) == 0.0);
    }
    SECTION("Z dagger equals Z squared at d = 3") {
        const OperatorMat z = weyl_z(3);
        REQUIRE(max_diff(dagger(z), z * z) < 1e-14);
    }
    SECTION("(XZ) dagger equals Z^2 X^2 at d = 3") {
        const OperatorMat x = weyl_x(3), z = weyl_z(3);
        REQUIRE(max_diff(dagger(x * z), (z * z) * (x * x)) < 1e-14);
    }
}

TEST_CASE("inner products") {
    const StateVec phi1({2, 2}, {cnum{INV_SQRT2, 0}, cnum{0, 0}, cnum{0, 0}, cnum{INV_SQRT2, 0}});
    const StateVec phi2({2, 2}, {cnum{INV_SQRT2, 0}, cnum{0, 0}, cnum{0, 0}, cnum{-INV_SQRT2, 0}});
    REQUIRE(std::abs(inner(phi1, phi1) - cnum{1.0, 0.0}) < 1e-15);
    REQUIRE(std::abs(inner(phi1, phi2)) < 1e-15);

    SECTION("conjugate linear in the first argument") {
        const StateVec a({2}, {cnum{0, 1}, cnum{0, 0}});   // i|0⟩
        const StateVec b({2}, {cnum{1, 0}, cnum{0, 0}});
        REQUIRE(std::abs(inner(a, b) - cnum{0.0, -1.0}) < 1e-15);
    }
    SECTION("dimension mismatch throws") {
        const StateVec a({2}, {cnum{1, 0}, cnum{0, 0}});
        REQUIRE_THROWS_AS(inner(a, phi1), std::invalid_argument);
    }
    SECTION("distinct qutrit Bell states are orthogonal") {
        REQUIRE(std::abs(inner(bell_state(BellIndex(3, 0, 1)), bell_state(BellIndex(3, 1, 1)))) <
                1e-15);
    }
}

TEST_CASE("partial trace") {
    SECTION("either qubit of a maximally entangled pair is maximally mixed") {
        const StateVec phi1({2, 2},
                            {cnum{INV_SQRT2, 0}, cnum{0, 0}, cnum{0, 0}, cnum{INV_SQRT2, 0}});
        for (std::size_t keep = 0; keep < 2; ++keep) {
            const DensityMat red = partial_trace(outer(phi1), {2, 2}, keep);
            REQUIRE(max_abs(as_operator(red) -
                            as_operator(DensityMat::maximally_mixed(2))) < 1e-15);
        }
    }
    SECTION("product state reduces to its factor") {
        const StateVec prod = kron(StateVec::basis({2}, 0), StateVec::basis({2}, 1));
        const DensityMat red = partial_trace(outer(prod), {2, 2}, 0);
        REQUIRE(std::abs(red.at(0, 0) - cnum{1.0, 0.0}) < 1e-15);
        REQUIRE(std::abs(red.at(1, 1)) < 1e-15);
    }
    SECTION("either qutrit of the fifth qutrit Bell state is maximally mixed") {
        const StateVec psi5 = bell_state(BellIndex(3, 1, 1));
        for (std::size_t keep = 0; keep < 2; ++keep) {
            const DensityMat red = partial_trace(outer(psi5), {3, 3}, keep);
            REQUIRE(max_abs(as_operator(red) -
                            as_operator(DensityMat::maximally_mixed(3))) < 1e-14);
        }
    }
    SECTION("bad subsystem index throws") {
        const StateVec prod = kron(StateVec::basis({2}, 0), StateVec::basis({2}, 1));
        REQUIRE_THROWS_AS(partial_trace(outer(prod), {2, 2}, 2), std::invalid_argument);
    }
    SECTION("tracing a product of density matrices recovers one factor") {
        SeededRng rng(401);
        for (int trial = 0; trial < 20; ++trial) {
            const DensityMat a = gbt::test::random_density(rng, 3);
            const DensityMat b = gbt::test::random_density(rng, 2);
            const DensityMat red = partial_trace(kron(a, b), {3, 2}, 0);
            REQUIRE(max_abs(as_operator(red) - as_operator(a)) < 1e-12);
        }
    }
}

TEST_CASE("fidelity") {
    const StateVec k0 = StateVec::basis({2}, 0);
    const StateVec k1 = StateVec::basis({2}, 1);
    REQUIRE(fidelity(k0, outer(k0)) == 1.0);
    REQUIRE(fidelity(k0, outer(k1)) == 0.0);

    SECTION("plus state against the maximally mixed state gives 1/2") {
        const StateVec plus({2}, {cnum{INV_SQRT2, 0}, cnum{INV_SQRT2, 0}});
        REQUIRE(std::abs(fidelity(plus, DensityMat::maximally_mixed(2)) - 0.5) < 1e-15);
    }
    SECTION("pure state against its own projector for random states") {
        SeededRng rng(402);
        for (int trial = 0; trial < 25; ++trial) {
            const StateVec s = random_state(rng, {5});
            REQUIRE(std::abs(fidelity(s, outer(s)) - 1.0) < 1e-12);
        }
    }
    SECTION("dimension mismatch throws") {
        REQUIRE_THROWS_AS(fidelity(k0, DensityMat::maximally_mixed(3)), std::invalid_argument);
    }
}

TEST_CASE("global phase canonicalization") {
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    SECTION("removes a root-of-unity prefactor") {
        const cnum w = omega_pow(3, 1);
        std::vector<cnum> amps{w * inv_sqrt3, w * inv_sqrt3, w * inv_sqrt3};
        const StateVec canon = global_phase_canonical(StateVec({3}, amps));
        for (cnum a : canon.amps) REQUIRE(std::abs(a - cnum{inv_sqrt3, 0.0}) < 1e-15);
    }
    SECTION("flips a negative basis ket") {
        const StateVec s({2}, {cnum{0, 0}, cnum{-1, 0}});
        REQUIRE(max_diff(global_phase_canonical(s), StateVec::basis({2}, 1)) < 1e-15);
    }
    SECTION("divides by i") {
        // (i|0⟩ − |1⟩)/√2 → (|0⟩ + i|1⟩)/√2
        const StateVec s({2}, {cnum{0, INV_SQRT2}, cnum{-INV_SQRT2, 0}});
        const StateVec expect({2}, {cnum{INV_SQRT2, 0}, cnum{0, INV_SQRT2}});
        REQUIRE(max_diff(global_phase_canonical(s), expect) < 1e-15);
    }
    SECTION("skips leading zero amplitudes") {
        const StateVec s({2}, {cnum{0, 0}, cnum{0, -1}});
        REQUIRE(max_diff(global_phase_canonical(s), StateVec::basis({2}, 1)) < 1e-15);
    }
}

TEST_CASE("kron properties on random inputs") {
    SeededRng rng(403);
    SECTION("associativity") {
        for (int trial = 0; trial < 10; ++trial) {
            const StateVec a = random_state(rng, {2});
            const StateVec b = random_state(rng, {3});
            const StateVec c = random_state(rng, {2});
            REQUIRE(max_diff(kron(kron(a, b), c).amps, kron(a, kron(b, c)).amps) < 1e-15);
        }
    }
    SECTION("mixed product: (A ⊗ B)(x ⊗ y) = Ax ⊗ By for unitary A, B") {
        for (int trial = 0; trial < 10; ++trial) {
            const OperatorMat a = materialize(WeylWord(3, 1, 2, 1));
            const OperatorMat b = materialize(WeylWord(2, 1, 1, 3));
            const StateVec x = random_state(rng, {3});
            const StateVec y = random_state(rng, {2});
            REQUIRE(max_diff(apply(kron(a, b), kron(x, y)), kron(apply(a, x), apply(b, y))) <
                    1e-14);
        }
    }
}

TEST_CASE("subsystem application matches explicit embedding") {
    SeededRng rng(404);
    const StateVec s = random_state(rng, {2, 3, 2});
    const OperatorMat op = gbt::test::random_matrix(rng, 4);  // acts on factors {0, 2}
    const std::vector<cnum> direct = apply_on_subsystems(op, s.dims, s.amps, {0, 2});
    const OperatorMat embedded = embed(op, s.dims, {0, 2});
    REQUIRE(max_diff(direct, matvec(embedded, s.amps)) < 1e-13);
}
