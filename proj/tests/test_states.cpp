// Copyright 2026 The qmetro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmetro/fisher.hpp"
#include "qmetro/states.hpp"

using namespace qmetro;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("GHZ, Dicke and polarized vectors", "[states]") {
    const QuantumState g = ghz(4, Representation::symmetric(4));
    REQUIRE(g.dim() == 5);
    CHECK_THAT(g.vector()(0).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(g.vector()(4).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
    CHECK(std::abs(g.vector()(2)) < 1e-15);
    CHECK(g.label() == "GHZ(4)");

    const QuantumState dk = dicke(4, 2, Representation::symmetric(4));
    CHECK(std::abs(dk.vector()(2) - 1.0) < 1e-15);
    const QuantumState df = dicke(4, 2, Representation::full(4));
    // Six basis states with two excitations, amplitude 1/sqrt(6) each.
    int support = 0;
    for (Eigen::Index b = 0; b < 16; ++b) {
        if (std::abs(df.vector()(b)) > 1e-12) {
            ++support;
            CHECK_THAT(std::abs(df.vector()(b)), WithinAbs(1.0 / std::sqrt(6.0), 1e-14));
        }
    }
    CHECK(support == 6);
    CHECK_THROWS_AS(dicke(4, 5, Representation::symmetric(4)), InvalidArgument);

    const QuantumState px = polarized(3, Axis::x, Representation::full(3));
    CHECK_THAT(expectation(px, build_collective(Axis::x, px.rep())), WithinAbs(1.5, 1e-14));
}

TEST_CASE("x-oriented GHZ in both representations", "[states]") {
    for (Representation rep : {Representation::symmetric(3), Representation::full(3)}) {
        const QuantumState g = ghz(3, rep, Axis::x);
        CHECK_THAT(qfi(g, build_collective(Axis::x, rep)).value, WithinAbs(9.0, 1e-10));
        CHECK_THAT(qfi(g, build_collective(Axis::z, rep)).value, WithinAbs(3.0, 1e-10));
    }
}

TEST_CASE("coherent state overlaps", "[states]") {
    const int n = 6;
    const Representation rep = Representation::symmetric(n);
    const QuantumState a = coherent(n, 0.0, 0.0, rep);
    CHECK(max_abs(a.vector() - polarized(n, Axis::z, rep).vector()) < 1e-14);
    const QuantumState b = coherent(n, 0.9, 0.0, rep);
    const double overlap = std::norm(a.vector().dot(b.vector()));
    CHECK_THAT(overlap, WithinAbs(std::pow(std::cos(0.45), 2 * n), 1e-13));
    const QuantumState c = coherent(n, std::numbers::pi / 2, std::numbers::pi / 2, Representation::full(n));
    CHECK_THAT(expectation(c, build_collective(Axis::y, c.rep())), WithinAbs(3.0, 1e-12));
}

TEST_CASE("permutationally invariant singlet", "[states]") {
    const QuantumState s = singlet_pi(4);
    CHECK(s.dim() == 16);
    CHECK_THAT(s.matrix().trace().real(), WithinAbs(1.0, 1e-12));
    // Uniform mixture over the two-dimensional singlet subspace (independent numpy oracle).
    CHECK_THAT(purity(s), WithinAbs(0.5, 1e-12));
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
        const CollectiveOperator &j = build_collective(a, s.rep());
        CHECK_THAT(expectation(s, SparseMatrix(j.matrix * j.matrix)), WithinAbs(0.0, 1e-12));
    }
    CHECK_THROWS_AS(singlet_pi(3), InvalidArgument);
    CHECK_THROWS(singlet_pi(10));
}

TEST_CASE("squeezing ground state matches dense diagonalization", "[states]") {
    for (int n : {2, 6, 10, 40}) {
        for (double lambda : {0.0, 1e-3, 0.5, 3.0, 200.0}) {
            const GroundStateResult tri = squeezed_ground({n, lambda}, GroundSolver::Tridiagonal);
            const GroundStateResult den = squeezed_ground({n, lambda}, GroundSolver::Dense);
            CHECK_THAT(tri.energy, WithinAbs(den.energy, 1e-10 * std::max(1.0, std::abs(den.energy))));
            if (!den.degenerate) {
                const double fid = std::norm(tri.state.vector().dot(den.state.vector()));
                CHECK_THAT(fid, WithinAbs(1.0, 1e-9));
            }
        }
    }
}

TEST_CASE("squeezing ground state against frozen numpy values", "[states]") {
    // numpy.linalg.eigh on the dense (N+1)x(N+1) Hamiltonian.
    struct Case {
        int n;
        double lambda;
        double energy;
        double polarization;
    };
    for (const Case c : {Case{10, 0.5, -1.625751454403123, 0.850458013443078},
                         Case{100, 2.0, -93.89029078433504, 0.9734540506898768},
                         Case{20, 1e-3, -5.499734653085037e-05, 0.010998938661457937}}) {
        const GroundStateResult g = squeezed_ground({c.n, c.lambda});
        // eigh is accurate to about eps ||H|| ~ 1e-14 in absolute terms.
        CHECK_THAT(g.energy, WithinAbs(c.energy, 1e-12 * std::max(1.0, std::abs(c.energy))));
        const double pol = expectation(g.state, build_collective(Axis::z, g.state.rep())) / (0.5 * c.n);
        CHECK_THAT(pol, WithinRel(c.polarization, 1e-8));
    }
    CHECK_THROWS_AS(squeezed_ground({5, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(squeezed_ground({4, -1.0}), InvalidArgument);
}

TEST_CASE("large Lambda gives the polarized state", "[states]") {
    const QuantumState g = squeezed_ground_state({50, 1e6});
    CHECK_THAT(std::abs(g.vector()(0)), WithinAbs(1.0, 1e-6));
}

TEST_CASE("white noise mixture and closed-form QFI", "[states]") {
    const QuantumState g = ghz(2, Representation::full(2), Axis::x);
    const QuantumState mixed = mix_white_noise(g, 0.5);
    CHECK_THAT(mixed.matrix().trace().real(), WithinAbs(1.0, 1e-14));
    const double fq = qfi(mixed, build_collective(Axis::x, mixed.rep())).value;
    CHECK_THAT(fq, WithinAbs(4.0 / 3.0, 1e-12));
    CHECK_THAT(white_noise_qfi(0.5, 4.0, 4.0), WithinAbs(4.0 / 3.0, 1e-15));
    CHECK_THROWS_AS(mix_white_noise(ghz(2, Representation::symmetric(2)), 0.5), InvalidArgument);
    CHECK_THROWS_AS(mix_white_noise(g, 1.5), InvalidArgument);
}

TEST_CASE("embedding into the full space", "[states]") {
    const QuantumState s = dicke(5, 2, Representation::symmetric(5));
    const QuantumState f = to_full(s);
    CHECK(max_abs(f.vector() - dicke(5, 2, Representation::full(5)).vector()) < 1e-14);
    CHECK_THAT(log_binomial(10, 3), WithinAbs(std::log(120.0), 1e-13));
}

TEST_CASE("state invariants are enforced", "[states]") {
    ComplexVector v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(QuantumState::pure(Representation::full(1), v), Unphysical);
    ComplexMatrix bad(2, 2);
    bad << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(QuantumState::density(Representation::full(1), bad), Unphysical);
    ComplexMatrix wrong = ComplexMatrix::Identity(3, 3) / 3.0;
    CHECK_THROWS(QuantumState::density(Representation::full(1), wrong));
    const QuantumState p = polarized(2, Axis::z);
    CHECK_THROWS_AS(p.matrix(), InvalidArgument);
    CHECK_THROWS_AS(expectation(p, build_collective(Axis::z, Representation::full(2))), InvalidArgument);
}
