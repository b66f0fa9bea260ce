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

#include <cmath>
#include <limits>
#include <numbers>

#include "qmetro/fisher.hpp"
#include "qmetro/properties.hpp"

using namespace qmetro;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const CollectiveOperator &J(Axis a, const QuantumState &s) { return build_collective(a, s.rep()); }

QuantumState maximally_mixed(int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    return QuantumState::density(Representation::full(n), ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

QuantumState as_density(const QuantumState &s) { return QuantumState::density(s.rep(), s.density_matrix()); }

} // namespace

TEST_CASE("QFI reference values", "[fisher]") {
    const QuantumState g3 = ghz(3, Representation::symmetric(3), Axis::x);
    CHECK_THAT(qfi(g3, J(Axis::x, g3)).value, WithinAbs(9.0, 1e-10));
    CHECK_THAT(qfi(as_density(g3), J(Axis::x, g3)).value, WithinAbs(9.0, 1e-10));
    const QuantumState mm = maximally_mixed(3);
    CHECK_THAT(qfi(mm, J(Axis::y, mm)).value, WithinAbs(0.0, 1e-14));
    const QuantumState p4 = polarized(4, Axis::z);
    CHECK_THAT(qfi(p4, J(Axis::y, p4)).value, WithinAbs(4.0, 1e-12));
    const QuantumState d42 = dicke(4, 2, Representation::full(4));
    CHECK_THAT(qfi_pure(d42, J(Axis::x, d42)), WithinAbs(12.0, 1e-12));
    CHECK_THAT(qfi_pure(d42, J(Axis::z, d42)), WithinAbs(0.0, 1e-12));
    for (int n : {3, 5, 8}) {
        const QuantumState g = ghz(n, Representation::symmetric(n), Axis::x);
        CHECK_THAT(qfi_pure(g, J(Axis::z, g)), WithinAbs(n, 1e-10));
    }
    CHECK_THROWS_AS(qfi_pure(mm, J(Axis::x, mm)), InvalidArgument);
    CHECK_THROWS_AS(qfi(p4, build_collective(Axis::x, Representation::full(4))), InvalidArgument);
}

TEST_CASE("QFI of a mixed state against a frozen numpy value", "[fisher]") {
    // Singlet of four qubits under sum_n n j_y^(n): 20/3 by direct numpy evaluation.
    const QuantumState s = singlet_pi(4);
    CHECK_THAT(qfi(s, build_gradient_generator(s.rep())).value, WithinRel(20.0 / 3.0, 1e-10));
    CHECK_THAT(qfi_alternative(s, build_gradient_generator(s.rep())), WithinRel(20.0 / 3.0, 1e-10));
}

TEST_CASE("qfi_alternative on pure and random states", "[fisher]") {
    Sampler sm(11);
    for (int i = 0; i < 20; ++i) {
        const QuantumState psi = sm.pure_state(Representation::full(3));
        const CollectiveOperator a = make_operator(sm.hermitian(8), psi.rep(), "A");
        CHECK_THAT(qfi_alternative(psi, a), WithinAbs(4.0 * variance(psi, a), 1e-9));
    }
    const QuantumState mm = maximally_mixed(2);
    CHECK_THAT(qfi_alternative(mm, J(Axis::x, mm)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("symmetric logarithmic derivative", "[fisher]") {
    const QuantumState p = polarized(4, Axis::z, Representation::full(4));
    const QuantumState rho = as_density(p);
    const ComplexMatrix l = sld(rho, J(Axis::y, rho));
    // Acts as 2 J_x on the support.
    const ComplexVector psi = p.vector();
    CHECK(max_abs(l * psi - 2.0 * (J(Axis::x, p).dense() * psi)) < 1e-10);

    Sampler sm(12);
    const QuantumState r = sm.pure_state(Representation::full(2));
    const CollectiveOperator a = make_operator(sm.hermitian(4), r.rep(), "A");
    const ComplexMatrix pr = r.density_matrix();
    const ComplexMatrix expected = 2.0 * kI * (pr * a.dense() - a.dense() * pr);
    CHECK(max_abs(sld(r, a) - expected) < 1e-9);
}

TEST_CASE("classical Fisher information", "[fisher]") {
    const QuantumState p = polarized(4, Axis::z);
    const CollectiveOperator &jy = J(Axis::y, p);
    const StateFamily ramsey = [&](double th) { return rotate(p, jy, th); };
    const Povm opt = Povm::eigenbasis(sld(p, jy));
    CHECK_THAT(classical_fisher(ramsey, opt, 0.0).value, WithinRel(4.0, 1e-6));

    std::vector<ComplexMatrix> trivial{ComplexMatrix::Identity(5, 5)};
    CHECK_THAT(classical_fisher(ramsey, Povm::general(trivial), 0.3).value, WithinAbs(0.0, 1e-9));

    const QuantumState g = ghz(3, Representation::symmetric(3));
    const CollectiveOperator &jz = J(Axis::z, g);
    const StateFamily phase = [&](double th) { return rotate(g, jz, th); };
    CHECK_THAT(classical_fisher(phase, Povm::eigenbasis(jz.dense()), 0.2).value, WithinAbs(0.0, 1e-9));
    CHECK_THAT(classical_fisher(phase, Povm::eigenbasis(sld(g, jz)), 0.0).value, WithinRel(9.0, 1e-6));
}

TEST_CASE("Fisher matrix and covariance bound", "[fisher]") {
    const QuantumState g = ghz(3, Representation::symmetric(3), Axis::x);
    const FisherMatrix f = fisher_matrix(g, {J(Axis::x, g), J(Axis::y, g), J(Axis::z, g)});
    CHECK_THAT(f.matrix(0, 0), WithinAbs(9.0, 1e-10));
    CHECK_THAT(f.matrix(1, 1), WithinAbs(3.0, 1e-10));
    CHECK_THAT(f.matrix(2, 2), WithinAbs(3.0, 1e-10));
    CHECK_THAT(f.matrix(0, 1), WithinAbs(0.0, 1e-10));
    const CovarianceBound c = crb_matrix(f);
    CHECK_FALSE(c.singular);
    CHECK_THAT(c.matrix(0, 0), WithinAbs(1.0 / 9.0, 1e-10));

    const QuantumState d = dicke(4, 2, Representation::symmetric(4));
    const FisherMatrix fd = fisher_matrix(d, {J(Axis::x, d), J(Axis::z, d)});
    CHECK(crb_matrix(fd).singular);

    const FisherMatrix single = fisher_matrix(g, {J(Axis::x, g)});
    CHECK(single.matrix.rows() == 1);
    CHECK_THROWS_AS(fisher_matrix(g, {}), InvalidArgument);
}

TEST_CASE("Bures fidelity", "[fisher]") {
    Sampler sm(13);
    const QuantumState r = sm.mixed_state(Representation::full(2));
    CHECK_THAT(bures_fidelity(r, r), WithinAbs(1.0, 1e-10));
    const QuantumState up = polarized(2, Axis::z);
    const QuantumState down = dicke(2, 2, Representation::symmetric(2));
    CHECK_THAT(bures_fidelity(up, down), WithinAbs(0.0, 1e-14));
    const QuantumState g = ghz(3, Representation::symmetric(3), Axis::x);
    const double th = 1e-3;
    const QuantumState gr = rotate(g, J(Axis::x, g), th);
    CHECK_THAT(bures_fidelity(g, gr), WithinAbs(1.0 - th * th * 9.0 / 4.0, 1e-8));
    // Pure against mixed reduces to <psi|rho|psi>.
    const QuantumState pm = sm.mixed_state(Representation::symmetric(3));
    CHECK_THAT(bures_fidelity(g, pm), WithinAbs(g.vector().dot(pm.matrix() * g.vector()).real(), 1e-10));
}

TEST_CASE("Mandelstam-Tamm bound", "[fisher]") {
    const QuantumState g = ghz(5, Representation::symmetric(5), Axis::x);
    const MandelstamTamm zero = mandelstam_tamm_check(g, J(Axis::x, g), 0.0);
    CHECK_THAT(zero.fidelity, WithinAbs(1.0, 1e-14));
    CHECK_THAT(zero.bound, WithinAbs(1.0, 1e-14));
    const MandelstamTamm small = mandelstam_tamm_check(g, J(Axis::x, g), 0.05);
    CHECK(small.holds);
    CHECK_THAT(small.fidelity, WithinAbs(small.bound, 1e-8));
    CHECK_THROWS_AS(mandelstam_tamm_check(g, J(Axis::x, g), 1.0), InvalidArgument);
}

TEST_CASE("Wigner-Yanase skew information", "[fisher]") {
    Sampler sm(14);
    const QuantumState psi = sm.pure_state(Representation::full(3));
    const CollectiveOperator a = make_operator(sm.hermitian(8), psi.rep(), "A");
    CHECK_THAT(wigner_yanase(psi, a), WithinAbs(variance(psi, a), 1e-10));
    const QuantumState mm = maximally_mixed(2);
    CHECK_THAT(wigner_yanase(mm, J(Axis::x, mm)), WithinAbs(0.0, 1e-14));
}

TEST_CASE("Zeno time", "[fisher]") {
    for (int n : {2, 5, 10}) {
        const QuantumState g = ghz(n, Representation::symmetric(n), Axis::x);
        CHECK_THAT(zeno_time(g, J(Axis::x, g)), WithinRel(2.0 / n, 1e-12));
        const QuantumState p = polarized(n, Axis::z);
        CHECK_THAT(zeno_time(p, J(Axis::y, p)), WithinRel(2.0 / std::sqrt(n), 1e-12));
    }
    const QuantumState mm = maximally_mixed(2);
    CHECK(std::isinf(zeno_time(mm, J(Axis::x, mm))));
}

TEST_CASE("property battery (small sample)", "[fisher][properties]") {
    for (const auto &r : fisher_properties({25, 99})) {
        INFO(r.name << " worst=" << r.worst);
        CHECK(r.passed);
    }
}
