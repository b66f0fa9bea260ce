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

#include "qmetro/fisher.hpp"
#include "qmetro/properties.hpp"
#include "qmetro/roofs.hpp"

using namespace qmetro;
using Catch::Matchers::WithinAbs;

namespace {

QuantumState mixed_qubit() {
    return QuantumState::density(Representation::full(1), ComplexMatrix::Identity(2, 2) * 0.5);
}

} // namespace

TEST_CASE("roofs of a pure state equal its variance", "[roofs]") {
    Sampler s(21);
    const QuantumState psi = s.pure_state(Representation::full(2));
    const CollectiveOperator a = make_operator(s.hermitian(4), psi.rep(), "A");
    const double var = variance(psi, a);
    CHECK_THAT(convex_roof_oracle(psi, a).value, WithinAbs(var, 1e-10));
    CHECK_THAT(concave_roof_oracle(psi, a).value, WithinAbs(var, 1e-10));
}

TEST_CASE("maximally mixed qubit", "[roofs]") {
    const QuantumState m = mixed_qubit();
    const CollectiveOperator &jz = build_collective(Axis::z, m.rep());
    const RoofResult lo = convex_roof_oracle(m, jz);
    const RoofResult hi = concave_roof_oracle(m, jz);
    CHECK_THAT(lo.value, WithinAbs(0.0, 1e-4));
    CHECK_THAT(hi.value, WithinAbs(0.25, 1e-4));
    CHECK(lo.rank == 2);
    CHECK(lo.cardinality == 4);
    CHECK(max_abs(lo.decomposition.reconstruct() - m.density_matrix()) < 1e-9);
}

TEST_CASE("rank-2 states reach the F_Q/4 and Var certificates", "[roofs]") {
    Sampler s(22);
    for (int i = 0; i < 3; ++i) {
        const QuantumState r = s.mixed_state(Representation::full(2), 2);
        const CollectiveOperator a = make_operator(s.hermitian(4), r.rep(), "A");
        CHECK_THAT(convex_roof_oracle(r, a).value, WithinAbs(qfi(r, a).value / 4.0, 1e-4));
        CHECK_THAT(concave_roof_oracle(r, a).value, WithinAbs(variance(r, a), 1e-4));
    }
}

TEST_CASE("roofs are seeded and reproducible", "[roofs]") {
    Sampler s(23);
    const QuantumState r = s.mixed_state(Representation::full(2), 3);
    const CollectiveOperator a = make_operator(s.hermitian(4), r.rep(), "A");
    RoofOptions opts;
    opts.restarts = 4;
    CHECK(convex_roof_oracle(r, a, 0, opts).value == convex_roof_oracle(r, a, 0, opts).value);
}

TEST_CASE("roof preconditions", "[roofs]") {
    Sampler s(24);
    const QuantumState r = s.mixed_state(Representation::full(2), 3);
    const CollectiveOperator a = make_operator(s.hermitian(4), r.rep(), "A");
    CHECK_THROWS_AS(convex_roof_oracle(r, a, 2), InvalidArgument);
    const QuantumState big = s.mixed_state(Representation::full(4), 2);
    CHECK_THROWS_AS(convex_roof_oracle(big, build_collective(Axis::x, big.rep())), SizeLimit);
    const QuantumState rank5 = s.mixed_state(Representation::full(3), 5);
    CHECK_THROWS_AS(concave_roof_oracle(rank5, build_collective(Axis::x, rank5.rep())), SizeLimit);
}

TEST_CASE("sandwich check", "[roofs]") {
    Sampler s(25);
    const QuantumState r = s.mixed_state(Representation::full(3));
    const CollectiveOperator a = make_operator(s.hermitian(8), r.rep(), "A");
    const RoofSandwich sw = roof_sandwich_check(r, a, eigen_decomposition(r));
    CHECK(sw.holds);
    CHECK(sw.lower <= sw.average + 1e-8);
    CHECK(sw.average <= sw.upper + 1e-8);

    const QuantumState p = s.pure_state(Representation::full(2));
    const CollectiveOperator b = make_operator(s.hermitian(4), p.rep(), "B");
    const RoofSandwich eq = roof_sandwich_check(p, b, eigen_decomposition(p));
    CHECK_THAT(eq.lower, WithinAbs(eq.upper, 1e-10));
    CHECK_THAT(eq.average, WithinAbs(eq.upper, 1e-10));

    Decomposition wrong = eigen_decomposition(r);
    wrong.weights[0] += 0.01;
    CHECK_THROWS_AS(roof_sandwich_check(r, a, wrong), InvalidArgument);
}
