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
#include <numbers>

#include "qmetro/spin_ops.hpp"
#include "qmetro/states.hpp"

using namespace qmetro;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix d(Axis a, Representation rep) { return build_collective(a, rep).dense(); }

} // namespace

TEST_CASE("collective operators obey su(2) commutation relations", "[spin_ops]") {
    for (int n = 1; n <= 6; ++n) {
        for (Representation rep : {Representation::symmetric(n), Representation::full(n)}) {
            const ComplexMatrix jx = d(Axis::x, rep);
            const ComplexMatrix jy = d(Axis::y, rep);
            const ComplexMatrix jz = d(Axis::z, rep);
            CHECK(max_abs(jx * jy - jy * jx - kI * jz) < 1e-12);
            CHECK(max_abs(jy * jz - jz * jy - kI * jx) < 1e-12);
            CHECK(max_abs(jz * jx - jx * jz - kI * jy) < 1e-12);
        }
    }
}

TEST_CASE("symmetric subspace has total spin N/2", "[spin_ops]") {
    for (int n : {1, 4, 9, 30}) {
        const Representation rep = Representation::symmetric(n);
        const ComplexMatrix j2 = d(Axis::x, rep) * d(Axis::x, rep) + d(Axis::y, rep) * d(Axis::y, rep) +
                                 d(Axis::z, rep) * d(Axis::z, rep);
        const double j = 0.5 * n;
        CHECK(max_abs(j2 - j * (j + 1) * ComplexMatrix::Identity(n + 1, n + 1)) < 1e-10);
        const ComplexMatrix jz = d(Axis::z, rep);
        for (int i = 0; i <= n; ++i) {
            CHECK_THAT(jz(i, i).real(), WithinAbs(j - i, 1e-15));
        }
    }
}

TEST_CASE("full basis: qubit 0 is the most significant bit, bit 0 is spin up", "[spin_ops]") {
    const Representation rep = Representation::full(3);
    const ComplexMatrix jz = d(Axis::z, rep);
    CHECK_THAT(jz(0, 0).real(), WithinAbs(1.5, 1e-15));
    CHECK_THAT(jz(7, 7).real(), WithinAbs(-1.5, 1e-15));
    CHECK_THAT(jz(4, 4).real(), WithinAbs(0.5, 1e-15));
    // Weighted operator: only qubit 0 carries weight, and it flips bit 2 (value 4).
    const ComplexMatrix w = build_site_weighted(Axis::x, {1.0, 0.0, 0.0}, rep).dense();
    CHECK_THAT(w(0, 4).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(std::abs(w(0, 1)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("restriction of the full operators to the symmetric subspace", "[spin_ops]") {
    for (int n = 1; n <= 6; ++n) {
        const SparseMatrix v = symmetric_embedding(n);
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
            const ComplexMatrix restricted =
                ComplexMatrix(v.adjoint()) * d(a, Representation::full(n)) * ComplexMatrix(v);
            CHECK(max_abs(restricted - d(a, Representation::symmetric(n))) < 1e-12);
        }
    }
}

TEST_CASE("parity operator", "[spin_ops]") {
    const int n = 3;
    ComplexMatrix expected = pauli(Axis::x);
    for (int i = 1; i < n; ++i) {
        expected = kron(expected, pauli(Axis::x));
    }
    CHECK(max_abs(parity_x(Representation::full(n)).dense() - expected) < 1e-15);
    const ComplexMatrix sym = parity_x(Representation::symmetric(4)).dense();
    for (int i = 0; i <= 4; ++i) {
        CHECK(sym(i, 4 - i) == Complex(1.0));
    }
}

TEST_CASE("collective operators are cached", "[spin_ops]") {
    const Representation rep = Representation::symmetric(17);
    const auto &a = build_collective(Axis::y, rep);
    const std::size_t size = collective_cache_size();
    const auto &b = build_collective(Axis::y, rep);
    CHECK(&a == &b);
    CHECK(collective_cache_size() == size);
}

TEST_CASE("directions, gradient generator and argument checks", "[spin_ops]") {
    const Representation rep = Representation::symmetric(4);
    const Direction n = Direction(1.0, 1.0, 0.0).normalized();
    const ComplexMatrix jn = build_direction(n, rep).dense();
    CHECK(max_abs(jn - (d(Axis::x, rep) + d(Axis::y, rep)) / std::sqrt(2.0)) < 1e-14);
    CHECK_THROWS_AS(build_direction(Direction(1.0, 1.0, 0.0), rep), InvalidArgument);

    const Representation full = Representation::full(3);
    const ComplexMatrix g = build_gradient_generator(full).dense();
    const ComplexMatrix ref = build_site_weighted(Axis::y, {1.0, 2.0, 3.0}, full).dense();
    CHECK(max_abs(g - ref) < 1e-15);
    const ComplexMatrix c = build_gradient_generator(full, true).dense();
    CHECK(max_abs(c - build_site_weighted(Axis::y, {-1.0, 0.0, 1.0}, full).dense()) < 1e-15);
    CHECK_THROWS_AS(build_gradient_generator(rep), InvalidArgument);

    CHECK(parse_axis("Jx") == Axis::x);
    CHECK(parse_axis("z") == Axis::z);
    CHECK_THROWS_AS(parse_axis("w"), InvalidArgument);
    ComplexMatrix bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(make_operator(bad, Representation::full(1), "bad"), InvalidArgument);
}

TEST_CASE("size limits", "[spin_ops]") {
    CHECK_THROWS_AS(build_collective(Axis::x, Representation::full(13)), SizeLimit);
    CHECK_THROWS_AS(build_collective(Axis::x, Representation::symmetric(5000)), SizeLimit);
}

TEST_CASE("rotation by pi/2 about y turns z polarization into x", "[spin_ops]") {
    for (int n : {1, 4, 7}) {
        const QuantumState s = polarized(n, Axis::z);
        const QuantumState r = rotate(s, build_collective(Axis::y, s.rep()), std::numbers::pi / 2);
        CHECK_THAT(expectation(r, build_collective(Axis::x, s.rep())), WithinAbs(0.5 * n, 1e-12));
        CHECK_THAT(expectation(r, build_collective(Axis::z, s.rep())), WithinAbs(0.0, 1e-12));
    }
}
