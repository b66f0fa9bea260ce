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

#include "qmetro/fisher.hpp"
#include "qmetro/noise.hpp"
#include "qmetro/properties.hpp"
#include "qmetro/witnesses.hpp"

using namespace qmetro;
using Catch::Matchers::WithinAbs;

namespace {

// Tr_q rho (x) 1/2, written element by element.
ComplexMatrix replace_qubit(const ComplexMatrix &rho, int n, int q) {
    const Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if ((i & mask) != (j & mask)) {
                continue;
            }
            const Eigen::Index i0 = i & ~mask;
            const Eigen::Index j0 = j & ~mask;
            out(i, j) = 0.5 * (rho(i0, j0) + rho(i0 | mask, j0 | mask));
        }
    }
    return out;
}

// Depolarizing as a binomial mixture over the subsets of replaced qubits.
ComplexMatrix depolarize_by_subsets(const ComplexMatrix &rho, int n, double p) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (int subset = 0; subset < (1 << n); ++subset) {
        ComplexMatrix r = rho;
        int k = 0;
        for (int q = 0; q < n; ++q) {
            if ((subset >> q) & 1) {
                r = replace_qubit(r, n, q);
                ++k;
            }
        }
        out += std::pow(p, k) * std::pow(1.0 - p, n - k) * r;
    }
    return out;
}

} // namespace

TEST_CASE("identity and complete depolarization", "[noise]") {
    const QuantumState g = ghz(4, Representation::full(4), Axis::x);
    const QuantumState same = apply_noise(g, NoiseChannel::depolarizing(0.0));
    CHECK(max_abs(same.density_matrix() - g.density_matrix()) < 1e-14);
    const QuantumState mm = apply_noise(g, NoiseChannel::depolarizing(1.0));
    CHECK(max_abs(mm.density_matrix() - ComplexMatrix::Identity(16, 16) / 16.0) < 1e-14);
    CHECK_THAT(qfi(mm, build_collective(Axis::x, mm.rep())).value, WithinAbs(0.0, 1e-12));
}

TEST_CASE("symmetric input is embedded", "[noise]") {
    const QuantumState s = apply_noise(polarized(3, Axis::z), NoiseChannel::depolarizing(0.3));
    CHECK(s.rep().is_full());
    CHECK(s.dim() == 8);
}

TEST_CASE("moments of a depolarized product state", "[noise]") {
    const int n = 6;
    const double p = 0.3;
    const QuantumState s = apply_noise(polarized(n, Axis::z), NoiseChannel::depolarizing(p));
    const MomentSet m = moments(s);
    CHECK_THAT(m.first(Axis::z), WithinAbs((1 - p) * n / 2.0, 1e-12));
    CHECK_THAT(m.var(Axis::x), WithinAbs(n / 4.0, 1e-12));
    CHECK_THAT(m.var(Axis::z), WithinAbs(n / 4.0 * (1 - (1 - p) * (1 - p)), 1e-12));
}

TEST_CASE("depolarizing matches the subset mixture", "[noise]") {
    Sampler s(41);
    for (int n : {2, 3, 4}) {
        const QuantumState r = s.mixed_state(Representation::full(n), 3);
        const double p = s.uniform(0.0, 1.0);
        const ComplexMatrix expect = depolarize_by_subsets(r.density_matrix(), n, p);
        CHECK(max_abs(apply_noise(r, NoiseChannel::depolarizing(p)).density_matrix() - expect) < 1e-12);
    }
}

TEST_CASE("kernel and Kraus reference agree", "[noise]") {
    Sampler s(42);
    const QuantumState r = s.mixed_state(Representation::full(5), 4);
    for (const NoiseChannel &ch : {NoiseChannel::depolarizing(0.37),
                                   NoiseChannel::pauli_semigroup(0.8, {0.1, 0.2, 0.7}, 1.3)}) {
        const ComplexMatrix ref = apply_noise_reference(r.density_matrix(), 5, ch);
        ComplexMatrix k = r.density_matrix();
        apply_noise_inplace(k, 5, ch);
        CHECK(max_abs(k - ref) < 1e-12);
    }
}

TEST_CASE("semigroup damping factors", "[noise]") {
    const NoiseChannel ch = NoiseChannel::pauli_semigroup(0.5, {0.0, 0.25, 0.75}, 2.0);
    const kernels::PauliFactors f = ch.factors();
    CHECK_THAT(f.fx, WithinAbs(std::exp(-1.0), 1e-15));
    CHECK_THAT(f.fy, WithinAbs(std::exp(-0.75), 1e-15));
    CHECK_THAT(f.fz, WithinAbs(std::exp(-0.25), 1e-15));
    const auto w = ch.pauli_weights();
    CHECK_THAT(w[0] + w[1] + w[2] + w[3], WithinAbs(1.0, 1e-14));
    // Dephasing: rho_01 decays as exp(-gamma t).
    const NoiseChannel deph = NoiseChannel::pauli_semigroup(1.0, {0.0, 0.0, 1.0}, 0.7);
    const QuantumState plus = polarized(1, Axis::x, Representation::full(1));
    const QuantumState out = apply_noise(plus, deph);
    CHECK_THAT(out.density_matrix()(0, 1).real(), WithinAbs(0.5 * std::exp(-0.7), 1e-14));
}

TEST_CASE("invalid channels are rejected", "[noise]") {
    CHECK_THROWS_AS(NoiseChannel::depolarizing(-0.1), InvalidArgument);
    CHECK_THROWS_AS(NoiseChannel::depolarizing(1.5), InvalidArgument);
    CHECK_THROWS_AS(NoiseChannel::pauli_semigroup(-1.0, {0, 0, 1}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(NoiseChannel::pauli_semigroup(1.0, {0, 0, 1}, -1.0), InvalidArgument);
    CHECK_THROWS_AS(NoiseChannel::pauli_semigroup(1.0, {0.5, 0.6, 0.1}, 1.0), InvalidArgument);
    CHECK_THROWS(apply_noise(polarized(11, Axis::z), NoiseChannel::depolarizing(0.1)));
}

TEST_CASE("noisy squeezed state keeps Var(J_x) above pN/4", "[noise]") {
    const int n = 8;
    const double p = 0.2;
    for (double lambda : {0.01, 0.3, 1.0, 10.0}) {
        const QuantumState s = apply_noise(squeezed_ground_state({n, lambda}), NoiseChannel::depolarizing(p));
        CHECK(variance(s, build_collective(Axis::x, s.rep())) >= p * n / 4.0 - 1e-12);
    }
}
