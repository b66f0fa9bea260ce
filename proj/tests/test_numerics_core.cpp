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
#include <cstdlib>
#include <numbers>

#include <omp.h>

#include "qmetro/kernels.hpp"
#include "qmetro/linalg.hpp"
#include "qmetro/properties.hpp"
#include "qmetro/tridiagonal.hpp"
#include "qmetro/witnesses.hpp"

using namespace qmetro;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("eigendecomposition reconstructs and is orthonormal", "[linalg]") {
    Sampler s(1);
    for (int d : {1, 2, 5, 16, 40}) {
        const ComplexMatrix h = s.hermitian(d);
        const SpectralDecomposition spec = hermitian_eigendecompose(h);
        CHECK(max_abs(spec.reconstruct() - h) < 1e-10);
        CHECK(max_abs(spec.eigenvectors.adjoint() * spec.eigenvectors - ComplexMatrix::Identity(d, d)) < 1e-10);
        for (Eigen::Index k = 1; k < d; ++k) {
            CHECK(spec.eigenvalues(k) >= spec.eigenvalues(k - 1));
        }
    }
}

TEST_CASE("eigendecomposition rejects non-Hermitian input", "[linalg]") {
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(hermitian_eigendecompose(m), InvalidArgument);
    CHECK_FALSE(is_hermitian(m));
}

TEST_CASE("psd_sqrt squares back", "[linalg]") {
    Sampler s(2);
    const ComplexMatrix rho = s.density(6);
    const ComplexMatrix r = psd_sqrt(rho);
    CHECK(max_abs(r * r - rho) < 1e-10);
    CHECK(max_abs(r - r.adjoint()) < 1e-12);
}

TEST_CASE("unitary_exp of sigma_z/2", "[linalg]") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 0.5;
    a(1, 1) = -0.5;
    const double th = 0.7;
    const ComplexMatrix u = unitary_exp(a, th);
    CHECK(std::abs(u(0, 0) - std::polar(1.0, -th / 2)) < 1e-14);
    CHECK(std::abs(u(1, 1) - std::polar(1.0, th / 2)) < 1e-14);
    CHECK(std::abs(u(0, 1)) < 1e-15);
    const ComplexMatrix back = unitary_exp(a, th, -1);
    CHECK(max_abs(u * back - ComplexMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("kron and direct_sum layout", "[linalg]") {
    ComplexMatrix a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    ComplexMatrix b(2, 2);
    b << 0.0, 1.0, 1.0, 0.0;
    const ComplexMatrix k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(k(0, 1) == Complex(1.0));
    CHECK(k(2, 3) == Complex(4.0));
    CHECK(k(3, 2) == Complex(4.0));
    CHECK(k(1, 2) == Complex(2.0));
    CHECK(k(1, 3) == Complex(0.0));
    const ComplexMatrix d = direct_sum(a, b);
    CHECK(d.rows() == 4);
    CHECK(d(1, 1) == Complex(4.0));
    CHECK(d(2, 3) == Complex(1.0));
    CHECK(d(0, 2) == Complex(0.0));
}

TEST_CASE("trace_product and norm_bound", "[linalg]") {
    Sampler s(3);
    const ComplexMatrix a = s.hermitian(8);
    const ComplexMatrix b = s.hermitian(8);
    const SparseMatrix bs = b.sparseView();
    CHECK(std::abs(trace_product(a, bs) - (a * b).trace()) < 1e-12);
    const SpectralDecomposition spec = hermitian_eigendecompose(b);
    const double spectral = spec.eigenvalues.cwiseAbs().maxCoeff();
    CHECK(norm_bound(bs) >= spectral - 1e-12);
}

TEST_CASE("symmetric_pinv flags singular matrices", "[linalg]") {
    RealMatrix m(2, 2);
    m << 2.0, 0.0, 0.0, 0.0;
    bool singular = false;
    const RealMatrix p = symmetric_pinv(m, 1e-10, &singular);
    CHECK(singular);
    CHECK_THAT(p(0, 0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(p(1, 1), WithinAbs(0.0, 1e-15));
    m(1, 1) = 4.0;
    const RealMatrix q = symmetric_pinv(m, 1e-10, &singular);
    CHECK_FALSE(singular);
    CHECK_THAT(q(1, 1), WithinAbs(0.25, 1e-15));
}

TEST_CASE("tridiagonal Toeplitz spectrum matches the closed form", "[tridiagonal]") {
    // diag 2, off -1: eigenvalues 2 - 2 cos(k pi/(n+1)).
    const std::size_t n = 25;
    Tridiagonal t{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
    for (std::size_t k = 0; k < n; ++k) {
        const double exact = 2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1));
        CHECK_THAT(tridiagonal_eigenvalue(t, k), WithinAbs(exact, 1e-13));
    }
    CHECK(sturm_count(t, 0.0) == 0);
    CHECK(sturm_count(t, 4.1) == n);
    CHECK(sturm_count(t, 2.0 + 1e-9) == (n + 1) / 2);
}

TEST_CASE("tridiagonal lowest eigenpair residual", "[tridiagonal]") {
    Tridiagonal t{{1.0, -3.0, 0.5, 2.0, -1.0}, {0.3, 1.2, -0.7, 0.1}};
    const Eigenpair e = tridiagonal_lowest(t);
    const std::size_t n = t.size();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double hv = t.diag[i] * e.vector[i];
        if (i > 0) {
            hv += t.off[i - 1] * e.vector[i - 1];
        }
        if (i + 1 < n) {
            hv += t.off[i] * e.vector[i + 1];
        }
        CHECK(std::abs(hv - e.value * e.vector[i]) < 1e-12);
        norm += e.vector[i] * e.vector[i];
    }
    CHECK_THAT(norm, WithinAbs(1.0, 1e-14));
    RealMatrix dense = RealMatrix::Zero(5, 5);
    for (std::size_t i = 0; i < n; ++i) {
        dense(i, i) = t.diag[i];
        if (i + 1 < n) {
            dense(i, i + 1) = dense(i + 1, i) = t.off[i];
        }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> ref(dense);
    CHECK_THAT(e.value, WithinAbs(ref.eigenvalues()(0), 1e-13));
}

TEST_CASE("parallel kernels equal the serial references", "[kernels]") {
    Sampler s(4);
    for (int n : {1, 3, 6}) {
        const Eigen::Index d = Eigen::Index{1} << n;
        RealVector lambda(d);
        for (Eigen::Index k = 0; k < d; ++k) {
            lambda(k) = k % 3 == 0 ? 0.0 : s.uniform();
        }
        lambda /= lambda.sum();
        const ComplexMatrix a = s.hermitian(d);
        const ComplexMatrix b = s.hermitian(d);
        const auto ps = kernels::serial::qfi_pair_sum(lambda, a, 1e-12);
        const auto pp = kernels::parallel::qfi_pair_sum(lambda, a, 1e-12);
        CHECK_THAT(pp.value, WithinRel(ps.value, 1e-13));
        CHECK(pp.skipped == ps.skipped);
        CHECK_THAT(kernels::parallel::fisher_pair_sum(lambda, a, b, 1e-12),
                   WithinAbs(kernels::serial::fisher_pair_sum(lambda, a, b, 1e-12), 1e-12));
        CHECK_THAT(kernels::parallel::product_pair_sum(lambda, a, 1e-12),
                   WithinAbs(kernels::serial::product_pair_sum(lambda, a, 1e-12), 1e-12));

        ComplexMatrix r1 = s.density(d);
        ComplexMatrix r2 = r1;
        const kernels::PauliFactors f{0.3, -0.2, 0.8};
        for (int site = 0; site < n; ++site) {
            kernels::serial::pauli_channel_qubit(r1, n, site, f);
            kernels::parallel::pauli_channel_qubit(r2, n, site, f);
        }
        CHECK(max_abs(r1 - r2) < 1e-15);
    }
    const auto dirs = golden_spiral(500);
    Eigen::Matrix3d m;
    m << 3, 1, 0, 1, 2, 0.5, 0, 0.5, 1;
    const auto a = kernels::serial::direction_scan(m, dirs);
    const auto b = kernels::parallel::direction_scan(m, dirs);
    CHECK(a.index == b.index);
    CHECK(a.value == b.value);
}

TEST_CASE("pair sum of a pure qubit", "[kernels]") {
    // |0><0|, A = sigma_x/2: F_Q = 4 Var = 1; the (1,1) pair is skipped.
    RealVector lambda(2);
    lambda << 1.0, 0.0;
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = a(1, 0) = 0.5;
    const auto r = kernels::serial::qfi_pair_sum(lambda, a, 1e-12);
    CHECK_THAT(r.value, WithinAbs(1.0, 1e-15));
    CHECK(r.skipped == 1);
}

TEST_CASE("pauli channel damps the Bloch vector of one qubit", "[kernels]") {
    // rho = (1 + r.sigma)/2 with r = (0.6, 0, 0.8)
    ComplexMatrix rho(2, 2);
    rho << 0.9, 0.3, 0.3, 0.1;
    kernels::serial::pauli_channel_qubit(rho, 1, 0, {0.5, 0.25, 0.1});
    CHECK_THAT(rho(0, 0).real(), WithinAbs(0.5 + 0.5 * 0.08, 1e-15));
    CHECK_THAT(rho(0, 1).real(), WithinAbs(0.5 * 0.3, 1e-15));
    CHECK_THROWS_AS(kernels::serial::pauli_channel_qubit(rho, 1, 1, {}), InvalidArgument);
}

TEST_CASE("QMETRO_THREADS caps the worker count", "[config]") {
    setenv("QMETRO_THREADS", "2", 1);
    CHECK(apply_thread_limit_from_env() == 2);
    CHECK(omp_get_max_threads() == 2);
    unsetenv("QMETRO_THREADS");
    CHECK(apply_thread_limit_from_env() == 0);
}
