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

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qmetro/config.hpp"

namespace qmetro {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Eigenvalues ascending, eigenvectors as the columns of a unitary.
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    [[nodiscard]] ComplexMatrix reconstruct() const;
};

/// max_ij |M_ij - conj(M_ji)|
double max_asymmetry(const ComplexMatrix &m);
double max_abs(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double rel_tol = kTol.hermitian);

/**
 * Spectral decomposition of a Hermitian matrix. Throws InvalidArgument
 * naming the largest asymmetry when the input is not Hermitian.
 */
SpectralDecomposition hermitian_eigendecompose(const ComplexMatrix &m);

/// Principal square root of a PSD matrix; eigenvalues in [-psd_clamp, 0) are clamped.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);
ComplexMatrix psd_sqrt(const SpectralDecomposition &spec);

/// exp(-i * sign * theta * A) via the spectral decomposition of A.
ComplexMatrix unitary_exp(const ComplexMatrix &a, double theta, int sign = +1);
ComplexMatrix unitary_exp(const SpectralDecomposition &spec, double theta, int sign = +1);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix direct_sum(const ComplexMatrix &a, const ComplexMatrix &b);

/// Tr(A B) for dense A and sparse B without forming the product.
Complex trace_product(const ComplexMatrix &a, const SparseMatrix &b);

/// Upper bound on the operator norm (max absolute row sum).
double norm_bound(const SparseMatrix &m);

/// Moore-Penrose inverse of a real symmetric matrix, eigenvalues below cutoff treated as zero.
RealMatrix symmetric_pinv(const RealMatrix &m, double cutoff, bool *was_singular = nullptr);

} // namespace qmetro
