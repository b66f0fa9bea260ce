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

#include <functional>
#include <string>
#include <vector>

#include "qmetro/states.hpp"

namespace qmetro {

struct QfiResult {
    double value = 0.0;
    std::size_t skipped_pairs = 0; ///< pairs with lambda_k + lambda_l < 1e-12
};

/// Eigenvalues (clamped at 0) and eigenvectors of a state's density matrix.
struct StateSpectrum {
    RealVector lambda;
    ComplexMatrix vectors;
};
StateSpectrum state_spectrum(const QuantumState &s);

/// V^dagger A V
ComplexMatrix in_eigenbasis(const StateSpectrum &spec, const SparseMatrix &a);

/**
 * F_Q[rho, A] = 2 sum_kl (l_k - l_l)^2/(l_k + l_l) |A_kl|^2.
 * Pure states take the 4 Var(A) shortcut.
 */
QfiResult qfi(const QuantumState &s, const CollectiveOperator &a);

/// 4 Var(A); rejects mixed input.
double qfi_pure(const QuantumState &s, const CollectiveOperator &a);

/// 4<A^2> - 8 sum_kl l_k l_l/(l_k + l_l) |A_kl|^2, always through the eigendecomposition.
double qfi_alternative(const QuantumState &s, const CollectiveOperator &a);

/// Symmetric logarithmic derivative of rho_theta = e^{-i theta A} rho e^{i theta A} at theta = 0. Zero off the support.
ComplexMatrix sld(const QuantumState &s, const CollectiveOperator &a);

/**
 * Measurement with outcome probabilities Tr(rho Pi_x). Either general PSD
 * elements or a projective measurement stored as an orthonormal basis
 * (columns), which avoids d rank-one d x d matrices.
 */
class Povm {
  public:
    static Povm general(std::vector<ComplexMatrix> elements);
    static Povm projective(ComplexMatrix basis);
    /// Eigenbasis of a Hermitian observable.
    static Povm eigenbasis(const ComplexMatrix &observable);

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] Eigen::Index dim() const;
    [[nodiscard]] RealVector probabilities(const QuantumState &s) const;

  private:
    std::vector<ComplexMatrix> elements_;
    ComplexMatrix basis_;
    bool projective_ = false;
};

using StateFamily = std::function<QuantumState(double)>;

struct ClassicalFisherResult {
    double value = 0.0;
    std::size_t boundary_outcomes = 0; ///< p < 1e-12 with |dp/dtheta| > 1e-6
    std::vector<std::string> warnings;
};

/**
 * sum_x (d p_x/d theta)^2 / p_x at theta0 by central differences.
 * Outcomes with p_x < 1e-8 use a Richardson-extrapolated derivative; outcomes
 * with p_x < 1e-12 contribute the limit 2 p_x'' of the ratio.
 */
ClassicalFisherResult classical_fisher(const StateFamily &family, const Povm &povm, double theta0,
                                       double dtheta = 1e-5);

struct FisherMatrix {
    std::vector<std::string> generators;
    RealMatrix matrix;
};

FisherMatrix fisher_matrix(const QuantumState &s, const std::vector<CollectiveOperator> &generators);

struct CovarianceBound {
    RealMatrix matrix;
    bool singular = false; ///< F was singular; matrix is the pseudo-inverse
};
CovarianceBound crb_matrix(const FisherMatrix &f);

/// Tr(sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, clamped to [0, 1].
double bures_fidelity(const QuantumState &a, const QuantumState &b);

struct MandelstamTamm {
    double fidelity = 1.0;
    double bound = 1.0;
    double qfi = 0.0;
    bool holds = true;
};

/// F_B(rho, rho_theta) >= cos^2(sqrt(F_Q/4) theta). Requires sqrt(F_Q)|theta| <= pi.
MandelstamTamm mandelstam_tamm_check(const QuantumState &s, const CollectiveOperator &a, double theta);

/// Tr(A^2 rho) - Tr(A rho^{1/2} A rho^{1/2})
double wigner_yanase(const QuantumState &s, const CollectiveOperator &a);

/// 2/sqrt(F_Q); +infinity when F_Q <= 1e-12.
double zeno_time(const QuantumState &s, const CollectiveOperator &a);

} // namespace qmetro
