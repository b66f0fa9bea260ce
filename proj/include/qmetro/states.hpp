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

#include <optional>
#include <string>
#include <vector>

#include "qmetro/spin_ops.hpp"

namespace qmetro {

/**
 * A pure vector or a density matrix on a Representation.
 *
 * Construction validates the invariants (unit norm or unit trace, Hermitian,
 * PSD) and throws Unphysical otherwise. Instances are immutable.
 */
class QuantumState {
  public:
    static QuantumState pure(Representation rep, ComplexVector psi, std::string label = {});
    static QuantumState density(Representation rep, ComplexMatrix rho, std::string label = {});

    /// Skips the O(d^3) PSD check; only for outputs of maps that preserve positivity.
    static QuantumState density_unchecked(Representation rep, ComplexMatrix rho, std::string label = {});

    [[nodiscard]] bool is_pure() const { return pure_; }
    [[nodiscard]] const Representation &rep() const { return rep_; }
    [[nodiscard]] Eigen::Index dim() const { return rep_.dim(); }
    [[nodiscard]] const std::string &label() const { return label_; }

    /// Pure payload; throws InvalidArgument for density states.
    [[nodiscard]] const ComplexVector &vector() const;
    /// Density payload; throws InvalidArgument for pure states.
    [[nodiscard]] const ComplexMatrix &matrix() const;
    /// |psi><psi| for pure states, the payload otherwise.
    [[nodiscard]] ComplexMatrix density_matrix() const;

    [[nodiscard]] QuantumState with_label(std::string label) const;

  private:
    QuantumState(Representation rep, bool pure, ComplexVector psi, ComplexMatrix rho, std::string label);

    Representation rep_;
    bool pure_ = true;
    ComplexVector psi_;
    ComplexMatrix rho_;
    std::string label_;
};

void check_same_rep(const QuantumState &s, const Representation &rep, const char *what);

Complex expectation_complex(const QuantumState &s, const SparseMatrix &op);
double expectation(const QuantumState &s, const SparseMatrix &op);
double expectation(const QuantumState &s, const CollectiveOperator &op);
double variance(const QuantumState &s, const CollectiveOperator &op);
/// Tr(rho^2)
double purity(const QuantumState &s);

/// Spin coherent state pointing along (theta, phi) on the Bloch sphere.
QuantumState coherent(int n, double theta, double phi, Representation rep);
QuantumState polarized(int n, Axis axis, Representation rep);
inline QuantumState polarized(int n, Axis axis) { return polarized(n, axis, Representation::symmetric(n)); }

/// (|+a>^N + |-a>^N)/sqrt(2) for the axis a; the default z gives (|0..0> + |1..1>)/sqrt(2).
QuantumState ghz(int n, Representation rep, Axis axis = Axis::z);

/// Symmetric Dicke state with m excitations, J_z eigenvalue N/2 - m.
QuantumState dicke(int n, int m, Representation rep);

/// Permutation average of (|Psi-><Psi-|)^(N/2); full representation, N even and <= 8.
QuantumState singlet_pi(int n);

/// Tensor product of single-qubit vectors (qubit 0 first).
QuantumState product_state(const std::vector<ComplexVector> &qubits, std::string label = {});

struct SqueezingSpec {
    int n = 2;
    double lambda = 0.0;

    void validate() const;
};

enum class GroundSolver { Tridiagonal, Dense };

struct GroundStateResult {
    QuantumState state;
    double energy;
    double gap;
    bool degenerate; ///< gap < 1e-12 ||H||; the lowest-index vector is returned
};

/**
 * Ground state of H = J_x^2 - Lambda J_z in the symmetric subspace.
 *
 * J_x^2 only couples m to m +- 2, so H splits into two tridiagonal parity
 * blocks. Tridiagonal solves each block by bisection and inverse iteration;
 * Dense diagonalizes the full (N+1)-dimensional matrix and is kept as the
 * reference. The returned vector has its largest-magnitude entry positive.
 */
GroundStateResult squeezed_ground(const SqueezingSpec &spec, GroundSolver solver = GroundSolver::Tridiagonal);
QuantumState squeezed_ground_state(const SqueezingSpec &spec);

/// H(Lambda) as a dense matrix, for cross-checks.
RealMatrix squeezing_hamiltonian(int n, double lambda);

/// p |psi><psi| + (1-p) 1/2^N. Full representation, N <= 10.
QuantumState mix_white_noise(const QuantumState &psi, double p);

/// Closed form F_Q of mix_white_noise(psi, p): p^2/(p + 2(1-p)/d) * 4 Var(A)_psi.
double white_noise_qfi(double p, double dim, double pure_qfi);

/// Embeds a symmetric-representation state into the full 2^N space.
QuantumState to_full(const QuantumState &s);

/// Isometry from the symmetric subspace into the full space (columns are Dicke states).
SparseMatrix symmetric_embedding(int n);

/// log C(n, k)
double log_binomial(int n, int k);

} // namespace qmetro
