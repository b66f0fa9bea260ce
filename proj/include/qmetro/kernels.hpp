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

// Data-parallel inner loops. Every kernel exists twice: an OpenMP version
// used by the library and a plain serial version kept as the reference for
// tests and bench/. Parallel reductions accumulate per-row partials and sum
// them in index order, so results do not depend on the thread count.

#include <array>
#include <cstddef>
#include <span>

#include "qmetro/linalg.hpp"

namespace qmetro::kernels {

struct PairSum {
    double value = 0.0;
    std::size_t skipped = 0; ///< (k,l) pairs dropped with lambda_k + lambda_l < support
};

/// Single-qubit Pauli-diagonal channel: Bloch components scaled by (fx, fy, fz).
struct PauliFactors {
    double fx = 1.0;
    double fy = 1.0;
    double fz = 1.0;
};

struct ScanResult {
    double value = 0.0;
    std::size_t index = 0;
};

namespace serial {

/// 2 sum_{kl} (l_k - l_l)^2/(l_k + l_l) |A_kl|^2, with A given in the eigenbasis.
PairSum qfi_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support);

/// 2 sum_{kl} (l_k - l_l)^2/(l_k + l_l) Re(A_kl B_lk)
double fisher_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, const ComplexMatrix &b_eig,
                       double support);

/// sum_{kl} l_k l_l/(l_k + l_l) |A_kl|^2
double product_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support);

/// Applies the channel to qubit `site` (0 = leftmost tensor factor) of an n-qubit density matrix.
void pauli_channel_qubit(ComplexMatrix &rho, int n_qubits, int site, PauliFactors f);

/// Largest v^T F v over unit directions; ties go to the lowest index.
ScanResult direction_scan(const Eigen::Matrix3d &f, std::span<const Eigen::Vector3d> directions);

} // namespace serial

namespace parallel {

PairSum qfi_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support);
double fisher_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, const ComplexMatrix &b_eig,
                       double support);
double product_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support);
void pauli_channel_qubit(ComplexMatrix &rho, int n_qubits, int site, PauliFactors f);
ScanResult direction_scan(const Eigen::Matrix3d &f, std::span<const Eigen::Vector3d> directions);

} // namespace parallel

} // namespace qmetro::kernels
