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

#include <array>
#include <string>

#include "qmetro/kernels.hpp"
#include "qmetro/states.hpp"

namespace qmetro {

/**
 * Uncorrelated single-qubit noise, applied to every qubit.
 *
 * Depolarizing(p): rho -> (1-p) rho + p 1/2.
 * PauliSemigroup(gamma, alpha, t): the semigroup generated by
 * -(gamma/2)(rho - sum_l alpha_l sigma_l rho sigma_l) run for time t, which
 * damps Bloch component l by exp(-gamma (1 - alpha_l) t).
 */
struct NoiseChannel {
    enum class Kind { Depolarizing, PauliSemigroup };

    Kind kind = Kind::Depolarizing;
    double p = 0.0;
    double gamma = 0.0;
    std::array<double, 3> alpha{0.0, 0.0, 1.0};
    double t = 0.0;

    static NoiseChannel depolarizing(double p);
    static NoiseChannel pauli_semigroup(double gamma, std::array<double, 3> alpha, double t);

    /// Bloch-vector damping factors.
    [[nodiscard]] kernels::PauliFactors factors() const;
    /// Weights q_0, q_x, q_y, q_z of the Kraus form sum_l q_l sigma_l rho sigma_l.
    [[nodiscard]] std::array<double, 4> pauli_weights() const;
    /// Single-qubit Choi matrix sum_ij |i><j| (x) E(|i><j|).
    [[nodiscard]] ComplexMatrix choi() const;
    /// Parameter ranges, then CPTP on the Choi matrix within 1e-10.
    void validate() const;
    [[nodiscard]] std::string describe() const;
};

/// The channel on every qubit. Symmetric states are embedded first; N <= 10.
QuantumState apply_noise(const QuantumState &s, const NoiseChannel &channel);

/// In-place on a full n-qubit density matrix through the parallel kernel.
void apply_noise_inplace(ComplexMatrix &rho, int n, const NoiseChannel &channel);

/// Reference path: explicit Kraus sum qubit by qubit, no kernels.
ComplexMatrix apply_noise_reference(const ComplexMatrix &rho, int n, const NoiseChannel &channel);

} // namespace qmetro
