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

#include <cstdint>
#include <vector>

#include "qmetro/states.hpp"

namespace qmetro {

/// rho = sum_k weights[k] |states[k]><states[k]| with normalized states.
struct Decomposition {
    std::vector<double> weights;
    std::vector<ComplexVector> states;

    [[nodiscard]] ComplexMatrix reconstruct() const;
    /// sum_k p_k Var(A)_{psi_k}
    [[nodiscard]] double average_variance(const SparseMatrix &a) const;
};

/// Decomposition into the eigenvectors on the support.
Decomposition eigen_decomposition(const QuantumState &s);

struct RoofOptions {
    int restarts = 32;
    std::uint64_t seed = 20140501;
    int max_iterations = 3000;
};

struct RoofResult {
    double value = 0.0;
    Decomposition decomposition;
    int rank = 0;
    int cardinality = 0;
};

/**
 * Searches decompositions psi~_k = sum_j U_kj sqrt(l_j) |e_j> with U a
 * K x r isometry (K = cardinality, r = rank) by Riemannian gradient steps on
 * the Stiefel manifold from seeded random starts. The convex roof minimizes
 * the average variance, the concave roof maximizes it. Results are the best
 * values found, so an upper bound on the infimum and a lower bound on the
 * supremum respectively. cardinality = 0 picks rank^2.
 * Requires dim <= 8, rank <= 4 and cardinality >= rank.
 */
RoofResult convex_roof_oracle(const QuantumState &s, const CollectiveOperator &a, int cardinality = 0,
                              const RoofOptions &opts = {});
RoofResult concave_roof_oracle(const QuantumState &s, const CollectiveOperator &a, int cardinality = 0,
                               const RoofOptions &opts = {});

struct RoofSandwich {
    double lower = 0.0;   ///< F_Q/4
    double average = 0.0; ///< sum_k p_k Var_k
    double upper = 0.0;   ///< Var(A)_rho
    bool holds = false;
};

/// F_Q/4 <= sum_k p_k Var_k <= Var within 1e-8. Rejects decompositions that miss rho by more than 1e-9.
RoofSandwich roof_sandwich_check(const QuantumState &s, const CollectiveOperator &a, const Decomposition &dec);

} // namespace qmetro
