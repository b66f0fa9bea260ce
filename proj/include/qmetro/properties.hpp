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
#include <random>
#include <string>
#include <vector>

#include "qmetro/states.hpp"

namespace qmetro {

/// Seeded generator of random states, operators and unitaries.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0);
    int integer(int lo, int hi); ///< inclusive
    ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols);
    ComplexVector vector(Eigen::Index d); ///< normalized
    ComplexMatrix hermitian(Eigen::Index d);
    ComplexMatrix unitary(Eigen::Index d); ///< Haar via QR of a Ginibre matrix
    /// rank 0 means full rank
    ComplexMatrix density(Eigen::Index d, Eigen::Index rank = 0);

    QuantumState pure_state(Representation rep);
    QuantumState mixed_state(Representation rep, Eigen::Index rank = 0);
    /// Tensor product of random single-qubit pure states.
    QuantumState product(int n);

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Partial trace over the trailing factor of dimension d_b.
ComplexMatrix trace_out_last(const ComplexMatrix &rho, Eigen::Index d_b);

struct PropertyResult {
    std::string name;
    int samples = 0;
    double worst = 0.0;     ///< largest violation (inequalities) or deviation (equalities) seen
    double tolerance = 0.0;
    bool passed = false;
};

struct BatteryOptions {
    int samples = 100;
    std::uint64_t seed = 20140501;
};

/// QFI properties (a)-(g), the qfi/qfi_alternative and SLD identities, and the Fisher-information bounds.
std::vector<PropertyResult> fisher_properties(const BatteryOptions &opts = {});
/// Witness soundness on random product states, moment and depth consistency.
std::vector<PropertyResult> witness_properties(const BatteryOptions &opts = {});
/// Noise kernels against the Kraus reference, rotation covariance, scenario CRB and derivative checks.
std::vector<PropertyResult> metrology_properties(const BatteryOptions &opts = {});

std::vector<PropertyResult> run_property_battery(const BatteryOptions &opts = {});

} // namespace qmetro
