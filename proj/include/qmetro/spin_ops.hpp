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
#include <variant>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

enum class Axis { x = 0, y = 1, z = 2 };

const char *to_string(Axis a);
Axis parse_axis(const std::string &s);

/**
 * Hilbert space a state or operator lives in: the full 2^N qubit space or the
 * (N+1)-dimensional symmetric (Dicke) subspace.
 *
 * Symmetric basis index i carries i excitations, i.e. J_z eigenvalue N/2 - i.
 * Full basis index bits: qubit 0 is the most significant bit, bit value 0 is
 * spin up along z.
 */
struct Representation {
    enum class Kind { Full, Symmetric };

    Kind kind = Kind::Symmetric;
    int n_qubits = 1;

    static constexpr int kMaxFullVector = 12;
    static constexpr int kMaxFullDensity = 10;
    static constexpr int kMaxSymmetric = 4096;

    static Representation full(int n) { return {Kind::Full, n}; }
    static Representation symmetric(int n) { return {Kind::Symmetric, n}; }

    [[nodiscard]] Eigen::Index dim() const;
    [[nodiscard]] bool is_full() const { return kind == Kind::Full; }
    [[nodiscard]] std::string name() const;

    /// Throws SizeLimit naming the limit when N exceeds it.
    void check_vector_limit() const;
    void check_density_limit() const;

    bool operator==(const Representation &) const = default;
};

using Direction = Eigen::Vector3d;

/// Where an operator came from; used for labels in reports.
struct AxisSource {
    Axis axis;
};
struct DirectionSource {
    Direction n;
};
struct SiteWeightSource {
    Axis axis;
    std::vector<double> weights;
};
struct UserSource {
    std::string label;
};
using Provenance = std::variant<AxisSource, DirectionSource, SiteWeightSource, UserSource>;

/**
 * Hermitian operator on a representation. Stored sparse: collective spin
 * operators are banded in both representations.
 */
struct CollectiveOperator {
    SparseMatrix matrix;
    Representation rep;
    Provenance provenance;

    [[nodiscard]] ComplexMatrix dense() const { return ComplexMatrix(matrix); }
    [[nodiscard]] std::string label() const;
};

/// J_axis = sum_n sigma_axis^(n) / 2. Cached per (axis, representation).
const CollectiveOperator &build_collective(Axis axis, Representation rep);

/// J_n = sum_l n_l J_l for a unit vector n.
CollectiveOperator build_direction(const Direction &n, Representation rep);

/// sum_n w_n j_axis^(n) in the full representation.
CollectiveOperator build_site_weighted(Axis axis, const std::vector<double> &weights, Representation rep);

/**
 * Gradient generator sum_n n j_y^(n) with 1-based site index n. With
 * centered = true the weights are n - (N+1)/2. Full representation only.
 */
CollectiveOperator build_gradient_generator(Representation rep, bool centered = false);

/// Wraps an arbitrary Hermitian matrix; throws InvalidArgument if not Hermitian.
CollectiveOperator make_operator(const ComplexMatrix &m, Representation rep, std::string label);

/// Single-qubit Pauli matrix sigma_axis.
ComplexMatrix pauli(Axis axis);

/// sigma_x tensor ... tensor sigma_x; in the symmetric subspace it reverses the basis.
CollectiveOperator parity_x(Representation rep);

/// Number of cached collective operators (for tests of the cache).
std::size_t collective_cache_size();

class QuantumState;

/// e^{-i theta A} rho e^{+i theta A}; pure states stay pure.
QuantumState rotate(const QuantumState &state, const CollectiveOperator &generator, double theta);

} // namespace qmetro
