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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmetro/states.hpp"

namespace qmetro {

/// <J_l> and symmetrized <(J_k J_l + J_l J_k)/2>.
struct MomentSet {
    int n = 0;
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    Eigen::Matrix3d second = Eigen::Matrix3d::Zero();

    [[nodiscard]] double first(Axis a) const { return mean(static_cast<int>(a)); }
    [[nodiscard]] double second_moment(Axis a) const { return second(static_cast<int>(a), static_cast<int>(a)); }
    [[nodiscard]] double var(Axis a) const { return second_moment(a) - first(a) * first(a); }
    [[nodiscard]] double casimir() const { return second.trace(); }

    /// PSD second moments and the Casimir bound, within 1e-9 relative; throws Unphysical.
    void validate() const;
};

MomentSet moments(const QuantumState &s);

enum class Verdict { Satisfied, SatisfiedBoundary, Violated, Inapplicable };
const char *to_string(Verdict v);

struct WitnessReport {
    std::string criterion;
    double value = 0.0;
    double threshold = 0.0;
    Verdict verdict = Verdict::Inapplicable;
    std::optional<int> depth; ///< certified entanglement depth, when the criterion gives one
    std::string note;

    [[nodiscard]] bool violated() const { return verdict == Verdict::Violated; }
};

/// Violated when value < threshold (ViolatedBelow) or value > threshold (ViolatedAbove), beyond 1e-9 max(1, |threshold|).
enum class Sense { ViolatedBelow, ViolatedAbove };
WitnessReport judge(std::string criterion, double value, double threshold, Sense sense);

/// N Var(J_squeezed) / (<J_a>^2 + <J_b>^2); inapplicable when the denominator is <= 1e-12.
WitnessReport xi_squared_s(const MomentSet &m, Axis squeezed = Axis::x, Axis a = Axis::y, Axis b = Axis::z);

/// The optimal spin squeezing inequalities for every axis assignment.
struct SsiReports {
    WitnessReport casimir;                 ///< sum <J_l^2> <= N(N+2)/4 (all states)
    WitnessReport singlet;                 ///< sum Var(J_l) >= N/2
    std::array<WitnessReport, 3> spsq2;    ///< indexed by m: <J_k^2>+<J_l^2>-N/2 <= (N-1) Var(J_m)
    std::array<WitnessReport, 3> spsq3;    ///< indexed by m: (N-1)[Var(J_k)+Var(J_l)] >= <J_m^2> + N(N-2)/4

    [[nodiscard]] std::vector<WitnessReport> all() const;
};
/// Throws Unphysical when the all-states inequality fails beyond 1e-8.
SsiReports optimal_ssi(const MomentSet &m);

/// (N-1) Var(J_squeezed) / (<J_a^2> + <J_b^2> - N/2)
WitnessReport xi_squared_os(const MomentSet &m, Axis squeezed = Axis::x, Axis a = Axis::y, Axis b = Axis::z);

/// sum Var(J_l) / (N/2); the note carries N xi^2, a bound on the non-entangled spins.
WitnessReport xi_squared_singlet(const MomentSet &m);

/// F_Q > N certifies entanglement; the depth comes from depth_certificate.
WitnessReport qfi_entanglement(double fq, int n, const std::string &generator = "J");
WitnessReport qfi_entanglement(const QuantumState &s, const CollectiveOperator &a);

/// N / F_Q (infinite when F_Q = 0).
double chi_squared(const QuantumState &s, const CollectiveOperator &generator);

/// s k^2 + (N - s k)^2 with s = floor(N/k)
double k_producible_bound(int n, int k);
/// Average-QFI bound for k-producible states; k = 1 gives 2N/3.
double k_producible_avg_bound(int n, int k);

struct DepthCertificate {
    int k = 1;                         ///< least k with F_Q <= bound(k)
    bool boundary = false;             ///< F_Q equals bound(k) within tolerance
    bool genuine_multipartite = false; ///< exceeds (N-1)^2 + 1
    double bound = 0.0;                ///< bound(k)
};
/// Throws Unphysical for F_Q > N^2 + 1e-6 and InvalidArgument for negative input.
DepthCertificate depth_certificate(double fq, int n);
DepthCertificate avg_depth_certificate(double avg_fq, int n);

struct AvgQfiReport {
    double value = 0.0;                ///< (F_Q[J_x] + F_Q[J_y] + F_Q[J_z]) / 3
    std::array<double, 3> per_axis{};
    double separable_bound = 0.0;      ///< 2N/3
    double biseparable_bound = 0.0;    ///< (N^2 + 1)/3
    double max_bound = 0.0;            ///< N(N+2)/3
    double spin_length_bound = 0.0;    ///< (4/3)(<J^2> - |<J>|^2)
    std::vector<double> k_producible;  ///< entry k-1 for k = 1..N
    DepthCertificate depth;

    [[nodiscard]] WitnessReport report() const;
};
AvgQfiReport avg_qfi(const QuantumState &s);

struct Macroscopicity {
    double n_eff = 0.0;
    Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
    double grid_max = 0.0;      ///< best F_Q[J_n] on the grid
    std::size_t grid_index = 0;
    double refined_max = 0.0;   ///< after local refinement
};

/// n_points directions on a golden spiral over the sphere.
std::vector<Eigen::Vector3d> golden_spiral(std::size_t n_points);

/**
 * N_eff = max_n F_Q[rho, 2 J_n] / (4N) over uniform collective directions:
 * grid scan of the 3x3 Fisher matrix quadratic form, then local refinement.
 */
Macroscopicity macroscopicity(const QuantumState &s, std::size_t grid_points = 256);

/// Log-log slope of max_A Var(A) = N N_eff over a family of sizes (at least two sizes).
double macroscopic_index(const std::function<QuantumState(int)> &family, const std::vector<int> &sizes);

/// (1/N(N-1)) sum_{m != n} rho_mn; full representation, 2 <= N <= 10.
ComplexMatrix avg_two_particle_dm(const QuantumState &s);
/// Collective first and second moments reconstructed from the averaged two-particle state.
MomentSet moments_from_two_particle(const ComplexMatrix &rho2, int n);

/// Every criterion above evaluated on one state (used by the CLI and the soundness checks).
std::vector<WitnessReport> witness_battery(const QuantumState &s);

} // namespace qmetro
