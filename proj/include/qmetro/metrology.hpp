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

#include "qmetro/noise.hpp"
#include "qmetro/states.hpp"

namespace qmetro {

/// Probe, generator A of rho_theta = e^{-i theta A} rho e^{i theta A}, measured observable M, and theta0.
struct Scenario {
    std::string id;
    QuantumState probe;
    CollectiveOperator generator;
    CollectiveOperator measured;
    double theta0 = 0.0;
    double gamma_b = 1.0; ///< theta = gamma B t; metadata only

    [[nodiscard]] int n() const { return probe.rep().n_qubits; }
    void validate() const;
};

/// Polarized along z, generator J_y, M = J_x.
Scenario ramsey_scenario(int n, Representation rep, double theta0 = 0.0);
/// GHZ along z, generator J_z, M = sigma_x^(x)N.
Scenario ghz_parity_scenario(int n, Representation rep, double theta0 = 0.0);
/// Dicke(N, N/2), generator J_y, M = J_z^2. N even.
Scenario dicke_scenario(int n, Representation rep, double theta0 = 0.0);
/// Ground state of J_x^2 - Lambda J_z, generator J_y, M = J_x.
Scenario squeezed_scenario(const SqueezingSpec &spec, double theta0 = 0.0);
/// PI singlet, generator sum_n n j_y^(n) (or J_y when homogeneous), M = J_z^2. Full representation.
Scenario gradient_scenario(int n, double theta0 = 0.0, bool homogeneous = false);

/// A^2 for an operator, labelled.
CollectiveOperator square(const CollectiveOperator &a);

/// Rotations by one generator, reusing its spectral decomposition.
class Rotator {
  public:
    explicit Rotator(const CollectiveOperator &generator);
    [[nodiscard]] QuantumState apply(const QuantumState &s, double theta) const;

  private:
    Representation rep_;
    SpectralDecomposition spec_;
};

struct ErrorPropagation {
    bool sensitive = false;   ///< false: no sensitivity at theta0
    bool limit = false;       ///< theta -> theta0 limit was taken
    double variance = 0.0;    ///< (Delta theta)^2; +inf without sensitivity
    double precision_inv = 0.0; ///< (Delta theta)^-2; 0 without sensitivity
    double mean = 0.0;        ///< <M> at theta0
    double var_m = 0.0;       ///< (Delta M)^2 at theta0
    double slope = 0.0;       ///< d<M>/dtheta = i<[A, M]> at theta0
    int var_order = -1;       ///< leading order a of (Delta M)^2 in delta (limit case)
    int slope_order = -1;     ///< leading order b of d<M>/dtheta in delta (limit case)
    std::string method;
};

/**
 * (Delta M)^2 / |d<M>/dtheta|^2 at theta0. The slope is i<[A, M]>. When the
 * slope and (Delta M)^2 both vanish the theta -> theta0 limit is taken from
 * Taylor coefficients built on nested commutators C_{k+1} = i[A, C_k]:
 * with (Delta M)^2 ~ v_a delta^a and slope ~ d_b delta^b the limit is
 * v_a / d_b^2 if a = 2b, 0 if a > 2b, and no sensitivity if a < 2b.
 */
ErrorPropagation error_propagation(const Scenario &sc, int max_order = 6);

struct DerivativeCheck {
    double analytic = 0.0;
    double finite_difference = 0.0;
    double rel_error = 0.0; ///< relative to max(|analytic|, |fd|, 1e-12 ||M|| ||A||)
};
/// i<[A, M]> against a central difference of <M>(theta) with step h.
DerivativeCheck derivative_check(const Scenario &sc, double h = 1e-5);

struct CurvePoint {
    double theta = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};
/// <M>(theta) and (Delta M)^2(theta) by explicit rotation of the probe.
std::vector<CurvePoint> ramsey_curve(const Scenario &sc, const std::vector<double> &thetas);

/// Closed forms of the three textbook schemes.
CurvePoint ramsey_closed_form(const QuantumState &probe, double theta);
CurvePoint ghz_parity_closed_form(int n, double theta);
double dicke_mean_closed_form(int n, double theta);

struct FrontierRow {
    double lambda = 0.0;
    double polarization = 0.0;   ///< <J_z>/J_max
    double precision_inv = 0.0;  ///< (Delta theta)^-2
    double scaled = 0.0;         ///< (Delta theta)^-2 / N^2
    double ceiling = 0.0;        ///< 2N + N^2(1 - polarization^2)
    double qfi = 0.0;            ///< F_Q[ground state, J_y]
    bool under_ceiling = true;
};

FrontierRow frontier_row(int n, double lambda);
/// One row per Lambda.
std::vector<FrontierRow> squeezing_frontier(int n, const std::vector<double> &lambdas);
/// Lambda solved per target polarization in (0, 1) by bisection on log10 Lambda in [-9, 6].
std::vector<FrontierRow> squeezing_frontier_at(int n, const std::vector<double> &polarizations);
/// Lambda giving <J_z>/J_max = target.
double lambda_for_polarization(int n, double target);

struct CrbReport {
    double variance = 0.0;   ///< (Delta theta)^2 from error propagation
    double inv_qfi = 0.0;    ///< 1/F_Q
    double qfi = 0.0;
    double gap = 0.0;        ///< variance - inv_qfi
    bool holds = true;       ///< variance >= inv_qfi - 1e-8
};
CrbReport crb_consistency(const Scenario &sc);

struct SweepRecord {
    std::string scenario;
    int n = 0;
    double p = 0.0;
    double lambda = 0.0;
    double theta0 = 0.0;
    double precision_inv = 0.0;
    double qfi = 0.0;
    double bound_sep = 0.0;        ///< N
    double bound_bisep = 0.0;      ///< (N-1)^2 + 1
    double bound_heisenberg = 0.0; ///< N^2
    double var_jx = 0.0;           ///< (Delta J_x)^2 at the optimum
    double noise_ceiling = 0.0;    ///< N/p; +inf for p = 0
};

struct SweepOptions {
    double lambda_min = 1e-4;
    double lambda_max = 1e3;
    int coarse_points = 36;
    int golden_iterations = 60;
    bool compute_qfi = true;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::optional<double> exponent;       ///< log-log slope, with at least three sizes
    std::vector<double> coarse_grid;      ///< Lambda grid used by every size
    std::vector<std::string> failures;    ///< invariant violations, first one names the record
};

/// Noisy squeezed-state precision (Delta theta)^-2 at one Lambda; Var(J_x) via out parameter.
double noisy_precision(int n, double p, double lambda, double *var_jx = nullptr);

/**
 * For each N: max over Lambda of (Delta theta)^-2 for the H(Lambda) ground
 * state under depolarizing noise p, by a coarse log grid and golden-section
 * refinement. Checks the N/p ceiling, the Heisenberg limit, Var(J_x) >= pN/4
 * and the Cramer-Rao bound on every record.
 */
SweepResult noisy_scaling_sweep(double p, const std::vector<int> &sizes, const SweepOptions &opts = {});

/// Ordinary least squares slope of log y on log x.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

} // namespace qmetro
