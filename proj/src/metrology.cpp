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

#include "qmetro/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmetro/fisher.hpp"

namespace qmetro {

void Scenario::validate() const {
    if (!(probe.rep() == generator.rep) || !(probe.rep() == measured.rep)) {
        throw InvalidArgument("scenario '" + id + "': probe, generator and measured observable must share one "
                              "representation");
    }
}

CollectiveOperator square(const CollectiveOperator &a) {
    SparseMatrix m = a.matrix * a.matrix;
    m.makeCompressed();
    return {std::move(m), a.rep, UserSource{a.label() + "^2"}};
}

Scenario ramsey_scenario(int n, Representation rep, double theta0) {
    return {"ramsey", polarized(n, Axis::z, rep), build_collective(Axis::y, rep), build_collective(Axis::x, rep),
            theta0};
}

Scenario ghz_parity_scenario(int n, Representation rep, double theta0) {
    return {"ghz_parity", ghz(n, rep, Axis::z), build_collective(Axis::z, rep), parity_x(rep), theta0};
}

Scenario dicke_scenario(int n, Representation rep, double theta0) {
    if (n % 2 != 0) {
        throw InvalidArgument("dicke scenario: N must be even (got " + std::to_string(n) + ")");
    }
    return {"dicke", dicke(n, n / 2, rep), build_collective(Axis::y, rep),
            square(build_collective(Axis::z, rep)), theta0};
}

Scenario squeezed_scenario(const SqueezingSpec &spec, double theta0) {
    const Representation rep = Representation::symmetric(spec.n);
    return {"squeezed", squeezed_ground_state(spec), build_collective(Axis::y, rep), build_collective(Axis::x, rep),
            theta0};
}

Scenario gradient_scenario(int n, double theta0, bool homogeneous) {
    const Representation rep = Representation::full(n);
    QuantumState probe = singlet_pi(n);
    CollectiveOperator gen = homogeneous ? build_collective(Axis::y, rep) : build_gradient_generator(rep);
    return {homogeneous ? "singlet_homogeneous" : "singlet_gradient", std::move(probe), std::move(gen),
            square(build_collective(Axis::z, rep)), theta0};
}

Rotator::Rotator(const CollectiveOperator &generator)
    : rep_(generator.rep), spec_(hermitian_eigendecompose(generator.dense())) {}

QuantumState Rotator::apply(const QuantumState &s, double theta) const {
    check_same_rep(s, rep_, "Rotator");
    if (theta == 0.0) {
        return s;
    }
    ComplexVector phases(spec_.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::polar(1.0, -theta * spec_.eigenvalues(k));
    }
    const ComplexMatrix &v = spec_.eigenvectors;
    if (s.is_pure()) {
        const ComplexVector coeff = phases.cwiseProduct(v.adjoint() * s.vector());
        ComplexVector psi = v * coeff;
        psi /= psi.norm();
        return QuantumState::pure(s.rep(), std::move(psi), s.label());
    }
    const ComplexMatrix u = v * phases.asDiagonal() * v.adjoint();
    return QuantumState::density_unchecked(s.rep(), u * s.matrix() * u.adjoint(), s.label());
}

namespace {

SparseMatrix commutator_step(const SparseMatrix &a, const SparseMatrix &c) {
    SparseMatrix r = kI * (SparseMatrix(a * c) - SparseMatrix(c * a));
    r.prune(Complex(0.0));
    return r;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

QuantumState state_at(const Scenario &sc, double theta) {
    if (theta == 0.0) {
        return sc.probe;
    }
    return Rotator(sc.generator).apply(sc.probe, theta);
}

} // namespace

ErrorPropagation error_propagation(const Scenario &sc, int max_order) {
    sc.validate();
    if (max_order < 2) {
        throw InvalidArgument("error_propagation: max_order must be at least 2");
    }
    const QuantumState rho = state_at(sc, sc.theta0);
    const SparseMatrix &a = sc.generator.matrix;
    const SparseMatrix &m = sc.measured.matrix;
    const SparseMatrix m2 = m * m;
    const double norm_a = norm_bound(a);
    const double norm_m = norm_bound(m);

    // |x| below 1e-12 of the coefficient's natural size counts as zero.
    auto is_zero = [&](double x, int order, int m_power, double extra = 1.0) {
        const double scale = std::pow(norm_m, m_power) * std::pow(2.0 * norm_a, order) / factorial(order) * extra;
        return std::abs(x) <= 1e-12 * std::max(1.0, scale);
    };

    ErrorPropagation out;
    std::vector<SparseMatrix> c{m};
    c.push_back(commutator_step(a, m));
    const double f0 = expectation(rho, c[0]);
    const double f1 = expectation(rho, c[1]);
    const double g0 = expectation(rho, m2);
    out.mean = f0;
    out.var_m = std::max(0.0, g0 - f0 * f0);
    out.slope = f1;

    if (!is_zero(f1, 1, 1)) {
        out.sensitive = true;
        out.method = "direct";
        out.variance = out.var_m / (f1 * f1);
        out.precision_inv = out.var_m > 0.0 ? (f1 * f1) / out.var_m : std::numeric_limits<double>::infinity();
        return out;
    }
    if (!is_zero(g0 - f0 * f0, 0, 2)) {
        out.sensitive = false;
        out.method = "no sensitivity at theta0 (flat response, nonzero variance)";
        out.variance = std::numeric_limits<double>::infinity();
        return out;
    }

    // theta -> theta0 limit from Taylor coefficients of <M>, <M^2>.
    const int k_max = max_order;
    std::vector<double> f{f0, f1};
    for (int k = 2; k <= k_max + 1; ++k) {
        c.push_back(commutator_step(a, c.back()));
        f.push_back(expectation(rho, c.back()) / factorial(k));
    }
    std::vector<double> g{g0};
    SparseMatrix d = m2;
    for (int k = 1; k <= k_max; ++k) {
        d = commutator_step(a, d);
        g.push_back(expectation(rho, d) / factorial(k));
    }
    std::optional<int> var_order;
    std::optional<int> slope_order;
    std::vector<double> v(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        double conv = 0.0;
        for (int i = 0; i <= k; ++i) {
            conv += f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(k - i)];
        }
        v[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k)] - conv;
        if (!var_order && !is_zero(v[static_cast<std::size_t>(k)], k, 2)) {
            var_order = k;
        }
    }
    for (int k = 0; k < k_max; ++k) {
        const double dk = (k + 1) * f[static_cast<std::size_t>(k) + 1];
        if (!is_zero(dk, k + 1, 1, k + 1.0)) {
            slope_order = k;
            break;
        }
    }
    out.limit = true;
    out.var_order = var_order.value_or(-1);
    out.slope_order = slope_order.value_or(-1);
    if (!slope_order) {
        out.sensitive = false;
        out.method = "no sensitivity at theta0 (signal flat to order " + std::to_string(k_max) + ")";
        out.variance = std::numeric_limits<double>::infinity();
        return out;
    }
    const int b = *slope_order;
    const double db = (b + 1) * f[static_cast<std::size_t>(b) + 1];
    if (!var_order) {
        if (2 * b > k_max) {
            out.sensitive = false;
            out.method = "undetermined limit (increase max_order)";
            out.variance = std::numeric_limits<double>::infinity();
            return out;
        }
        out.sensitive = true;
        out.method = "limit: variance vanishes faster than slope^2";
        out.variance = 0.0;
        out.precision_inv = std::numeric_limits<double>::infinity();
        return out;
    }
    const int av = *var_order;
    if (av < 2 * b) {
        out.sensitive = false;
        out.method = "no sensitivity in the limit (variance dominates)";
        out.variance = std::numeric_limits<double>::infinity();
        return out;
    }
    out.sensitive = true;
    if (av > 2 * b) {
        out.method = "limit: variance vanishes faster than slope^2";
        out.variance = 0.0;
        out.precision_inv = std::numeric_limits<double>::infinity();
        return out;
    }
    const double va = v[static_cast<std::size_t>(av)];
    out.method = "limit (order " + std::to_string(av) + "/" + std::to_string(b) + ")";
    out.variance = va / (db * db);
    out.precision_inv = (db * db) / va;
    return out;
}

DerivativeCheck derivative_check(const Scenario &sc, double h) {
    sc.validate();
    const Rotator rot(sc.generator);
    const QuantumState rho = rot.apply(sc.probe, sc.theta0);
    DerivativeCheck out;
    out.analytic = expectation(rho, commutator_step(sc.generator.matrix, sc.measured.matrix));
    const double plus = expectation(rot.apply(sc.probe, sc.theta0 + h), sc.measured.matrix);
    const double minus = expectation(rot.apply(sc.probe, sc.theta0 - h), sc.measured.matrix);
    out.finite_difference = (plus - minus) / (2.0 * h);
    const double floor = 1e-12 * norm_bound(sc.measured.matrix) * norm_bound(sc.generator.matrix);
    const double denom = std::max({std::abs(out.analytic), std::abs(out.finite_difference), floor, 1e-300});
    out.rel_error = std::abs(out.analytic - out.finite_difference) / denom;
    return out;
}

std::vector<CurvePoint> ramsey_curve(const Scenario &sc, const std::vector<double> &thetas) {
    sc.validate();
    const Rotator rot(sc.generator);
    const SparseMatrix m2 = sc.measured.matrix * sc.measured.matrix;
    std::vector<CurvePoint> out;
    out.reserve(thetas.size());
    for (double t : thetas) {
        const QuantumState s = rot.apply(sc.probe, t);
        const double mean = expectation(s, sc.measured.matrix);
        out.push_back({t, mean, expectation(s, m2) - mean * mean});
    }
    return out;
}

CurvePoint ramsey_closed_form(const QuantumState &probe, double theta) {
    const Representation &rep = probe.rep();
    const CollectiveOperator &jx = build_collective(Axis::x, rep);
    const CollectiveOperator &jz = build_collective(Axis::z, rep);
    const double mx = expectation(probe, jx);
    const double mz = expectation(probe, jz);
    const double cross = expectation(probe, SparseMatrix(jx.matrix * jz.matrix));
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    CurvePoint p;
    p.theta = theta;
    p.mean = mz * s + mx * c;
    p.variance = variance(probe, jx) * c * c + variance(probe, jz) * s * s + (cross - mx * mz) * std::sin(2.0 * theta);
    return p;
}

CurvePoint ghz_parity_closed_form(int n, double theta) {
    const double c = std::cos(n * theta);
    return {theta, c, 1.0 - c * c};
}

double dicke_mean_closed_form(int n, double theta) {
    const double s = std::sin(theta);
    return n * (n + 2.0) / 8.0 * s * s;
}

FrontierRow frontier_row(int n, double lambda) {
    const Scenario sc = squeezed_scenario({n, lambda});
    const ErrorPropagation ep = error_propagation(sc);
    FrontierRow row;
    row.lambda = lambda;
    row.polarization = expectation(sc.probe, build_collective(Axis::z, sc.probe.rep())) / (0.5 * n);
    row.precision_inv = ep.sensitive ? ep.precision_inv : 0.0;
    row.scaled = row.precision_inv / (static_cast<double>(n) * n);
    row.qfi = qfi(sc.probe, sc.generator).value;
    row.ceiling = 2.0 * n + static_cast<double>(n) * n * (1.0 - row.polarization * row.polarization);
    row.under_ceiling = row.precision_inv <= row.ceiling + 1e-6;
    return row;
}

std::vector<FrontierRow> squeezing_frontier(int n, const std::vector<double> &lambdas) {
    std::vector<FrontierRow> rows;
    rows.reserve(lambdas.size());
    for (double l : lambdas) {
        rows.push_back(frontier_row(n, l));
    }
    return rows;
}

namespace {

double polarization_at(int n, double lambda) {
    const QuantumState s = squeezed_ground_state({n, lambda});
    return expectation(s, build_collective(Axis::z, s.rep())) / (0.5 * n);
}

} // namespace

double lambda_for_polarization(int n, double target) {
    double lo = -9.0;
    double hi = 6.0;
    const double p_lo = polarization_at(n, std::pow(10.0, lo));
    const double p_hi = polarization_at(n, std::pow(10.0, hi));
    if (!(target >= p_lo && target <= p_hi)) {
        std::ostringstream msg;
        msg << "polarization " << target << " is outside the reachable range [" << p_lo << ", " << p_hi
            << "] for N = " << n;
        throw InvalidArgument(msg.str());
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (polarization_at(n, std::pow(10.0, mid)) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::pow(10.0, 0.5 * (lo + hi));
}

std::vector<FrontierRow> squeezing_frontier_at(int n, const std::vector<double> &polarizations) {
    std::vector<double> lambdas;
    lambdas.reserve(polarizations.size());
    for (double p : polarizations) {
        lambdas.push_back(lambda_for_polarization(n, p));
    }
    return squeezing_frontier(n, lambdas);
}

CrbReport crb_consistency(const Scenario &sc) {
    const ErrorPropagation ep = error_propagation(sc);
    CrbReport r;
    r.qfi = qfi(sc.probe, sc.generator).value;
    r.variance = ep.variance;
    r.inv_qfi = r.qfi > 0.0 ? 1.0 / r.qfi : std::numeric_limits<double>::infinity();
    r.gap = std::isinf(r.variance) && std::isinf(r.inv_qfi) ? 0.0 : r.variance - r.inv_qfi;
    r.holds = std::isinf(r.variance) || r.variance >= r.inv_qfi - 1e-8;
    return r;
}

namespace {

QuantumState noisy_squeezed_state(int n, double p, double lambda) {
    const QuantumState ground = squeezed_ground_state({n, lambda});
    const QuantumState full = to_full(ground);
    if (p == 0.0) {
        return full;
    }
    return apply_noise(full, NoiseChannel::depolarizing(p));
}

} // namespace

double noisy_precision(int n, double p, double lambda, double *var_jx) {
    const QuantumState s = noisy_squeezed_state(n, p, lambda);
    const Representation rep = s.rep();
    const Scenario sc{"squeezed_depolarizing", s, build_collective(Axis::y, rep), build_collective(Axis::x, rep), 0.0};
    const ErrorPropagation ep = error_propagation(sc);
    if (var_jx != nullptr) {
        *var_jx = ep.var_m;
    }
    return ep.sensitive ? ep.precision_inv : 0.0;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("loglog_slope: need at least two (x, y) pairs");
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = static_cast<double>(x.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

SweepResult noisy_scaling_sweep(double p, const std::vector<int> &sizes, const SweepOptions &opts) {
    if (sizes.empty()) {
        throw InvalidArgument("noisy_scaling_sweep: empty N list");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("noisy_scaling_sweep: p must lie in [0, 1]");
    }
    if (opts.coarse_points < 3 || !(opts.lambda_min > 0.0) || !(opts.lambda_max > opts.lambda_min)) {
        throw InvalidArgument("noisy_scaling_sweep: need >= 3 coarse points and 0 < lambda_min < lambda_max");
    }
    std::vector<int> ns = sizes;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    SweepResult result;
    const double u_lo = std::log10(opts.lambda_min);
    const double u_hi = std::log10(opts.lambda_max);
    std::vector<double> us;
    for (int i = 0; i < opts.coarse_points; ++i) {
        const double u = u_lo + (u_hi - u_lo) * i / (opts.coarse_points - 1);
        us.push_back(u);
        result.coarse_grid.push_back(std::pow(10.0, u));
    }

    for (int n : ns) {
        auto h = [&](double u) { return noisy_precision(n, p, std::pow(10.0, u)); };
        std::size_t best = 0;
        std::vector<double> coarse;
        for (std::size_t i = 0; i < us.size(); ++i) {
            coarse.push_back(h(us[i]));
            if (coarse[i] > coarse[best]) {
                best = i;
            }
        }
        double a = us[best == 0 ? 0 : best - 1];
        double b = us[std::min(best + 1, us.size() - 1)];
        double best_u = us[best];
        double best_v = coarse[best];
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double h1 = h(x1);
        double h2 = h(x2);
        for (int it = 0; it < opts.golden_iterations; ++it) {
            if (h1 >= h2) {
                b = x2;
                x2 = x1;
                h2 = h1;
                x1 = b - inv_phi * (b - a);
                h1 = h(x1);
            } else {
                a = x1;
                x1 = x2;
                h1 = h2;
                x2 = a + inv_phi * (b - a);
                h2 = h(x2);
            }
        }
        for (auto [x, v] : {std::pair{x1, h1}, std::pair{x2, h2}}) {
            if (v > best_v) {
                best_v = v;
                best_u = x;
            }
        }

        SweepRecord rec;
        rec.scenario = "squeezed_depolarizing";
        rec.n = n;
        rec.p = p;
        rec.lambda = std::pow(10.0, best_u);
        rec.theta0 = 0.0;
        rec.precision_inv = noisy_precision(n, p, rec.lambda, &rec.var_jx);
        rec.bound_sep = n;
        rec.bound_bisep = (n - 1.0) * (n - 1.0) + 1.0;
        rec.bound_heisenberg = static_cast<double>(n) * n;
        rec.noise_ceiling = p > 0.0 ? n / p : std::numeric_limits<double>::infinity();
        if (opts.compute_qfi) {
            const QuantumState s = noisy_squeezed_state(n, p, rec.lambda);
            rec.qfi = qfi(s, build_collective(Axis::y, s.rep())).value;
        }

        std::ostringstream tag;
        tag << "record N=" << n << " p=" << p << " lambda=" << rec.lambda;
        if (rec.precision_inv > rec.noise_ceiling + 1e-6) {
            result.failures.push_back(tag.str() + ": precision exceeds the N/p ceiling");
        }
        if (rec.precision_inv > rec.bound_heisenberg + 1e-6) {
            result.failures.push_back(tag.str() + ": precision exceeds N^2");
        }
        if (rec.var_jx < p * n / 4.0 - 1e-9) {
            result.failures.push_back(tag.str() + ": Var(J_x) below pN/4");
        }
        if (opts.compute_qfi && rec.precision_inv > 0.0 && 1.0 / rec.precision_inv < 1.0 / rec.qfi - 1e-8) {
            result.failures.push_back(tag.str() + ": Cramer-Rao bound violated");
        }
        result.records.push_back(rec);
    }

    if (result.records.size() >= 3) {
        std::vector<double> x;
        std::vector<double> y;
        for (const auto &r : result.records) {
            if (r.precision_inv > 0.0 && std::isfinite(r.precision_inv)) {
                x.push_back(r.n);
                y.push_back(r.precision_inv);
            }
        }
        if (x.size() >= 3) {
            result.exponent = loglog_slope(x, y);
        }
    }
    return result;
}

} // namespace qmetro
