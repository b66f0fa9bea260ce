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

#include "qmetro/properties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmetro/fisher.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/noise.hpp"
#include "qmetro/roofs.hpp"
#include "qmetro/witnesses.hpp"

namespace qmetro {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

ComplexMatrix Sampler::ginibre(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = normal_(rng_);
            const double im = normal_(rng_);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

ComplexVector Sampler::vector(Eigen::Index d) {
    ComplexVector v = ginibre(d, 1).col(0);
    return v / v.norm();
}

ComplexMatrix Sampler::hermitian(Eigen::Index d) {
    const ComplexMatrix g = ginibre(d, d);
    return 0.5 * (g + g.adjoint());
}

ComplexMatrix Sampler::unitary(Eigen::Index d) {
    const ComplexMatrix g = ginibre(d, d);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex diag = r(k, k);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(k) *= diag / mag;
        }
    }
    return q;
}

ComplexMatrix Sampler::density(Eigen::Index d, Eigen::Index rank) {
    if (rank <= 0 || rank > d) {
        rank = d;
    }
    const ComplexMatrix g = ginibre(d, rank);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

QuantumState Sampler::pure_state(Representation rep) { return QuantumState::pure(rep, vector(rep.dim()), "random"); }

QuantumState Sampler::mixed_state(Representation rep, Eigen::Index rank) {
    return QuantumState::density(rep, density(rep.dim(), rank), "random_mixed");
}

QuantumState Sampler::product(int n) {
    std::vector<ComplexVector> qubits;
    for (int i = 0; i < n; ++i) {
        qubits.push_back(vector(2));
    }
    return product_state(qubits);
}

ComplexMatrix trace_out_last(const ComplexMatrix &rho, Eigen::Index d_b) {
    const Eigen::Index d_a = rho.rows() / d_b;
    if (d_a * d_b != rho.rows() || rho.rows() != rho.cols()) {
        throw InvalidArgument("trace_out_last: dimension mismatch");
    }
    ComplexMatrix out = ComplexMatrix::Zero(d_a, d_a);
    for (Eigen::Index i = 0; i < d_a; ++i) {
        for (Eigen::Index j = 0; j < d_a; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index b = 0; b < d_b; ++b) {
                acc += rho(i * d_b + b, j * d_b + b);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

namespace {

/// Deviations are measured relative to max(1, |reference|).
class Tracker {
  public:
    Tracker(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

    void eq(double value, double reference) {
        ++samples_;
        worst_ = std::max(worst_, std::abs(value - reference) / std::max(1.0, std::abs(reference)));
    }
    void le(double value, double bound) {
        ++samples_;
        worst_ = std::max(worst_, (value - bound) / std::max(1.0, std::abs(bound)));
    }
    void flag(bool ok) {
        ++samples_;
        if (!ok) {
            worst_ = std::max(worst_, 1.0);
        }
    }
    void count(double violations) {
        ++samples_;
        worst_ += violations;
    }
    [[nodiscard]] PropertyResult result() const { return {name_, samples_, worst_, tol_, worst_ <= tol_}; }

  private:
    std::string name_;
    double tol_;
    int samples_ = 0;
    double worst_ = 0.0;
};

Representation full_of_dim(Eigen::Index d) {
    int n = 0;
    while ((Eigen::Index{1} << n) < d) {
        ++n;
    }
    return Representation::full(n);
}

QuantumState dens(const ComplexMatrix &rho) { return QuantumState::density(full_of_dim(rho.rows()), rho); }

CollectiveOperator op(const ComplexMatrix &a) { return make_operator(a, full_of_dim(a.rows()), "A"); }

double fq(const ComplexMatrix &rho, const ComplexMatrix &a) { return qfi(dens(rho), op(a)).value; }

Representation random_full(Sampler &s, int max_n = 4) { return Representation::full(s.integer(1, max_n)); }

Eigen::Index random_rank(Sampler &s, Eigen::Index d) { return s.integer(1, static_cast<int>(d)); }

ComplexMatrix matrix_power(const ComplexMatrix &a, int q) {
    ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < q; ++i) {
        out = out * a;
    }
    return out;
}

} // namespace

std::vector<PropertyResult> fisher_properties(const BatteryOptions &opts) {
    Sampler s(opts.seed);
    const int n_samples = opts.samples;
    std::vector<PropertyResult> out;

    {
        Tracker t("qfi convexity (a)", 1e-8);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s);
            const Eigen::Index d = rep.dim();
            const ComplexMatrix r1 = s.density(d, random_rank(s, d));
            const ComplexMatrix r2 = s.density(d, random_rank(s, d));
            const ComplexMatrix a = s.hermitian(d);
            const double p = s.uniform();
            t.le(fq(p * r1 + (1.0 - p) * r2, a), p * fq(r1, a) + (1.0 - p) * fq(r2, a) + 1e-8);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("qfi diagonal shift (b)", 1e-9);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s);
            const Eigen::Index d = rep.dim();
            const QuantumState rho = s.mixed_state(rep, random_rank(s, d));
            const StateSpectrum spec = state_spectrum(rho);
            RealVector shift(d);
            for (Eigen::Index k = 0; k < d; ++k) {
                shift(k) = s.uniform(-2.0, 2.0);
            }
            const ComplexMatrix dmat = spec.vectors * shift.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
            const ComplexMatrix a = s.hermitian(d);
            t.eq(qfi(rho, op(a + 0.5 * (dmat + dmat.adjoint()))).value, qfi(rho, op(a)).value);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("qfi unitary covariance (c)", 1e-9);
        for (int i = 0; i < n_samples; ++i) {
            const Eigen::Index d = random_full(s).dim();
            const ComplexMatrix rho = s.density(d, random_rank(s, d));
            const ComplexMatrix u = s.unitary(d);
            const ComplexMatrix a = s.hermitian(d);
            const ComplexMatrix moved = u * rho * u.adjoint();
            const ComplexMatrix back = u.adjoint() * a * u;
            t.eq(fq(0.5 * (moved + moved.adjoint()), a), fq(rho, 0.5 * (back + back.adjoint())));
        }
        out.push_back(t.result());
    }
    {
        Tracker t("qfi tensor additivity (d)", 1e-8);
        for (int i = 0; i < n_samples; ++i) {
            const Eigen::Index da = random_full(s, 2).dim();
            const Eigen::Index db = random_full(s, 2).dim();
            const ComplexMatrix r1 = s.density(da, random_rank(s, da));
            const ComplexMatrix r2 = s.density(db, random_rank(s, db));
            const ComplexMatrix a = s.hermitian(da);
            const ComplexMatrix b = s.hermitian(db);
            const ComplexMatrix gen =
                kron(a, ComplexMatrix::Identity(db, db)) + kron(ComplexMatrix::Identity(da, da), b);
            t.eq(fq(kron(r1, r2), gen), fq(r1, a) + fq(r2, b));
        }
        out.push_back(t.result());
    }
    {
        Tracker t("qfi direct-sum additivity (e)", 1e-8);
        for (int i = 0; i < n_samples; ++i) {
            const Eigen::Index d = random_full(s, 3).dim();
            const ComplexMatrix r1 = s.density(d, random_rank(s, d));
            const ComplexMatrix r2 = s.density(d, random_rank(s, d));
            const ComplexMatrix a1 = s.hermitian(d);
            const ComplexMatrix a2 = s.hermitian(d);
            const double p = s.uniform();
            t.eq(fq(direct_sum(p * r1, (1.0 - p) * r2), direct_sum(a1, a2)),
                 p * fq(r1, a1) + (1.0 - p) * fq(r2, a2));
        }
        out.push_back(t.result());
    }
    {
        Tracker mono("qfi partial-trace monotonicity (f)", 1e-8);
        Tracker prod("qfi partial trace of products (f)", 1e-8);
        for (int i = 0; i < n_samples; ++i) {
            const Eigen::Index da = random_full(s, 2).dim();
            const Eigen::Index db = random_full(s, 2).dim();
            const ComplexMatrix a = s.hermitian(da);
            const ComplexMatrix gen = kron(a, ComplexMatrix::Identity(db, db));
            const ComplexMatrix rab = s.density(da * db, random_rank(s, da * db));
            mono.le(fq(trace_out_last(rab, db), a), fq(rab, gen) + 1e-8);
            const ComplexMatrix ra = s.density(da, random_rank(s, da));
            const ComplexMatrix rb = s.density(db, random_rank(s, db));
            prod.eq(fq(kron(ra, rb), gen), fq(ra, a));
        }
        out.push_back(mono.result());
        out.push_back(prod.result());
    }
    {
        Tracker t("white-noise closed form (g)", 1e-9);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s);
            const QuantumState psi = s.pure_state(rep);
            const CollectiveOperator a = op(s.hermitian(rep.dim()));
            const double p = s.uniform();
            t.eq(qfi(mix_white_noise(psi, p), a).value,
                 white_noise_qfi(p, static_cast<double>(rep.dim()), qfi_pure(psi, a)));
        }
        out.push_back(t.result());
    }
    {
        Tracker alt("qfi = qfi_alternative", 1e-9);
        Tracker trl2("Tr(rho L^2) = F_Q", 1e-8);
        Tracker anti("SLD anticommutator equation", 1e-8);
        Tracker trl("Tr(rho L) = 0", 1e-9);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s);
            const Eigen::Index d = rep.dim();
            const QuantumState rho = s.mixed_state(rep, random_rank(s, d));
            const CollectiveOperator a = op(s.hermitian(d));
            const double f = qfi(rho, a).value;
            alt.eq(qfi_alternative(rho, a), f);
            const ComplexMatrix l = sld(rho, a);
            const ComplexMatrix &r = rho.matrix();
            trl2.eq((r * l * l).trace().real(), f);
            const ComplexMatrix lhs = 0.5 * (l * r + r * l);
            const ComplexMatrix am = a.dense();
            const ComplexMatrix rhs = kI * (r * am - am * r);
            anti.eq(max_abs(lhs - rhs), 0.0);
            trl.eq((r * l).trace().real(), 0.0);
        }
        out.push_back(alt.result());
        out.push_back(trl2.result());
        out.push_back(anti.result());
        out.push_back(trl.result());
    }
    {
        Tracker t("4 I_WY <= F_Q <= 4 Var", 1e-8);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s);
            const QuantumState rho = s.mixed_state(rep, random_rank(s, rep.dim()));
            const CollectiveOperator a = op(s.hermitian(rep.dim()));
            const double f = qfi(rho, a).value;
            const double wy = wigner_yanase(rho, a);
            t.le(-wy, 1e-10);
            t.le(4.0 * wy, f + 1e-8);
            t.le(f, 4.0 * variance(rho, a) + 1e-8);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("classical Fisher <= F_Q", 1e-6);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s, 3);
            const Eigen::Index d = rep.dim();
            const QuantumState rho = s.mixed_state(rep, random_rank(s, d));
            const CollectiveOperator a = op(s.hermitian(d));
            const int k = s.integer(2, static_cast<int>(d) + 2);
            std::vector<ComplexMatrix> g;
            ComplexMatrix sum = ComplexMatrix::Zero(d, d);
            for (int j = 0; j < k; ++j) {
                const ComplexMatrix x = s.ginibre(d, d);
                g.push_back(x.adjoint() * x);
                sum += g.back();
            }
            const SpectralDecomposition spec = hermitian_eigendecompose(sum);
            const ComplexMatrix inv_sqrt = spec.eigenvectors *
                                           spec.eigenvalues.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                                           spec.eigenvectors.adjoint();
            std::vector<ComplexMatrix> elems;
            for (const auto &x : g) {
                const ComplexMatrix e = inv_sqrt * x * inv_sqrt;
                elems.push_back(0.5 * (e + e.adjoint()));
            }
            const Povm povm = Povm::general(elems);
            const double theta0 = s.uniform(-1.0, 1.0);
            const StateFamily family = [&](double th) { return rotate(rho, a, th); };
            const double fc = classical_fisher(family, povm, theta0).value;
            t.le(fc, qfi(rho, a).value + 1e-6);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("Mandelstam-Tamm bound", 0.0);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s);
            const QuantumState rho = s.mixed_state(rep, random_rank(s, rep.dim()));
            const CollectiveOperator a = op(s.hermitian(rep.dim()));
            const double f = qfi(rho, a).value;
            const double theta = f > 0.0 ? s.uniform(-1.0, 1.0) * std::numbers::pi / std::sqrt(f) : 0.0;
            t.flag(mandelstam_tamm_check(rho, a, theta).holds);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("F_Q[J_l] <= N^2 - 4<J_l>^2", 1e-6);
        for (int i = 0; i < n_samples; ++i) {
            const int n = s.integer(1, 8);
            const Representation rep = n <= 4 && s.integer(0, 1) == 1 ? Representation::full(n)
                                                                      : Representation::symmetric(n);
            const QuantumState rho = s.integer(0, 1) == 1 ? s.pure_state(rep)
                                                          : s.mixed_state(rep, random_rank(s, rep.dim()));
            const CollectiveOperator &j = build_collective(static_cast<Axis>(s.integer(0, 2)), rep);
            const double m = expectation(rho, j);
            t.le(qfi(rho, j).value, static_cast<double>(n) * n - 4.0 * m * m + 1e-6);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("q-body bound F_Q[J_x^q] <= 4 (N/2)^(2q)", 1e-6);
        for (int i = 0; i < n_samples; ++i) {
            const int n = s.integer(1, 8);
            const int q = s.integer(1, 3);
            const Representation rep = Representation::symmetric(n);
            const QuantumState rho = s.integer(0, 1) == 1 ? s.pure_state(rep)
                                                          : s.mixed_state(rep, random_rank(s, rep.dim()));
            const ComplexMatrix jq = matrix_power(build_collective(Axis::x, rep).dense(), q);
            const CollectiveOperator a = make_operator(0.5 * (jq + jq.adjoint()), rep, "Jx^q");
            t.le(qfi(rho, a).value, 4.0 * std::pow(0.5 * n, 2.0 * q) + 1e-6);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("Fisher matrix polarization identity", 1e-8);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s);
            const QuantumState rho = s.mixed_state(rep, random_rank(s, rep.dim()));
            const ComplexMatrix a = s.hermitian(rep.dim());
            const ComplexMatrix b = s.hermitian(rep.dim());
            const FisherMatrix fm = fisher_matrix(rho, {op(a), op(b)});
            t.eq(fm.matrix(0, 0), qfi(rho, op(a)).value);
            t.eq(fm.matrix(0, 0) + fm.matrix(1, 1) + 2.0 * fm.matrix(0, 1), qfi(rho, op(a + b)).value);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("roof sandwich on eigendecompositions", 0.0);
        for (int i = 0; i < n_samples; ++i) {
            const Representation rep = random_full(s, 3);
            const QuantumState rho = s.mixed_state(rep, random_rank(s, rep.dim()));
            const CollectiveOperator a = op(s.hermitian(rep.dim()));
            t.flag(roof_sandwich_check(rho, a, eigen_decomposition(rho)).holds);
        }
        out.push_back(t.result());
    }
    return out;
}

std::vector<PropertyResult> witness_properties(const BatteryOptions &opts) {
    Sampler s(opts.seed + 1);
    std::vector<PropertyResult> out;
    {
        Tracker t("no violations on product states", 0.0);
        for (int i = 0; i < 2 * opts.samples; ++i) {
            const QuantumState p = s.product(s.integer(2, 6));
            double bad = 0.0;
            for (const auto &r : witness_battery(p)) {
                bad += r.violated() ? 1.0 : 0.0;
            }
            t.count(bad);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("no violations on separable mixtures", 0.0);
        for (int i = 0; i < opts.samples / 2; ++i) {
            const int n = s.integer(2, 5);
            const int terms = s.integer(2, 4);
            ComplexMatrix rho = ComplexMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
            double total = 0.0;
            for (int k = 0; k < terms; ++k) {
                const double w = s.uniform(0.1, 1.0);
                rho += w * s.product(n).density_matrix();
                total += w;
            }
            rho /= total;
            const QuantumState mix = QuantumState::density(Representation::full(n), 0.5 * (rho + rho.adjoint()));
            double bad = 0.0;
            for (const auto &r : witness_battery(mix)) {
                bad += r.violated() ? 1.0 : 0.0;
            }
            t.count(bad);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("moments from the averaged two-particle state", 1e-10);
        for (int i = 0; i < opts.samples / 2; ++i) {
            const int n = s.integer(2, 5);
            const Representation rep = Representation::full(n);
            QuantumState rho = s.pure_state(rep);
            if (s.integer(0, 1) == 1) {
                // Permutation-symmetric inputs: embed a random symmetric state.
                rho = to_full(s.mixed_state(Representation::symmetric(n)));
            }
            const MomentSet direct = moments(rho);
            const MomentSet two = moments_from_two_particle(avg_two_particle_dm(rho), n);
            for (int a = 0; a < 3; ++a) {
                t.eq(two.mean(a), direct.mean(a));
                for (int b = 0; b < 3; ++b) {
                    t.eq(two.second(a, b), direct.second(a, b));
                }
            }
        }
        out.push_back(t.result());
    }
    {
        Tracker t("average QFI <= N(N+2)/3", 1e-8);
        for (int i = 0; i < opts.samples / 2; ++i) {
            const int n = s.integer(1, 8);
            const QuantumState rho = s.mixed_state(Representation::symmetric(n), s.integer(1, n + 1));
            t.le(avg_qfi(rho).value, n * (n + 2.0) / 3.0);
        }
        out.push_back(t.result());
    }
    return out;
}

std::vector<PropertyResult> metrology_properties(const BatteryOptions &opts) {
    Sampler s(opts.seed + 2);
    std::vector<PropertyResult> out;
    {
        Tracker t("noise kernel = Kraus reference", 1e-12);
        for (int i = 0; i < opts.samples; ++i) {
            const int n = s.integer(1, 4);
            const ComplexMatrix rho = s.density(Eigen::Index{1} << n);
            NoiseChannel ch = NoiseChannel::depolarizing(s.uniform());
            if (s.integer(0, 1) == 1) {
                const double ax = s.uniform();
                const double ay = s.uniform();
                const double sum = ax + ay + s.uniform();
                ch = NoiseChannel::pauli_semigroup(s.uniform(0.0, 3.0), {ax / sum, ay / sum, 1.0 - (ax + ay) / sum},
                                                   s.uniform(0.0, 2.0));
            }
            ComplexMatrix fast = rho;
            apply_noise_inplace(fast, n, ch);
            t.eq(max_abs(fast - apply_noise_reference(rho, n, ch)), 0.0);
        }
        out.push_back(t.result());
    }
    {
        Tracker t("depolarizing commutes with collective rotations", 1e-9);
        for (int i = 0; i < opts.samples / 2; ++i) {
            const int n = s.integer(1, 6);
            const QuantumState psi = to_full(s.pure_state(Representation::symmetric(n)));
            Eigen::Vector3d dir(s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1));
            dir.normalize();
            const CollectiveOperator gen = build_direction(dir, psi.rep());
            const NoiseChannel ch = NoiseChannel::depolarizing(s.uniform());
            const double theta = s.uniform(-3.0, 3.0);
            const ComplexMatrix a = apply_noise(rotate(psi, gen, theta), ch).matrix();
            const ComplexMatrix b = rotate(apply_noise(psi, ch), gen, theta).matrix();
            t.eq(max_abs(a - b), 0.0);
        }
        out.push_back(t.result());
    }
    {
        Tracker crb("scenario Cramer-Rao consistency", 0.0);
        Tracker deriv("analytic slope = central difference", 1e-6);
        Tracker heis("noiseless precision <= N^2", 1e-6);
        for (int i = 0; i < opts.samples / 4; ++i) {
            const int n = 2 * s.integer(1, 4);
            const Representation rep = s.integer(0, 1) == 1 && n <= 6 ? Representation::full(n)
                                                                      : Representation::symmetric(n);
            std::vector<Scenario> scenarios;
            scenarios.push_back(ramsey_scenario(n, rep, s.uniform(0.0, 1.4)));
            scenarios.push_back(ghz_parity_scenario(n, rep, s.uniform(0.1, 1.4) / n));
            scenarios.push_back(dicke_scenario(n, rep, s.uniform(0.1, 1.4)));
            scenarios.push_back(squeezed_scenario({n, std::pow(10.0, s.uniform(-2.0, 2.0))}, s.uniform(-0.5, 0.5)));
            for (const auto &sc : scenarios) {
                const CrbReport r = crb_consistency(sc);
                crb.flag(r.holds);
                const ErrorPropagation ep = error_propagation(sc);
                heis.le(ep.precision_inv, static_cast<double>(n) * n + 1e-6);
                deriv.le(derivative_check(sc).rel_error, 0.0);
            }
        }
        out.push_back(crb.result());
        out.push_back(deriv.result());
        out.push_back(heis.result());
    }
    return out;
}

std::vector<PropertyResult> run_property_battery(const BatteryOptions &opts) {
    std::vector<PropertyResult> all = fisher_properties(opts);
    for (auto part : {witness_properties(opts), metrology_properties(opts)}) {
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

} // namespace qmetro
