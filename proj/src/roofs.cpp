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

#include "qmetro/roofs.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qmetro/fisher.hpp"

namespace qmetro {

ComplexMatrix Decomposition::reconstruct() const {
    if (states.empty()) {
        throw InvalidArgument("decomposition is empty");
    }
    const Eigen::Index d = states.front().size();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < states.size(); ++k) {
        rho.noalias() += weights[k] * states[k] * states[k].adjoint();
    }
    return rho;
}

double Decomposition::average_variance(const SparseMatrix &a) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const ComplexVector av = a * states[k];
        const double mean = states[k].dot(av).real();
        acc += weights[k] * (av.squaredNorm() - mean * mean);
    }
    return acc;
}

Decomposition eigen_decomposition(const QuantumState &s) {
    Decomposition dec;
    if (s.is_pure()) {
        dec.weights = {1.0};
        dec.states = {s.vector()};
        return dec;
    }
    const StateSpectrum spec = state_spectrum(s);
    for (Eigen::Index k = 0; k < spec.lambda.size(); ++k) {
        if (spec.lambda(k) > kTol.support) {
            dec.weights.push_back(spec.lambda(k));
            dec.states.emplace_back(spec.vectors.col(k));
        }
    }
    return dec;
}

namespace {

// Objective S(Y) = sum_k n_k^2/p_k with x_k = conj(row k of Y), n_k = x^H a x, p_k = x^H G x.
// sum_k p_k Var_k = Tr(rho A^2) - S, so the convex roof maximizes S.
struct RoofProblem {
    ComplexMatrix a;   // r x r: D V^H A V D
    RealVector lambda; // r
    double second_moment = 0.0;

    struct Eval {
        double s = 0.0;
        RealVector n;
        RealVector p;
    };

    [[nodiscard]] Eval eval(const ComplexMatrix &y) const {
        const ComplexMatrix x = y.adjoint(); // r x K
        const ComplexMatrix ax = a * x;
        Eval e;
        e.n.resize(x.cols());
        e.p.resize(x.cols());
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            e.n(k) = x.col(k).dot(ax.col(k)).real();
            e.p(k) = (x.col(k).cwiseAbs2().array() * lambda.array()).sum();
            if (e.p(k) > 1e-15) {
                e.s += e.n(k) * e.n(k) / e.p(k);
            }
        }
        return e;
    }

    // Euclidean ascent direction of S with respect to Y (K x r).
    [[nodiscard]] ComplexMatrix gradient(const ComplexMatrix &y, const Eval &e) const {
        const ComplexMatrix x = y.adjoint();
        const ComplexMatrix ax = a * x;
        ComplexMatrix gx(x.rows(), x.cols());
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            const double p = std::max(e.p(k), 1e-15);
            const double q = e.n(k) / p;
            gx.col(k) = 2.0 * q * ax.col(k) - q * q * (lambda.array() * x.col(k).array()).matrix();
        }
        return gx.adjoint();
    }
};

// Polar retraction onto Y^H Y = 1.
ComplexMatrix retract(const ComplexMatrix &w) {
    const SpectralDecomposition spec = hermitian_eigendecompose(w.adjoint() * w);
    const RealVector inv_root = spec.eigenvalues.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return w * (spec.eigenvectors * inv_root.asDiagonal() * spec.eigenvectors.adjoint());
}

RoofResult optimize_roof(const QuantumState &s, const CollectiveOperator &a, int cardinality,
                         const RoofOptions &opts, double sign) {
    check_same_rep(s, a.rep, "roof oracle");
    if (s.dim() > 8) {
        throw SizeLimit("roof oracles support dimension <= 8 (got " + std::to_string(s.dim()) + ")");
    }
    const Decomposition eig = eigen_decomposition(s);
    const int r = static_cast<int>(eig.weights.size());
    if (r > 4) {
        throw SizeLimit("roof oracles support rank <= 4 (got " + std::to_string(r) + ")");
    }
    const int k = cardinality == 0 ? r * r : cardinality;
    if (k < r) {
        std::ostringstream msg;
        msg << "roof oracle: cardinality " << k << " is below the rank " << r << " of the state";
        throw InvalidArgument(msg.str());
    }
    if (opts.restarts < 1) {
        throw InvalidArgument("roof oracle: need at least one restart");
    }

    RoofProblem prob;
    ComplexMatrix basis(s.dim(), r);
    prob.lambda.resize(r);
    for (int j = 0; j < r; ++j) {
        basis.col(j) = eig.states[static_cast<std::size_t>(j)];
        prob.lambda(j) = eig.weights[static_cast<std::size_t>(j)];
    }
    const RealVector root = prob.lambda.cwiseSqrt();
    const ComplexMatrix a_small = basis.adjoint() * (a.matrix * basis);
    prob.a = root.asDiagonal() * a_small * root.asDiagonal();
    prob.second_moment = (a.matrix * basis).colwise().squaredNorm().dot(prob.lambda);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double best_s = 0.0;
    ComplexMatrix best_y;
    for (int restart = 0; restart < opts.restarts; ++restart) {
        ComplexMatrix z(k, r);
        for (Eigen::Index c = 0; c < z.cols(); ++c) {
            for (Eigen::Index row = 0; row < z.rows(); ++row) {
                const double re = normal(rng);
                const double im = normal(rng);
                z(row, c) = Complex(re, im);
            }
        }
        ComplexMatrix y = retract(z);
        RoofProblem::Eval e = prob.eval(y);
        double step = 1.0;
        for (int iter = 0; iter < opts.max_iterations; ++iter) {
            const ComplexMatrix g = sign * prob.gradient(y, e);
            const ComplexMatrix h = y.adjoint() * g;
            const ComplexMatrix tangent = g - y * (0.5 * (h + h.adjoint()));
            const double gn2 = tangent.squaredNorm();
            if (gn2 < 1e-24) {
                break;
            }
            ComplexMatrix y_next;
            RoofProblem::Eval e_next;
            // Armijo backtracking
            while (true) {
                y_next = retract(y + step * tangent);
                e_next = prob.eval(y_next);
                if (sign * (e_next.s - e.s) >= 1e-4 * step * gn2 || step < 1e-12) {
                    break;
                }
                step *= 0.5;
            }
            const double gain = sign * (e_next.s - e.s);
            y = std::move(y_next);
            e = std::move(e_next);
            if (gain < 1e-16) {
                break;
            }
            step = std::min(step * 2.0, 1e3);
        }
        if (best_y.size() == 0 || sign * (e.s - best_s) > 0.0) {
            best_s = e.s;
            best_y = y;
        }
    }

    RoofResult out;
    out.rank = r;
    out.cardinality = k;
    out.value = prob.second_moment - best_s;
    const ComplexMatrix x = best_y.adjoint();
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const ComplexVector unnorm = basis * (root.asDiagonal() * x.col(c));
        const double p = unnorm.squaredNorm();
        if (p <= 1e-15) {
            continue;
        }
        out.decomposition.weights.push_back(p);
        out.decomposition.states.emplace_back(unnorm / std::sqrt(p));
    }
    return out;
}

} // namespace

RoofResult convex_roof_oracle(const QuantumState &s, const CollectiveOperator &a, int cardinality,
                              const RoofOptions &opts) {
    return optimize_roof(s, a, cardinality, opts, +1.0);
}

RoofResult concave_roof_oracle(const QuantumState &s, const CollectiveOperator &a, int cardinality,
                               const RoofOptions &opts) {
    return optimize_roof(s, a, cardinality, opts, -1.0);
}

RoofSandwich roof_sandwich_check(const QuantumState &s, const CollectiveOperator &a, const Decomposition &dec) {
    check_same_rep(s, a.rep, "roof_sandwich_check");
    if (dec.weights.size() != dec.states.size() || dec.states.empty()) {
        throw InvalidArgument("roof_sandwich_check: weights and states must be non-empty and of equal length");
    }
    for (std::size_t k = 0; k < dec.states.size(); ++k) {
        if (dec.states[k].size() != s.dim()) {
            throw InvalidArgument("roof_sandwich_check: decomposition state has the wrong dimension");
        }
        if (dec.weights[k] < 0.0 || std::abs(dec.states[k].norm() - 1.0) > kTol.state_norm) {
            throw InvalidArgument("roof_sandwich_check: weights must be nonnegative and states normalized");
        }
    }
    const double miss = max_abs(dec.reconstruct() - s.density_matrix());
    if (miss > 1e-9) {
        std::ostringstream msg;
        msg << "roof_sandwich_check: decomposition misses the state by " << miss;
        throw InvalidArgument(msg.str());
    }
    RoofSandwich out;
    out.lower = 0.25 * qfi(s, a).value;
    out.average = dec.average_variance(a.matrix);
    out.upper = variance(s, a);
    out.holds = out.lower - 1e-8 <= out.average && out.average <= out.upper + 1e-8;
    return out;
}

} // namespace qmetro
