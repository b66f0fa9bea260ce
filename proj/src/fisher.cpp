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

#include "qmetro/fisher.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmetro/kernels.hpp"

namespace qmetro {

namespace {

void check_qfi_args(const QuantumState &s, const CollectiveOperator &a, const char *what) {
    check_same_rep(s, a.rep, what);
    if (!s.is_pure()) {
        s.rep().check_density_limit();
    }
}

} // namespace

StateSpectrum state_spectrum(const QuantumState &s) {
    SpectralDecomposition spec = hermitian_eigendecompose(s.density_matrix());
    return {spec.eigenvalues.cwiseMax(0.0), std::move(spec.eigenvectors)};
}

ComplexMatrix in_eigenbasis(const StateSpectrum &spec, const SparseMatrix &a) {
    const ComplexMatrix av = a * spec.vectors;
    return spec.vectors.adjoint() * av;
}

QfiResult qfi(const QuantumState &s, const CollectiveOperator &a) {
    check_qfi_args(s, a, "qfi");
    if (s.is_pure()) {
        const auto d = static_cast<std::size_t>(s.dim());
        return {std::max(0.0, 4.0 * variance(s, a)), (d - 1) * (d - 1)};
    }
    const StateSpectrum spec = state_spectrum(s);
    const auto sum = kernels::parallel::qfi_pair_sum(spec.lambda, in_eigenbasis(spec, a.matrix), kTol.support);
    return {std::max(0.0, sum.value), sum.skipped};
}

double qfi_pure(const QuantumState &s, const CollectiveOperator &a) {
    if (!s.is_pure()) {
        throw InvalidArgument("qfi_pure: state '" + s.label() + "' is mixed");
    }
    check_same_rep(s, a.rep, "qfi_pure");
    return 4.0 * variance(s, a);
}

double qfi_alternative(const QuantumState &s, const CollectiveOperator &a) {
    check_qfi_args(s, a, "qfi_alternative");
    const StateSpectrum spec = state_spectrum(s);
    const ComplexMatrix a_eig = in_eigenbasis(spec, a.matrix);
    double second = 0.0;
    for (Eigen::Index k = 0; k < spec.lambda.size(); ++k) {
        second += spec.lambda(k) * a_eig.col(k).squaredNorm();
    }
    return 4.0 * second - 8.0 * kernels::parallel::product_pair_sum(spec.lambda, a_eig, kTol.support);
}

ComplexMatrix sld(const QuantumState &s, const CollectiveOperator &a) {
    check_qfi_args(s, a, "sld");
    const StateSpectrum spec = state_spectrum(s);
    const ComplexMatrix a_eig = in_eigenbasis(spec, a.matrix);
    const Eigen::Index d = spec.lambda.size();
    ComplexMatrix l = ComplexMatrix::Zero(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double sum = spec.lambda(r) + spec.lambda(c);
            if (sum < kTol.support) {
                continue;
            }
            l(r, c) = 2.0 * kI * (spec.lambda(r) - spec.lambda(c)) / sum * a_eig(r, c);
        }
    }
    return spec.vectors * l * spec.vectors.adjoint();
}

Povm Povm::general(std::vector<ComplexMatrix> elements) {
    if (elements.empty()) {
        throw InvalidArgument("Povm: need at least one element");
    }
    const Eigen::Index d = elements.front().rows();
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const ComplexMatrix &e = elements[i];
        if (e.rows() != d || e.cols() != d) {
            throw InvalidArgument("Povm: elements have inconsistent dimensions");
        }
        const SpectralDecomposition spec = hermitian_eigendecompose(e);
        if (spec.eigenvalues(0) < -kTol.psd_clamp) {
            std::ostringstream msg;
            msg << "Povm: element " << i << " is not PSD (smallest eigenvalue " << spec.eigenvalues(0) << ")";
            throw InvalidArgument(msg.str());
        }
        total += e;
    }
    const double defect = max_abs(total - ComplexMatrix::Identity(d, d));
    if (defect > 1e-9) {
        std::ostringstream msg;
        msg << "Povm: elements do not sum to the identity (max deviation " << defect << ")";
        throw InvalidArgument(msg.str());
    }
    Povm p;
    p.elements_ = std::move(elements);
    return p;
}

Povm Povm::projective(ComplexMatrix basis) {
    if (basis.rows() != basis.cols() || basis.rows() == 0) {
        throw InvalidArgument("Povm: projective basis must be a square matrix");
    }
    const Eigen::Index d = basis.rows();
    const double defect = max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(d, d));
    if (defect > 1e-9) {
        std::ostringstream msg;
        msg << "Povm: basis is not orthonormal (max deviation " << defect << ")";
        throw InvalidArgument(msg.str());
    }
    Povm p;
    p.basis_ = std::move(basis);
    p.projective_ = true;
    return p;
}

Povm Povm::eigenbasis(const ComplexMatrix &observable) {
    return projective(hermitian_eigendecompose(observable).eigenvectors);
}

std::size_t Povm::size() const {
    return projective_ ? static_cast<std::size_t>(basis_.cols()) : elements_.size();
}

Eigen::Index Povm::dim() const { return projective_ ? basis_.rows() : elements_.front().rows(); }

RealVector Povm::probabilities(const QuantumState &s) const {
    if (s.dim() != dim()) {
        throw InvalidArgument("Povm: state dimension does not match the measurement");
    }
    RealVector p(static_cast<Eigen::Index>(size()));
    if (projective_) {
        if (s.is_pure()) {
            p = (basis_.adjoint() * s.vector()).cwiseAbs2();
        } else {
            const ComplexMatrix rb = s.matrix() * basis_;
            for (Eigen::Index k = 0; k < basis_.cols(); ++k) {
                p(k) = basis_.col(k).dot(rb.col(k)).real();
            }
        }
        return p;
    }
    const ComplexMatrix rho = s.density_matrix();
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        p(static_cast<Eigen::Index>(k)) = (rho * elements_[k]).trace().real();
    }
    return p;
}

ClassicalFisherResult classical_fisher(const StateFamily &family, const Povm &povm, double theta0, double dtheta) {
    if (!(dtheta > 0.0)) {
        throw InvalidArgument("classical_fisher: step must be positive");
    }
    auto probs = [&](double t) { return povm.probabilities(family(t)); };
    const RealVector p0 = probs(theta0);
    const RealVector pp = probs(theta0 + dtheta);
    const RealVector pm = probs(theta0 - dtheta);
    const RealVector pp2 = probs(theta0 + 0.5 * dtheta);
    const RealVector pm2 = probs(theta0 - 0.5 * dtheta);
    // Second derivatives for boundary outcomes use a wider step: the ratio's
    // limit is 2 p'', and a 1e-5 step leaves ~1e-6 roundoff in p''.
    const double hb = 1e-3;
    const RealVector bp = probs(theta0 + hb);
    const RealVector bm = probs(theta0 - hb);
    const RealVector bp2 = probs(theta0 + 2.0 * hb);
    const RealVector bm2 = probs(theta0 - 2.0 * hb);

    ClassicalFisherResult out;
    for (Eigen::Index x = 0; x < p0.size(); ++x) {
        const double d1 = (pp(x) - pm(x)) / (2.0 * dtheta);
        const double p = p0(x);
        double deriv = d1;
        if (std::abs(p) < 1e-8) {
            const double d2 = (pp2(x) - pm2(x)) / dtheta;
            deriv = (4.0 * d2 - d1) / 3.0;
        }
        if (p > 1e-12) {
            out.value += deriv * deriv / p;
            continue;
        }
        if (std::abs(deriv) > 1e-6) {
            ++out.boundary_outcomes;
            std::ostringstream msg;
            msg << "outcome " << x << ": p = " << p << " with dp/dtheta = " << deriv
                << " (boundary outcome, term taken as the limit 2 p'')";
            out.warnings.push_back(msg.str());
        }
        const double s1 = (bp(x) - 2.0 * p + bm(x)) / (hb * hb);
        const double s2 = (bp2(x) - 2.0 * p + bm2(x)) / (4.0 * hb * hb);
        const double second = (4.0 * s1 - s2) / 3.0;
        out.value += std::max(0.0, 2.0 * second);
    }
    return out;
}

FisherMatrix fisher_matrix(const QuantumState &s, const std::vector<CollectiveOperator> &generators) {
    if (generators.empty()) {
        throw InvalidArgument("fisher_matrix: need at least one generator");
    }
    for (const auto &g : generators) {
        check_qfi_args(s, g, "fisher_matrix");
    }
    const auto m = static_cast<Eigen::Index>(generators.size());
    FisherMatrix out;
    out.matrix = RealMatrix::Zero(m, m);
    for (const auto &g : generators) {
        out.generators.push_back(g.label());
    }
    if (s.is_pure()) {
        const ComplexVector &psi = s.vector();
        std::vector<ComplexVector> applied;
        std::vector<double> means;
        for (const auto &g : generators) {
            applied.emplace_back(g.matrix * psi);
            means.push_back(psi.dot(applied.back()).real());
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = i; j < m; ++j) {
                const auto ui = static_cast<std::size_t>(i);
                const auto uj = static_cast<std::size_t>(j);
                const double cov = applied[ui].dot(applied[uj]).real() - means[ui] * means[uj];
                out.matrix(i, j) = out.matrix(j, i) = 4.0 * cov;
            }
        }
        return out;
    }
    const StateSpectrum spec = state_spectrum(s);
    std::vector<ComplexMatrix> eig;
    for (const auto &g : generators) {
        eig.push_back(in_eigenbasis(spec, g.matrix));
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const double v = kernels::parallel::fisher_pair_sum(spec.lambda, eig[static_cast<std::size_t>(i)],
                                                               eig[static_cast<std::size_t>(j)], kTol.support);
            out.matrix(i, j) = out.matrix(j, i) = v;
        }
    }
    return out;
}

CovarianceBound crb_matrix(const FisherMatrix &f) {
    CovarianceBound out;
    out.matrix = symmetric_pinv(f.matrix, 1e-10, &out.singular);
    return out;
}

double bures_fidelity(const QuantumState &a, const QuantumState &b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("bures_fidelity: states have different dimensions");
    }
    double f = 0.0;
    if (a.is_pure() && b.is_pure()) {
        f = std::norm(a.vector().dot(b.vector()));
    } else if (a.is_pure()) {
        f = a.vector().dot(b.matrix() * a.vector()).real();
    } else if (b.is_pure()) {
        f = b.vector().dot(a.matrix() * b.vector()).real();
    } else {
        const ComplexMatrix root = psd_sqrt(a.matrix());
        const ComplexMatrix inner = root * b.matrix() * root;
        const SpectralDecomposition spec = hermitian_eigendecompose(0.5 * (inner + inner.adjoint()));
        const double tr = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt().sum();
        f = tr * tr;
    }
    return std::clamp(f, 0.0, 1.0);
}

MandelstamTamm mandelstam_tamm_check(const QuantumState &s, const CollectiveOperator &a, double theta) {
    MandelstamTamm out;
    out.qfi = qfi(s, a).value;
    const double root = std::sqrt(out.qfi);
    if (root * std::abs(theta) > std::numbers::pi + 1e-12) {
        std::ostringstream msg;
        msg << "mandelstam_tamm_check: sqrt(F_Q)|theta| = " << root * std::abs(theta) << " exceeds pi";
        throw InvalidArgument(msg.str());
    }
    out.fidelity = bures_fidelity(s, rotate(s, a, theta));
    const double c = std::cos(0.5 * root * theta);
    out.bound = c * c;
    out.holds = out.fidelity >= out.bound - kTol.verdict;
    return out;
}

double wigner_yanase(const QuantumState &s, const CollectiveOperator &a) {
    check_qfi_args(s, a, "wigner_yanase");
    if (s.is_pure()) {
        return variance(s, a);
    }
    const StateSpectrum spec = state_spectrum(s);
    const ComplexMatrix a_eig = in_eigenbasis(spec, a.matrix);
    const RealVector roots = spec.lambda.cwiseSqrt();
    double acc = 0.0;
    for (Eigen::Index c = 0; c < roots.size(); ++c) {
        for (Eigen::Index r = 0; r < roots.size(); ++r) {
            const double d = roots(r) - roots(c);
            acc += d * d * std::norm(a_eig(r, c));
        }
    }
    return 0.5 * acc;
}

double zeno_time(const QuantumState &s, const CollectiveOperator &a) {
    const double f = qfi(s, a).value;
    if (f <= 1e-12) {
        return std::numeric_limits<double>::infinity();
    }
    return 2.0 / std::sqrt(f);
}

} // namespace qmetro
