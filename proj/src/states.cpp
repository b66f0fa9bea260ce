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

#include "qmetro/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qmetro/tridiagonal.hpp"

namespace qmetro {

QuantumState::QuantumState(Representation rep, bool pure, ComplexVector psi, ComplexMatrix rho, std::string label)
    : rep_(rep), pure_(pure), psi_(std::move(psi)), rho_(std::move(rho)), label_(std::move(label)) {}

QuantumState QuantumState::pure(Representation rep, ComplexVector psi, std::string label) {
    rep.check_vector_limit();
    if (psi.size() != rep.dim()) {
        std::ostringstream msg;
        msg << "state vector has " << psi.size() << " entries, " << rep.name() << " representation of N="
            << rep.n_qubits << " needs " << rep.dim();
        throw InvalidArgument(msg.str());
    }
    const double norm = psi.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kTol.state_norm) {
        std::ostringstream msg;
        msg << "state vector is not normalized (norm " << norm << ")";
        throw Unphysical(msg.str());
    }
    return {rep, true, std::move(psi), ComplexMatrix(), std::move(label)};
}

QuantumState QuantumState::density_unchecked(Representation rep, ComplexMatrix rho, std::string label) {
    rep.check_density_limit();
    if (rho.rows() != rep.dim() || rho.cols() != rep.dim()) {
        std::ostringstream msg;
        msg << "density matrix is " << rho.rows() << "x" << rho.cols() << ", " << rep.name()
            << " representation of N=" << rep.n_qubits << " needs dimension " << rep.dim();
        throw InvalidArgument(msg.str());
    }
    return {rep, false, ComplexVector(), std::move(rho), std::move(label)};
}

QuantumState QuantumState::density(Representation rep, ComplexMatrix rho, std::string label) {
    QuantumState s = density_unchecked(rep, std::move(rho), std::move(label));
    const ComplexMatrix &m = s.rho_;
    if (!is_hermitian(m)) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian (max asymmetry " << max_asymmetry(m) << ")";
        throw Unphysical(msg.str());
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kTol.state_norm) {
        std::ostringstream msg;
        msg << "density matrix trace is " << tr << ", expected 1";
        throw Unphysical(msg.str());
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    if (lo < -kTol.psd_clamp) {
        std::ostringstream msg;
        msg << "density matrix is not positive semidefinite (smallest eigenvalue " << lo << ")";
        throw Unphysical(msg.str());
    }
    return s;
}

const ComplexVector &QuantumState::vector() const {
    if (!pure_) {
        throw InvalidArgument("state '" + label_ + "' is a density matrix, a pure state vector was required");
    }
    return psi_;
}

const ComplexMatrix &QuantumState::matrix() const {
    if (pure_) {
        throw InvalidArgument("state '" + label_ + "' is pure; use density_matrix()");
    }
    return rho_;
}

ComplexMatrix QuantumState::density_matrix() const {
    if (pure_) {
        rep_.check_density_limit();
        return psi_ * psi_.adjoint();
    }
    return rho_;
}

QuantumState QuantumState::with_label(std::string label) const {
    QuantumState out = *this;
    out.label_ = std::move(label);
    return out;
}

void check_same_rep(const QuantumState &s, const Representation &rep, const char *what) {
    if (!(s.rep() == rep)) {
        std::ostringstream msg;
        msg << what << ": state is " << s.rep().name() << "(N=" << s.rep().n_qubits << ") but the operator is "
            << rep.name() << "(N=" << rep.n_qubits << ")";
        throw InvalidArgument(msg.str());
    }
}

Complex expectation_complex(const QuantumState &s, const SparseMatrix &op) {
    if (op.rows() != s.dim() || op.cols() != s.dim()) {
        throw InvalidArgument("expectation: operator dimension does not match the state");
    }
    if (s.is_pure()) {
        const ComplexVector &psi = s.vector();
        return psi.dot(op * psi);
    }
    return trace_product(s.matrix(), op);
}

double expectation(const QuantumState &s, const SparseMatrix &op) { return expectation_complex(s, op).real(); }

double expectation(const QuantumState &s, const CollectiveOperator &op) {
    check_same_rep(s, op.rep, "expectation");
    return expectation(s, op.matrix);
}

double variance(const QuantumState &s, const CollectiveOperator &op) {
    check_same_rep(s, op.rep, "variance");
    const double mean = expectation(s, op.matrix);
    double second = 0.0;
    if (s.is_pure()) {
        second = (op.matrix * s.vector()).squaredNorm();
    } else {
        const SparseMatrix sq = op.matrix * op.matrix;
        second = expectation(s, sq);
    }
    return second - mean * mean;
}

double purity(const QuantumState &s) {
    if (s.is_pure()) {
        return 1.0;
    }
    return s.matrix().cwiseAbs2().sum();
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

// k * log(x) with 0 * log(0) = 0.
double klog(int k, double x) { return k == 0 ? 0.0 : k * std::log(x); }

std::string describe_axis_state(const char *family, int n, const char *extra = "") {
    std::ostringstream out;
    out << family << "(" << n << extra << ")";
    return out.str();
}

} // namespace

QuantumState coherent(int n, double theta, double phi, Representation rep) {
    if (rep.n_qubits != n) {
        throw InvalidArgument("coherent: N does not match the representation");
    }
    rep.check_vector_limit();
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double ac = std::abs(c);
    const double as = std::abs(s);
    const double sc = c < 0 ? -1.0 : 1.0;
    const double ss = s < 0 ? -1.0 : 1.0;
    ComplexVector psi(rep.dim());
    auto amplitude = [&](int k, double log_mult) {
        // (c)^(n-k) (s e^{i phi})^k, computed in logs so large N neither overflows nor underflows early
        const double mag = std::exp(log_mult + klog(n - k, ac) + klog(k, as));
        const double sign = std::pow(sc, n - k) * std::pow(ss, k);
        return sign * mag * std::polar(1.0, k * phi);
    };
    if (rep.is_full()) {
        for (Eigen::Index b = 0; b < psi.size(); ++b) {
            psi(b) = amplitude(std::popcount(static_cast<unsigned long long>(b)), 0.0);
        }
    } else {
        for (int k = 0; k <= n; ++k) {
            psi(k) = amplitude(k, 0.5 * log_binomial(n, k));
        }
    }
    psi /= psi.norm();
    return QuantumState::pure(rep, std::move(psi), "coherent(" + std::to_string(n) + ")");
}

QuantumState polarized(int n, Axis axis, Representation rep) {
    if (n < 1) {
        throw InvalidArgument("polarized: N must be at least 1");
    }
    const double half_pi = 0.5 * std::numbers::pi;
    const std::string label = "polarized_" + std::string(to_string(axis)) + "(" + std::to_string(n) + ")";
    switch (axis) {
    case Axis::x:
        return coherent(n, half_pi, 0.0, rep).with_label(label);
    case Axis::y:
        return coherent(n, half_pi, half_pi, rep).with_label(label);
    case Axis::z:
        break;
    }
    rep.check_vector_limit();
    ComplexVector psi = ComplexVector::Zero(rep.dim());
    psi(0) = 1.0;
    return QuantumState::pure(rep, std::move(psi), label);
}

QuantumState ghz(int n, Representation rep, Axis axis) {
    if (n < 2) {
        throw InvalidArgument("ghz: N must be at least 2");
    }
    if (rep.n_qubits != n) {
        throw InvalidArgument("ghz: N does not match the representation");
    }
    rep.check_vector_limit();
    const std::string label =
        axis == Axis::z ? describe_axis_state("GHZ", n) : describe_axis_state("GHZ", n, (std::string(",") + to_string(axis)).c_str());
    ComplexVector psi;
    if (axis == Axis::z) {
        psi = ComplexVector::Zero(rep.dim());
        psi(0) = 1.0;
        psi(rep.dim() - 1) = 1.0;
    } else {
        const double half_pi = 0.5 * std::numbers::pi;
        const double phi = axis == Axis::x ? 0.0 : half_pi;
        psi = coherent(n, half_pi, phi, rep).vector() + coherent(n, half_pi, phi + std::numbers::pi, rep).vector();
    }
    psi /= psi.norm();
    return QuantumState::pure(rep, std::move(psi), label);
}

QuantumState dicke(int n, int m, Representation rep) {
    if (m < 0 || m > n) {
        throw InvalidArgument("dicke: need 0 <= m <= N (got N=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
    }
    if (rep.n_qubits != n) {
        throw InvalidArgument("dicke: N does not match the representation");
    }
    rep.check_vector_limit();
    ComplexVector psi = ComplexVector::Zero(rep.dim());
    if (rep.is_full()) {
        const double amp = std::exp(-0.5 * log_binomial(n, m));
        for (Eigen::Index b = 0; b < psi.size(); ++b) {
            if (std::popcount(static_cast<unsigned long long>(b)) == m) {
                psi(b) = amp;
            }
        }
        psi /= psi.norm();
    } else {
        psi(m) = 1.0;
    }
    return QuantumState::pure(rep, std::move(psi),
                              "Dicke(" + std::to_string(n) + "," + std::to_string(m) + ")");
}

QuantumState singlet_pi(int n) {
    if (n < 2 || n % 2 != 0) {
        throw InvalidArgument("singlet_pi: N must be even and positive (got " + std::to_string(n) + ")");
    }
    if (n > 8) {
        throw SizeLimit("singlet_pi: N <= 8 supported (got " + std::to_string(n) + ")");
    }
    const Representation rep = Representation::full(n);
    const Eigen::Index dim = rep.dim();
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    std::vector<std::pair<int, int>> pairs;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    int matchings = 0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    auto add_matching = [&]() {
        ComplexVector psi(dim);
        for (Eigen::Index b = 0; b < dim; ++b) {
            double amp = 1.0;
            for (const auto &[q1, q2] : pairs) {
                const int b1 = static_cast<int>((b >> (n - 1 - q1)) & 1);
                const int b2 = static_cast<int>((b >> (n - 1 - q2)) & 1);
                if (b1 == b2) {
                    amp = 0.0;
                    break;
                }
                amp *= b1 == 0 ? inv_sqrt2 : -inv_sqrt2;
            }
            psi(b) = amp;
        }
        rho.noalias() += psi * psi.adjoint();
        ++matchings;
    };

    // Every permutation maps the reference pairing onto some perfect matching,
    // each matching equally often, so the permutation average is the matching average.
    std::function<void()> recurse = [&]() {
        int first = -1;
        for (int q = 0; q < n; ++q) {
            if (!used[static_cast<std::size_t>(q)]) {
                first = q;
                break;
            }
        }
        if (first < 0) {
            add_matching();
            return;
        }
        used[static_cast<std::size_t>(first)] = true;
        for (int q = first + 1; q < n; ++q) {
            if (used[static_cast<std::size_t>(q)]) {
                continue;
            }
            used[static_cast<std::size_t>(q)] = true;
            pairs.emplace_back(first, q);
            recurse();
            pairs.pop_back();
            used[static_cast<std::size_t>(q)] = false;
        }
        used[static_cast<std::size_t>(first)] = false;
    };
    recurse();
    rho /= static_cast<double>(matchings);
    return QuantumState::density(rep, std::move(rho), "singlet(" + std::to_string(n) + ")");
}

QuantumState product_state(const std::vector<ComplexVector> &qubits, std::string label) {
    if (qubits.empty()) {
        throw InvalidArgument("product_state: need at least one qubit");
    }
    ComplexVector psi = ComplexVector::Ones(1);
    for (const auto &q : qubits) {
        if (q.size() != 2) {
            throw InvalidArgument("product_state: every factor must be a 2-vector");
        }
        ComplexVector next(psi.size() * 2);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            next(2 * i) = psi(i) * q(0);
            next(2 * i + 1) = psi(i) * q(1);
        }
        psi = std::move(next);
    }
    psi /= psi.norm();
    if (label.empty()) {
        label = "product(" + std::to_string(qubits.size()) + ")";
    }
    return QuantumState::pure(Representation::full(static_cast<int>(qubits.size())), std::move(psi),
                              std::move(label));
}

void SqueezingSpec::validate() const {
    if (n < 2 || n % 2 != 0) {
        throw InvalidArgument("squeezing spec: N must be even and >= 2 (got " + std::to_string(n) + ")");
    }
    if (n > Representation::kMaxSymmetric) {
        throw SizeLimit("squeezing spec: N <= " + std::to_string(Representation::kMaxSymmetric) +
                        " supported (got " + std::to_string(n) + ")");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        std::ostringstream msg;
        msg << "squeezing spec: Lambda must be finite and >= 0 (got " << lambda << ")";
        throw InvalidArgument(msg.str());
    }
}

namespace {

struct SqueezingBands {
    std::vector<double> diag;  // H_ii
    std::vector<double> off2;  // H_{i,i+2}
};

SqueezingBands squeezing_bands(int n, double lambda) {
    const double j = 0.5 * n;
    const double jj = j * (j + 1.0);
    auto jp = [&](int k) {
        const double m = j - k;
        return std::sqrt(std::max(0.0, jj - m * (m + 1.0)));
    };
    SqueezingBands b;
    b.diag.resize(static_cast<std::size_t>(n) + 1);
    b.off2.resize(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (int i = 0; i <= n; ++i) {
        const double m = j - i;
        b.diag[static_cast<std::size_t>(i)] = 0.5 * (jj - m * m) - lambda * m;
    }
    for (int i = 0; i + 2 <= n; ++i) {
        b.off2[static_cast<std::size_t>(i)] = 0.25 * jp(i + 1) * jp(i + 2);
    }
    return b;
}

Tridiagonal parity_block(const SqueezingBands &b, int parity) {
    Tridiagonal t;
    const int n = static_cast<int>(b.diag.size()) - 1;
    for (int i = parity; i <= n; i += 2) {
        t.diag.push_back(b.diag[static_cast<std::size_t>(i)]);
        if (i + 2 <= n) {
            t.off.push_back(b.off2[static_cast<std::size_t>(i)]);
        }
    }
    return t;
}

double hamiltonian_scale(const SqueezingBands &b) {
    double s = 0.0;
    const std::size_t n = b.diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::abs(b.diag[i]);
        if (i + 2 < n) {
            r += std::abs(b.off2[i]);
        }
        if (i >= 2) {
            r += std::abs(b.off2[i - 2]);
        }
        s = std::max(s, r);
    }
    return std::max(s, 1.0);
}

void fix_sign(ComplexVector &v) {
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (v(idx).real() < 0.0) {
        v = -v;
    }
}

} // namespace

RealMatrix squeezing_hamiltonian(int n, double lambda) {
    const SqueezingBands b = squeezing_bands(n, lambda);
    RealMatrix h = RealMatrix::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        h(i, i) = b.diag[static_cast<std::size_t>(i)];
        if (i + 2 <= n) {
            h(i, i + 2) = h(i + 2, i) = b.off2[static_cast<std::size_t>(i)];
        }
    }
    return h;
}

GroundStateResult squeezed_ground(const SqueezingSpec &spec, GroundSolver solver) {
    spec.validate();
    const int n = spec.n;
    const Representation rep = Representation::symmetric(n);
    std::ostringstream label;
    label << "squeezed(" << n << ",Lambda=" << spec.lambda << ")";
    const SqueezingBands bands = squeezing_bands(n, spec.lambda);
    const double scale = hamiltonian_scale(bands);

    ComplexVector psi = ComplexVector::Zero(n + 1);
    double energy = 0.0;
    double gap = 0.0;

    if (solver == GroundSolver::Dense) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(squeezing_hamiltonian(n, spec.lambda));
        energy = es.eigenvalues()(0);
        gap = es.eigenvalues()(1) - energy;
        psi = es.eigenvectors().col(0).cast<Complex>();
    } else {
        const Tridiagonal even = parity_block(bands, 0);
        const Tridiagonal odd = parity_block(bands, 1);
        const Eigenpair ge = tridiagonal_lowest(even);
        const double e_odd = tridiagonal_eigenvalue(odd, 0);
        const double e_even2 = even.size() > 1 ? tridiagonal_eigenvalue(even, 1)
                                               : std::numeric_limits<double>::infinity();
        // On a tie the even block wins: it holds basis index 0.
        if (e_odd < ge.value - 1e-12 * scale) {
            const Eigenpair go = tridiagonal_lowest(odd);
            energy = go.value;
            const double e_odd2 = odd.size() > 1 ? tridiagonal_eigenvalue(odd, 1)
                                                 : std::numeric_limits<double>::infinity();
            gap = std::min(ge.value, e_odd2) - energy;
            for (std::size_t k = 0; k < go.vector.size(); ++k) {
                psi(static_cast<Eigen::Index>(2 * k + 1)) = go.vector[k];
            }
        } else {
            energy = ge.value;
            gap = std::min(e_odd, e_even2) - energy;
            for (std::size_t k = 0; k < ge.vector.size(); ++k) {
                psi(static_cast<Eigen::Index>(2 * k)) = ge.vector[k];
            }
        }
    }
    psi /= psi.norm();
    fix_sign(psi);
    const bool degenerate = gap < 1e-12 * scale;
    return {QuantumState::pure(rep, std::move(psi), label.str()), energy, gap, degenerate};
}

QuantumState squeezed_ground_state(const SqueezingSpec &spec) { return squeezed_ground(spec).state; }

QuantumState mix_white_noise(const QuantumState &psi, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "mix_white_noise: p must lie in [0, 1] (got " << p << ")";
        throw InvalidArgument(msg.str());
    }
    if (!psi.rep().is_full()) {
        throw InvalidArgument("mix_white_noise: the 1/2^N term needs the full representation");
    }
    psi.rep().check_density_limit();
    const Eigen::Index d = psi.dim();
    ComplexMatrix rho = p * psi.density_matrix();
    rho.diagonal().array() += (1.0 - p) / static_cast<double>(d);
    std::ostringstream label;
    label << psi.label() << "+white(p=" << p << ")";
    return QuantumState::density_unchecked(psi.rep(), std::move(rho), label.str());
}

double white_noise_qfi(double p, double dim, double pure_qfi) {
    const double denom = p + 2.0 * (1.0 - p) / dim;
    return denom <= 0.0 ? 0.0 : p * p / denom * pure_qfi;
}

SparseMatrix symmetric_embedding(int n) {
    const Representation full = Representation::full(n);
    full.check_vector_limit();
    const Eigen::Index dim = full.dim();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int k = std::popcount(static_cast<unsigned long long>(b));
        trips.emplace_back(b, k, std::exp(-0.5 * log_binomial(n, k)));
    }
    SparseMatrix e(dim, n + 1);
    e.setFromTriplets(trips.begin(), trips.end());
    return e;
}

QuantumState to_full(const QuantumState &s) {
    if (s.rep().is_full()) {
        return s;
    }
    const int n = s.rep().n_qubits;
    const Representation full = Representation::full(n);
    const SparseMatrix e = symmetric_embedding(n);
    if (s.is_pure()) {
        ComplexVector psi = e * s.vector();
        return QuantumState::pure(full, std::move(psi), s.label());
    }
    full.check_density_limit();
    const ComplexMatrix left = e * s.matrix();
    ComplexMatrix rho = (e * left.adjoint()).adjoint();
    return QuantumState::density_unchecked(full, std::move(rho), s.label());
}

} // namespace qmetro
