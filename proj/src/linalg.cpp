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

#include "qmetro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <omp.h>

namespace qmetro {

int apply_thread_limit_from_env() {
    const char *env = std::getenv("QMETRO_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    const int cap = std::atoi(env);
    if (cap > 0) {
        omp_set_num_threads(cap);
    }
    return std::max(cap, 0);
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double max_asymmetry(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const ComplexMatrix &m, double rel_tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_asymmetry(m) <= rel_tol * std::max(1.0, max_abs(m));
}

SpectralDecomposition hermitian_eigendecompose(const ComplexMatrix &m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw InvalidArgument("hermitian_eigendecompose: expected a non-empty square matrix");
    }
    if (!is_hermitian(m)) {
        std::ostringstream msg;
        msg << "hermitian_eigendecompose: matrix is not Hermitian (max |M - M^dagger| = "
            << max_asymmetry(m) << ")";
        throw InvalidArgument(msg.str());
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigendecompose: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_sqrt(const SpectralDecomposition &spec) {
    RealVector roots(spec.eigenvalues.size());
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        const double v = spec.eigenvalues(k);
        if (v < -kTol.psd_clamp) {
            std::ostringstream msg;
            msg << "psd_sqrt: matrix is not positive semidefinite (eigenvalue " << v << ")";
            throw InvalidArgument(msg.str());
        }
        roots(k) = std::sqrt(std::max(v, 0.0));
    }
    return spec.eigenvectors * roots.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) { return psd_sqrt(hermitian_eigendecompose(m)); }

ComplexMatrix unitary_exp(const SpectralDecomposition &spec, double theta, int sign) {
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("unitary_exp: sign must be +1 or -1");
    }
    ComplexVector phases(spec.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(-kI * static_cast<double>(sign) * theta * spec.eigenvalues(k));
    }
    return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix unitary_exp(const ComplexMatrix &a, double theta, int sign) {
    return unitary_exp(hermitian_eigendecompose(a), theta, sign);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix direct_sum(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Complex trace_product(const ComplexMatrix &a, const SparseMatrix &b) {
    // Tr(AB) = sum_{ij} A_ji B_ij
    Complex acc{0.0, 0.0};
    for (Eigen::Index col = 0; col < b.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(b, col); it; ++it) {
            acc += a(it.col(), it.row()) * it.value();
        }
    }
    return acc;
}

double norm_bound(const SparseMatrix &m) {
    RealVector rows = RealVector::Zero(m.rows());
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            rows(it.row()) += std::abs(it.value());
        }
    }
    return rows.size() == 0 ? 0.0 : rows.maxCoeff();
}

RealMatrix symmetric_pinv(const RealMatrix &m, double cutoff, bool *was_singular) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(0.5 * (m + m.transpose()));
    RealVector inv = RealVector::Zero(m.rows());
    bool singular = false;
    for (Eigen::Index k = 0; k < inv.size(); ++k) {
        const double v = solver.eigenvalues()(k);
        if (std::abs(v) > cutoff) {
            inv(k) = 1.0 / v;
        } else {
            singular = true;
        }
    }
    if (was_singular != nullptr) {
        *was_singular = singular;
    }
    return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().transpose();
}

} // namespace qmetro
