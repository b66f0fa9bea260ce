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

#include "qmetro/noise.hpp"

#include <cmath>
#include <sstream>

namespace qmetro {

NoiseChannel NoiseChannel::depolarizing(double p) {
    NoiseChannel c;
    c.kind = Kind::Depolarizing;
    c.p = p;
    c.validate();
    return c;
}

NoiseChannel NoiseChannel::pauli_semigroup(double gamma, std::array<double, 3> alpha, double t) {
    NoiseChannel c;
    c.kind = Kind::PauliSemigroup;
    c.gamma = gamma;
    c.alpha = alpha;
    c.t = t;
    c.validate();
    return c;
}

kernels::PauliFactors NoiseChannel::factors() const {
    if (kind == Kind::Depolarizing) {
        return {1.0 - p, 1.0 - p, 1.0 - p};
    }
    auto f = [&](double a) { return std::exp(-gamma * (1.0 - a) * t); };
    return {f(alpha[0]), f(alpha[1]), f(alpha[2])};
}

std::array<double, 4> NoiseChannel::pauli_weights() const {
    const auto [fx, fy, fz] = factors();
    return {0.25 * (1.0 + fx + fy + fz), 0.25 * (1.0 + fx - fy - fz), 0.25 * (1.0 - fx + fy - fz),
            0.25 * (1.0 - fx - fy + fz)};
}

namespace {

ComplexMatrix kraus_single(const ComplexMatrix &rho1, const std::array<double, 4> &q) {
    ComplexMatrix out = q[0] * rho1;
    const std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
    for (std::size_t l = 0; l < 3; ++l) {
        const ComplexMatrix s = pauli(axes[l]);
        out += q[l + 1] * s * rho1 * s;
    }
    return out;
}

} // namespace

ComplexMatrix NoiseChannel::choi() const {
    const std::array<double, 4> q = pauli_weights();
    ComplexMatrix c = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(2, 2);
            e(i, j) = 1.0;
            c.block(2 * i, 2 * j, 2, 2) = kraus_single(e, q);
        }
    }
    return c;
}

void NoiseChannel::validate() const {
    std::ostringstream msg;
    if (kind == Kind::Depolarizing) {
        if (!(p >= 0.0 && p <= 1.0)) {
            msg << "depolarizing channel: p must lie in [0, 1] (got " << p << ")";
            throw InvalidArgument(msg.str());
        }
    } else {
        if (!(gamma >= 0.0) || !(t >= 0.0) || !std::isfinite(gamma) || !std::isfinite(t)) {
            msg << "Pauli semigroup: gamma and t must be finite and >= 0 (got gamma=" << gamma << ", t=" << t << ")";
            throw InvalidArgument(msg.str());
        }
        for (double a : alpha) {
            if (!(a >= 0.0)) {
                msg << "Pauli semigroup: alpha_l must be >= 0";
                throw InvalidArgument(msg.str());
            }
        }
        const double sum = alpha[0] + alpha[1] + alpha[2];
        if (std::abs(sum - 1.0) > 1e-12) {
            msg << "Pauli semigroup: alpha_x + alpha_y + alpha_z must be 1 (got " << sum << ")";
            throw InvalidArgument(msg.str());
        }
    }
    const ComplexMatrix c = choi();
    const SpectralDecomposition spec = hermitian_eigendecompose(c);
    if (spec.eigenvalues(0) < -1e-10) {
        msg << describe() << " is not completely positive (Choi eigenvalue " << spec.eigenvalues(0) << ")";
        throw InvalidArgument(msg.str());
    }
    // Trace preservation: Tr_out of the Choi matrix is the identity.
    ComplexMatrix tr_out(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            tr_out(i, j) = c(2 * i, 2 * j) + c(2 * i + 1, 2 * j + 1);
        }
    }
    const double defect = max_abs(tr_out - ComplexMatrix::Identity(2, 2));
    if (defect > 1e-10) {
        msg << describe() << " is not trace preserving (defect " << defect << ")";
        throw InvalidArgument(msg.str());
    }
}

std::string NoiseChannel::describe() const {
    std::ostringstream out;
    if (kind == Kind::Depolarizing) {
        out << "depolarizing(p=" << p << ")";
    } else {
        out << "pauli_semigroup(gamma=" << gamma << ", alpha=(" << alpha[0] << "," << alpha[1] << "," << alpha[2]
            << "), t=" << t << ")";
    }
    return out.str();
}

void apply_noise_inplace(ComplexMatrix &rho, int n, const NoiseChannel &channel) {
    const kernels::PauliFactors f = channel.factors();
    if (f.fx == 1.0 && f.fy == 1.0 && f.fz == 1.0) {
        return;
    }
    for (int site = 0; site < n; ++site) {
        kernels::parallel::pauli_channel_qubit(rho, n, site, f);
    }
}

QuantumState apply_noise(const QuantumState &s, const NoiseChannel &channel) {
    channel.validate();
    const QuantumState full = to_full(s);
    const int n = full.rep().n_qubits;
    full.rep().check_density_limit();
    ComplexMatrix rho = full.density_matrix();
    apply_noise_inplace(rho, n, channel);
    return QuantumState::density_unchecked(full.rep(), std::move(rho), full.label() + "+" + channel.describe());
}

ComplexMatrix apply_noise_reference(const ComplexMatrix &rho, int n, const NoiseChannel &channel) {
    const std::array<double, 4> q = channel.pauli_weights();
    const std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
    ComplexMatrix cur = rho;
    for (int site = 0; site < n; ++site) {
        ComplexMatrix next = q[0] * cur;
        for (std::size_t l = 0; l < 3; ++l) {
            if (q[l + 1] == 0.0) {
                continue;
            }
            const ComplexMatrix left = ComplexMatrix::Identity(Eigen::Index{1} << site, Eigen::Index{1} << site);
            const ComplexMatrix right =
                ComplexMatrix::Identity(Eigen::Index{1} << (n - 1 - site), Eigen::Index{1} << (n - 1 - site));
            const ComplexMatrix k = kron(kron(left, pauli(axes[l])), right);
            next += q[l + 1] * k * cur * k.adjoint();
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace qmetro
