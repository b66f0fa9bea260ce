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

#include "qmetro/kernels.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace qmetro::kernels {

namespace {

inline double qfi_weight(double lk, double ll, double support) {
    const double s = lk + ll;
    if (s < support) {
        return 0.0;
    }
    const double d = lk - ll;
    return d * d / s;
}

inline double product_weight(double lk, double ll, double support) {
    const double s = lk + ll;
    return s < support ? 0.0 : lk * ll / s;
}

// Expands the index of a block (with bit `bit` of row and col removed) back
// into a full index with that bit cleared.
inline std::size_t insert_zero_bit(std::size_t reduced, int bit) {
    const std::size_t low = reduced & ((std::size_t{1} << bit) - 1);
    const std::size_t high = reduced >> bit;
    return (high << (bit + 1)) | low;
}

inline void apply_block(ComplexMatrix &rho, std::size_t r0, std::size_t c0, std::size_t stride,
                        const PauliFactors &f) {
    const std::size_t r1 = r0 + stride;
    const std::size_t c1 = c0 + stride;
    const Complex a = rho(r0, c0);
    const Complex b = rho(r0, c1);
    const Complex c = rho(r1, c0);
    const Complex d = rho(r1, c1);
    const Complex mean = 0.5 * (a + d);
    const Complex zpart = 0.5 * (a - d) * f.fz;
    const Complex xpart = 0.5 * (b + c) * f.fx;
    const Complex ypart = 0.5 * (b - c) * f.fy;
    rho(r0, c0) = mean + zpart;
    rho(r1, c1) = mean - zpart;
    rho(r0, c1) = xpart + ypart;
    rho(r1, c0) = xpart - ypart;
}

void check_channel_args(const ComplexMatrix &rho, int n_qubits, int site) {
    if (n_qubits < 1 || site < 0 || site >= n_qubits ||
        rho.rows() != (Eigen::Index{1} << n_qubits) || rho.cols() != rho.rows()) {
        throw InvalidArgument("pauli_channel_qubit: density matrix does not match qubit count/site");
    }
}

} // namespace

namespace serial {

PairSum qfi_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support) {
    PairSum out;
    const Eigen::Index d = lambda.size();
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            if (lambda(k) + lambda(l) < support) {
                ++out.skipped;
                continue;
            }
            out.value += qfi_weight(lambda(k), lambda(l), support) * std::norm(a_eig(k, l));
        }
    }
    out.value *= 2.0;
    return out;
}

double fisher_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, const ComplexMatrix &b_eig,
                       double support) {
    double acc = 0.0;
    const Eigen::Index d = lambda.size();
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            acc += qfi_weight(lambda(k), lambda(l), support) * std::real(a_eig(k, l) * b_eig(l, k));
        }
    }
    return 2.0 * acc;
}

double product_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support) {
    double acc = 0.0;
    const Eigen::Index d = lambda.size();
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            acc += product_weight(lambda(k), lambda(l), support) * std::norm(a_eig(k, l));
        }
    }
    return acc;
}

void pauli_channel_qubit(ComplexMatrix &rho, int n_qubits, int site, PauliFactors f) {
    check_channel_args(rho, n_qubits, site);
    const int bit = n_qubits - 1 - site;
    const std::size_t stride = std::size_t{1} << bit;
    const std::size_t half = std::size_t{1} << (n_qubits - 1);
    for (std::size_t rr = 0; rr < half; ++rr) {
        for (std::size_t cc = 0; cc < half; ++cc) {
            apply_block(rho, insert_zero_bit(rr, bit), insert_zero_bit(cc, bit), stride, f);
        }
    }
}

ScanResult direction_scan(const Eigen::Matrix3d &f, std::span<const Eigen::Vector3d> directions) {
    ScanResult best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const double v = directions[i].dot(f * directions[i]);
        if (v > best.value) {
            best = {v, i};
        }
    }
    return best;
}

} // namespace serial

namespace parallel {

PairSum qfi_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support) {
    const Eigen::Index d = lambda.size();
    std::vector<double> rows(static_cast<std::size_t>(d), 0.0);
    std::vector<std::size_t> skipped(static_cast<std::size_t>(d), 0);
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < d; ++k) {
        double acc = 0.0;
        std::size_t skip = 0;
        for (Eigen::Index l = 0; l < d; ++l) {
            if (lambda(k) + lambda(l) < support) {
                ++skip;
                continue;
            }
            acc += qfi_weight(lambda(k), lambda(l), support) * std::norm(a_eig(k, l));
        }
        rows[static_cast<std::size_t>(k)] = acc;
        skipped[static_cast<std::size_t>(k)] = skip;
    }
    PairSum out;
    out.value = 2.0 * std::accumulate(rows.begin(), rows.end(), 0.0);
    out.skipped = std::accumulate(skipped.begin(), skipped.end(), std::size_t{0});
    return out;
}

double fisher_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, const ComplexMatrix &b_eig,
                       double support) {
    const Eigen::Index d = lambda.size();
    std::vector<double> rows(static_cast<std::size_t>(d), 0.0);
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < d; ++k) {
        double acc = 0.0;
        for (Eigen::Index l = 0; l < d; ++l) {
            acc += qfi_weight(lambda(k), lambda(l), support) * std::real(a_eig(k, l) * b_eig(l, k));
        }
        rows[static_cast<std::size_t>(k)] = acc;
    }
    return 2.0 * std::accumulate(rows.begin(), rows.end(), 0.0);
}

double product_pair_sum(const RealVector &lambda, const ComplexMatrix &a_eig, double support) {
    const Eigen::Index d = lambda.size();
    std::vector<double> rows(static_cast<std::size_t>(d), 0.0);
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < d; ++k) {
        double acc = 0.0;
        for (Eigen::Index l = 0; l < d; ++l) {
            acc += product_weight(lambda(k), lambda(l), support) * std::norm(a_eig(k, l));
        }
        rows[static_cast<std::size_t>(k)] = acc;
    }
    return std::accumulate(rows.begin(), rows.end(), 0.0);
}

void pauli_channel_qubit(ComplexMatrix &rho, int n_qubits, int site, PauliFactors f) {
    check_channel_args(rho, n_qubits, site);
    const int bit = n_qubits - 1 - site;
    const std::size_t stride = std::size_t{1} << bit;
    const auto half = static_cast<std::ptrdiff_t>(std::size_t{1} << (n_qubits - 1));
    // Column-major storage: keep the row index innermost.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t cc = 0; cc < half; ++cc) {
        const std::size_t c0 = insert_zero_bit(static_cast<std::size_t>(cc), bit);
        for (std::ptrdiff_t rr = 0; rr < half; ++rr) {
            apply_block(rho, insert_zero_bit(static_cast<std::size_t>(rr), bit), c0, stride, f);
        }
    }
}

ScanResult direction_scan(const Eigen::Matrix3d &f, std::span<const Eigen::Vector3d> directions) {
    const auto n = static_cast<std::ptrdiff_t>(directions.size());
    std::vector<double> values(directions.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto &v = directions[static_cast<std::size_t>(i)];
        values[static_cast<std::size_t>(i)] = v.dot(f * v);
    }
    ScanResult best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > best.value) {
            best = {values[i], i};
        }
    }
    return best;
}

} // namespace parallel

} // namespace qmetro::kernels
