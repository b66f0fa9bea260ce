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

#include "qmetro/witnesses.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmetro/fisher.hpp"
#include "qmetro/kernels.hpp"

namespace qmetro {

namespace {

constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

double tol_for(double threshold) { return kTol.verdict * std::max(1.0, std::abs(threshold)); }

std::string axis_tag(Axis squeezed, Axis a, Axis b) {
    return std::string("(") + to_string(squeezed) + ";" + to_string(a) + to_string(b) + ")";
}

} // namespace

void MomentSet::validate() const {
    const double scale = std::max(1.0, 0.25 * n * (n + 2.0));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(second);
    if (es.eigenvalues()(0) < -1e-9 * scale) {
        std::ostringstream msg;
        msg << "second-moment matrix is not PSD (smallest eigenvalue " << es.eigenvalues()(0) << ")";
        throw Unphysical(msg.str());
    }
    if (casimir() > 0.25 * n * (n + 2.0) + 1e-9 * scale) {
        std::ostringstream msg;
        msg << "sum <J_l^2> = " << casimir() << " exceeds N(N+2)/4 = " << 0.25 * n * (n + 2.0);
        throw Unphysical(msg.str());
    }
}

MomentSet moments(const QuantumState &s) {
    MomentSet m;
    m.n = s.rep().n_qubits;
    std::array<const SparseMatrix *, 3> ops{};
    for (int l = 0; l < 3; ++l) {
        ops[static_cast<std::size_t>(l)] = &build_collective(kAxes[static_cast<std::size_t>(l)], s.rep()).matrix;
    }
    if (s.is_pure()) {
        std::array<ComplexVector, 3> v;
        for (int l = 0; l < 3; ++l) {
            v[static_cast<std::size_t>(l)] = *ops[static_cast<std::size_t>(l)] * s.vector();
            m.mean(l) = s.vector().dot(v[static_cast<std::size_t>(l)]).real();
        }
        for (int k = 0; k < 3; ++k) {
            for (int l = k; l < 3; ++l) {
                m.second(k, l) = m.second(l, k) =
                    v[static_cast<std::size_t>(k)].dot(v[static_cast<std::size_t>(l)]).real();
            }
        }
        return m;
    }
    for (int l = 0; l < 3; ++l) {
        m.mean(l) = expectation(s, *ops[static_cast<std::size_t>(l)]);
    }
    for (int k = 0; k < 3; ++k) {
        for (int l = k; l < 3; ++l) {
            const SparseMatrix prod = *ops[static_cast<std::size_t>(k)] * *ops[static_cast<std::size_t>(l)];
            // Re Tr(rho J_k J_l) is the symmetrized moment
            m.second(k, l) = m.second(l, k) = expectation(s, prod);
        }
    }
    return m;
}

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::Satisfied:
        return "satisfied";
    case Verdict::SatisfiedBoundary:
        return "satisfied (boundary)";
    case Verdict::Violated:
        return "violated";
    case Verdict::Inapplicable:
        return "inapplicable";
    }
    return "?";
}

WitnessReport judge(std::string criterion, double value, double threshold, Sense sense) {
    WitnessReport r;
    r.criterion = std::move(criterion);
    r.value = value;
    r.threshold = threshold;
    const double tol = tol_for(threshold);
    const double excess = sense == Sense::ViolatedBelow ? threshold - value : value - threshold;
    if (excess > tol) {
        r.verdict = Verdict::Violated;
    } else if (excess >= -tol) {
        r.verdict = Verdict::SatisfiedBoundary;
    } else {
        r.verdict = Verdict::Satisfied;
    }
    return r;
}

WitnessReport xi_squared_s(const MomentSet &m, Axis squeezed, Axis a, Axis b) {
    const std::string name = "xi_s^2" + axis_tag(squeezed, a, b);
    const double denom = m.first(a) * m.first(a) + m.first(b) * m.first(b);
    if (denom <= 1e-12) {
        WitnessReport r;
        r.criterion = name;
        r.threshold = 1.0;
        r.value = std::numeric_limits<double>::quiet_NaN();
        r.verdict = Verdict::Inapplicable;
        r.note = "mean spin in the plane vanishes";
        return r;
    }
    return judge(name, m.n * m.var(squeezed) / denom, 1.0, Sense::ViolatedBelow);
}

std::vector<WitnessReport> SsiReports::all() const {
    std::vector<WitnessReport> out{casimir, singlet};
    out.insert(out.end(), spsq2.begin(), spsq2.end());
    out.insert(out.end(), spsq3.begin(), spsq3.end());
    return out;
}

SsiReports optimal_ssi(const MomentSet &m) {
    const double n = m.n;
    SsiReports r;
    r.casimir = judge("ssi_casimir", m.casimir(), 0.25 * n * (n + 2.0), Sense::ViolatedAbove);
    if (m.casimir() - r.casimir.threshold > 1e-8 * std::max(1.0, r.casimir.threshold)) {
        std::ostringstream msg;
        msg << "moments are unphysical: sum <J_l^2> = " << m.casimir() << " > N(N+2)/4 = " << r.casimir.threshold;
        throw Unphysical(msg.str());
    }
    const double sum_var = m.var(Axis::x) + m.var(Axis::y) + m.var(Axis::z);
    r.singlet = judge("ssi_singlet", sum_var, 0.5 * n, Sense::ViolatedBelow);
    for (std::size_t i = 0; i < 3; ++i) {
        const Axis am = kAxes[i];
        const Axis ak = kAxes[(i + 1) % 3];
        const Axis al = kAxes[(i + 2) % 3];
        r.spsq2[i] = judge(std::string("ssi_spsq2(m=") + to_string(am) + ")",
                           m.second_moment(ak) + m.second_moment(al) - 0.5 * n, (n - 1.0) * m.var(am),
                           Sense::ViolatedAbove);
        r.spsq3[i] = judge(std::string("ssi_spsq3(m=") + to_string(am) + ")",
                           (n - 1.0) * (m.var(ak) + m.var(al)), m.second_moment(am) + 0.25 * n * (n - 2.0),
                           Sense::ViolatedBelow);
    }
    return r;
}

WitnessReport xi_squared_os(const MomentSet &m, Axis squeezed, Axis a, Axis b) {
    const std::string name = "xi_os^2" + axis_tag(squeezed, a, b);
    const double denom = m.second_moment(a) + m.second_moment(b) - 0.5 * m.n;
    if (denom <= 1e-12) {
        WitnessReport r;
        r.criterion = name;
        r.threshold = 1.0;
        r.value = std::numeric_limits<double>::quiet_NaN();
        r.verdict = Verdict::Inapplicable;
        r.note = "denominator <J_a^2> + <J_b^2> - N/2 is not positive";
        return r;
    }
    return judge(name, (m.n - 1.0) * m.var(squeezed) / denom, 1.0, Sense::ViolatedBelow);
}

WitnessReport xi_squared_singlet(const MomentSet &m) {
    const double sum_var = m.var(Axis::x) + m.var(Axis::y) + m.var(Axis::z);
    WitnessReport r = judge("xi_singlet^2", sum_var / (0.5 * m.n), 1.0, Sense::ViolatedBelow);
    std::ostringstream note;
    note << "non-entangled spins <= " << m.n * r.value;
    r.note = note.str();
    return r;
}

WitnessReport qfi_entanglement(double fq, int n, const std::string &generator) {
    WitnessReport r = judge("qfi_entanglement[" + generator + "]", fq, static_cast<double>(n), Sense::ViolatedAbove);
    const double nn = static_cast<double>(n) * n;
    if (fq > nn + 1e-6) {
        std::ostringstream note;
        note << "unphysical: F_Q exceeds N^2 = " << nn;
        r.note = note.str();
        return r;
    }
    const DepthCertificate d = depth_certificate(std::max(0.0, fq), n);
    r.depth = d.k;
    if (d.genuine_multipartite) {
        r.note = "genuine multipartite entanglement: F_Q > (N-1)^2 + 1";
    }
    return r;
}

WitnessReport qfi_entanglement(const QuantumState &s, const CollectiveOperator &a) {
    return qfi_entanglement(qfi(s, a).value, s.rep().n_qubits, a.label());
}

double chi_squared(const QuantumState &s, const CollectiveOperator &generator) {
    const double f = qfi(s, generator).value;
    if (f <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return s.rep().n_qubits / f;
}

double k_producible_bound(int n, int k) {
    if (k < 1 || k > n) {
        throw InvalidArgument("k_producible_bound: need 1 <= k <= N");
    }
    const double s = n / k;
    const double rest = n - s * k;
    return s * k * k + rest * rest;
}

double k_producible_avg_bound(int n, int k) {
    if (k < 1 || k > n) {
        throw InvalidArgument("k_producible_avg_bound: need 1 <= k <= N");
    }
    if (k == 1) {
        return 2.0 * n / 3.0;
    }
    const double s = n / k;
    const double rest = n - s * k;
    const double head = s * k * (k + 2.0) / 3.0;
    if (rest == 1.0) {
        return head + 2.0 / 3.0;
    }
    return head + rest * (rest + 2.0) / 3.0;
}

namespace {

DepthCertificate least_k(double value, int n, double (*bound)(int, int)) {
    DepthCertificate c;
    for (int k = 1; k <= n; ++k) {
        const double b = bound(n, k);
        const double tol = tol_for(b);
        if (value <= b + tol) {
            c.k = k;
            c.bound = b;
            c.boundary = std::abs(value - b) <= tol;
            return c;
        }
    }
    c.k = n;
    c.bound = bound(n, n);
    return c;
}

void check_fq_input(double fq, double ceiling, const char *what) {
    if (!(fq >= -1e-9)) {
        std::ostringstream msg;
        msg << what << ": Fisher information must be nonnegative (got " << fq << ")";
        throw InvalidArgument(msg.str());
    }
    if (fq > ceiling + 1e-6) {
        std::ostringstream msg;
        msg << what << ": value " << fq << " exceeds the maximum " << ceiling << " for any quantum state";
        throw Unphysical(msg.str());
    }
}

} // namespace

DepthCertificate depth_certificate(double fq, int n) {
    if (n < 1) {
        throw InvalidArgument("depth_certificate: N must be positive");
    }
    check_fq_input(fq, static_cast<double>(n) * n, "depth_certificate");
    DepthCertificate c = least_k(fq, n, &k_producible_bound);
    const double bisep = (n - 1.0) * (n - 1.0) + 1.0;
    c.genuine_multipartite = n >= 2 && fq > bisep + tol_for(bisep);
    return c;
}

DepthCertificate avg_depth_certificate(double avg_fq, int n) {
    if (n < 1) {
        throw InvalidArgument("avg_depth_certificate: N must be positive");
    }
    check_fq_input(avg_fq, n * (n + 2.0) / 3.0, "avg_depth_certificate");
    DepthCertificate c = least_k(avg_fq, n, &k_producible_avg_bound);
    const double bisep = (static_cast<double>(n) * n + 1.0) / 3.0;
    c.genuine_multipartite = n >= 3 && avg_fq > bisep + tol_for(bisep);
    return c;
}

WitnessReport AvgQfiReport::report() const {
    WitnessReport r = judge("avg_qfi", value, separable_bound, Sense::ViolatedAbove);
    r.depth = depth.k;
    std::ostringstream note;
    note << "bisep " << biseparable_bound << ", max " << max_bound << ", spin-length " << spin_length_bound;
    if (depth.genuine_multipartite) {
        note << "; genuine multipartite";
    }
    r.note = note.str();
    return r;
}

AvgQfiReport avg_qfi(const QuantumState &s) {
    const int n = s.rep().n_qubits;
    AvgQfiReport r;
    std::vector<CollectiveOperator> gens;
    for (Axis a : kAxes) {
        gens.push_back(build_collective(a, s.rep()));
    }
    const FisherMatrix f = fisher_matrix(s, gens);
    for (int l = 0; l < 3; ++l) {
        r.per_axis[static_cast<std::size_t>(l)] = std::max(0.0, f.matrix(l, l));
    }
    r.value = (r.per_axis[0] + r.per_axis[1] + r.per_axis[2]) / 3.0;
    r.separable_bound = 2.0 * n / 3.0;
    r.biseparable_bound = (static_cast<double>(n) * n + 1.0) / 3.0;
    r.max_bound = n * (n + 2.0) / 3.0;
    const MomentSet m = moments(s);
    r.spin_length_bound = 4.0 * (m.casimir() - m.mean.squaredNorm()) / 3.0;
    for (int k = 1; k <= n; ++k) {
        r.k_producible.push_back(k_producible_avg_bound(n, k));
    }
    r.depth = avg_depth_certificate(std::min(r.value, r.max_bound), n);
    return r;
}

std::vector<Eigen::Vector3d> golden_spiral(std::size_t n_points) {
    std::vector<Eigen::Vector3d> out;
    out.reserve(n_points);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n_points; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n_points);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i);
        out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    return out;
}

Macroscopicity macroscopicity(const QuantumState &s, std::size_t grid_points) {
    if (grid_points == 0) {
        throw InvalidArgument("macroscopicity: need at least one grid direction");
    }
    const int n = s.rep().n_qubits;
    std::vector<CollectiveOperator> gens;
    for (Axis a : kAxes) {
        gens.push_back(build_collective(a, s.rep()));
    }
    const Eigen::Matrix3d f = fisher_matrix(s, gens).matrix;
    const std::vector<Eigen::Vector3d> grid = golden_spiral(grid_points);
    const kernels::ScanResult scan = kernels::parallel::direction_scan(f, grid);

    Macroscopicity out;
    out.grid_index = scan.index;
    out.grid_max = scan.value;
    // Refinement: power iteration on the PSD quadratic form from the best grid point.
    Eigen::Vector3d v = grid[scan.index];
    double value = v.dot(f * v);
    for (int iter = 0; iter < 500; ++iter) {
        Eigen::Vector3d next = f * v;
        const double norm = next.norm();
        if (norm <= 1e-300) {
            break;
        }
        next /= norm;
        const double next_value = next.dot(f * next);
        if (next_value < value) {
            break;
        }
        const bool converged = (next - v).norm() < 1e-14;
        v = next;
        value = next_value;
        if (converged) {
            break;
        }
    }
    out.direction = v;
    out.refined_max = std::max(value, scan.value);
    out.n_eff = std::max(0.0, out.refined_max) / n;
    return out;
}

double macroscopic_index(const std::function<QuantumState(int)> &family, const std::vector<int> &sizes) {
    if (sizes.size() < 2) {
        throw InvalidArgument("macroscopic_index: need at least two sizes");
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (int n : sizes) {
        const double max_var = n * macroscopicity(family(n)).n_eff;
        if (max_var <= 0.0) {
            throw InvalidArgument("macroscopic_index: vanishing variance at N = " + std::to_string(n));
        }
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(max_var);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(sizes.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ComplexMatrix avg_two_particle_dm(const QuantumState &s) {
    const int n = s.rep().n_qubits;
    if (!s.rep().is_full()) {
        throw InvalidArgument("avg_two_particle_dm: needs the full representation");
    }
    if (n < 2) {
        throw InvalidArgument("avg_two_particle_dm: needs N >= 2");
    }
    s.rep().check_density_limit();
    const ComplexMatrix rho = s.density_matrix();
    ComplexMatrix acc = ComplexMatrix::Zero(4, 4);
    const std::size_t rest_count = std::size_t{1} << (n - 2);
    for (int q1 = 0; q1 < n; ++q1) {
        for (int q2 = q1 + 1; q2 < n; ++q2) {
            const int b1 = n - 1 - q1;
            const int b2 = n - 1 - q2;
            ComplexMatrix red = ComplexMatrix::Zero(4, 4);
            for (std::size_t rest = 0; rest < rest_count; ++rest) {
                // spread `rest` over the bits other than b1 and b2
                std::size_t base = 0;
                std::size_t src = rest;
                for (int bit = 0; bit < n; ++bit) {
                    if (bit == b1 || bit == b2) {
                        continue;
                    }
                    base |= (src & 1U) << bit;
                    src >>= 1U;
                }
                for (int r = 0; r < 4; ++r) {
                    const std::size_t row = base | (static_cast<std::size_t>(r >> 1) << b1) |
                                            (static_cast<std::size_t>(r & 1) << b2);
                    for (int c = 0; c < 4; ++c) {
                        const std::size_t col = base | (static_cast<std::size_t>(c >> 1) << b1) |
                                                (static_cast<std::size_t>(c & 1) << b2);
                        red(r, c) += rho(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
                    }
                }
            }
            acc += red;
        }
    }
    // Ordered pairs (m,n) and (n,m): add the swapped copy.
    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    const ComplexMatrix both = acc + swap * acc * swap;
    return both / (static_cast<double>(n) * (n - 1));
}

MomentSet moments_from_two_particle(const ComplexMatrix &rho2, int n) {
    if (rho2.rows() != 4 || rho2.cols() != 4 || n < 2) {
        throw InvalidArgument("moments_from_two_particle: needs a 4x4 matrix and N >= 2");
    }
    std::array<ComplexMatrix, 3> j;
    for (int l = 0; l < 3; ++l) {
        j[static_cast<std::size_t>(l)] = 0.5 * pauli(kAxes[static_cast<std::size_t>(l)]);
    }
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    MomentSet m;
    m.n = n;
    for (int l = 0; l < 3; ++l) {
        m.mean(l) = n * (rho2 * kron(j[static_cast<std::size_t>(l)], id)).trace().real();
    }
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            const double cross =
                (rho2 * kron(j[static_cast<std::size_t>(k)], j[static_cast<std::size_t>(l)])).trace().real();
            m.second(k, l) = (k == l ? 0.25 * n : 0.0) + n * (n - 1.0) * cross;
        }
    }
    m.second = 0.5 * (m.second + m.second.transpose()).eval();
    return m;
}

std::vector<WitnessReport> witness_battery(const QuantumState &s) {
    const MomentSet m = moments(s);
    std::vector<WitnessReport> out;
    for (std::size_t i = 0; i < 3; ++i) {
        out.push_back(xi_squared_s(m, kAxes[i], kAxes[(i + 1) % 3], kAxes[(i + 2) % 3]));
    }
    for (const auto &r : optimal_ssi(m).all()) {
        out.push_back(r);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        out.push_back(xi_squared_os(m, kAxes[i], kAxes[(i + 1) % 3], kAxes[(i + 2) % 3]));
    }
    out.push_back(xi_squared_singlet(m));
    for (Axis a : kAxes) {
        out.push_back(qfi_entanglement(s, build_collective(a, s.rep())));
    }
    out.push_back(avg_qfi(s).report());
    return out;
}

} // namespace qmetro
