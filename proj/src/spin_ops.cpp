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

#include "qmetro/spin_ops.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "qmetro/states.hpp"

namespace qmetro {

const char *to_string(Axis a) {
    switch (a) {
    case Axis::x:
        return "x";
    case Axis::y:
        return "y";
    case Axis::z:
        return "z";
    }
    return "?";
}

Axis parse_axis(const std::string &s) {
    if (s == "x" || s == "Jx") {
        return Axis::x;
    }
    if (s == "y" || s == "Jy") {
        return Axis::y;
    }
    if (s == "z" || s == "Jz") {
        return Axis::z;
    }
    throw InvalidArgument("unknown axis '" + s + "' (expected x, y or z)");
}

Eigen::Index Representation::dim() const {
    return kind == Kind::Full ? (Eigen::Index{1} << n_qubits) : Eigen::Index{n_qubits} + 1;
}

std::string Representation::name() const { return kind == Kind::Full ? "full" : "symmetric"; }

void Representation::check_vector_limit() const {
    const int limit = kind == Kind::Full ? kMaxFullVector : kMaxSymmetric;
    if (n_qubits < 1 || n_qubits > limit) {
        std::ostringstream msg;
        msg << name() << " representation supports 1 <= N <= " << limit << " for state vectors (got N = "
            << n_qubits << ")";
        throw SizeLimit(msg.str());
    }
}

void Representation::check_density_limit() const {
    const int limit = kind == Kind::Full ? kMaxFullDensity : kMaxSymmetric;
    if (n_qubits < 1 || n_qubits > limit) {
        std::ostringstream msg;
        msg << name() << " representation supports 1 <= N <= " << limit << " for density matrices (got N = "
            << n_qubits << ")";
        throw SizeLimit(msg.str());
    }
}

std::string CollectiveOperator::label() const {
    struct Visitor {
        std::string operator()(const AxisSource &s) const { return std::string("J") + to_string(s.axis); }
        std::string operator()(const DirectionSource &s) const {
            std::ostringstream out;
            out << "J_n(" << s.n.x() << "," << s.n.y() << "," << s.n.z() << ")";
            return out.str();
        }
        std::string operator()(const SiteWeightSource &s) const {
            return std::string("sum_n w_n j") + to_string(s.axis);
        }
        std::string operator()(const UserSource &s) const { return s.label; }
    };
    return std::visit(Visitor{}, provenance);
}

ComplexMatrix pauli(Axis axis) {
    ComplexMatrix s(2, 2);
    switch (axis) {
    case Axis::x:
        s << 0.0, 1.0, 1.0, 0.0;
        break;
    case Axis::y:
        s << 0.0, -kI, kI, 0.0;
        break;
    case Axis::z:
        s << 1.0, 0.0, 0.0, -1.0;
        break;
    }
    return s;
}

namespace {

// Symmetric subspace via ladder operators: <i-1| J_+ |i> = sqrt(j(j+1) - m(m+1)), m = j - i.
SparseMatrix symmetric_collective(Axis axis, int n) {
    const Eigen::Index dim = n + 1;
    const double j = 0.5 * n;
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(2 * dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double m = j - static_cast<double>(i);
        if (axis == Axis::z) {
            trips.emplace_back(i, i, m);
            continue;
        }
        if (i == 0) {
            continue;
        }
        const double jp = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        // J_x = (J_+ + J_-)/2, J_y = (J_+ - J_-)/(2i)
        if (axis == Axis::x) {
            trips.emplace_back(i - 1, i, 0.5 * jp);
            trips.emplace_back(i, i - 1, 0.5 * jp);
        } else {
            trips.emplace_back(i - 1, i, -0.5 * kI * jp);
            trips.emplace_back(i, i - 1, 0.5 * kI * jp);
        }
    }
    SparseMatrix out(dim, dim);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

// sum_n w_n sigma_axis^(n)/2 in the full space.
SparseMatrix full_site_sum(Axis axis, const std::vector<double> &weights) {
    const int n = static_cast<int>(weights.size());
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<Eigen::Triplet<Complex>> trips;
    if (axis == Axis::z) {
        trips.reserve(static_cast<std::size_t>(dim));
        for (Eigen::Index s = 0; s < dim; ++s) {
            double v = 0.0;
            for (int site = 0; site < n; ++site) {
                const int bit = n - 1 - site;
                v += weights[static_cast<std::size_t>(site)] * (((s >> bit) & 1) != 0 ? -0.5 : 0.5);
            }
            trips.emplace_back(s, s, v);
        }
    } else {
        trips.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(n));
        for (Eigen::Index s = 0; s < dim; ++s) {
            for (int site = 0; site < n; ++site) {
                const int bit = n - 1 - site;
                const Eigen::Index flipped = s ^ (Eigen::Index{1} << bit);
                const double w = weights[static_cast<std::size_t>(site)];
                if (w == 0.0) {
                    continue;
                }
                // <flipped| sigma |s>: sigma_x -> 1, sigma_y -> +i if s has the bit at 0 (|0> -> i|1>), else -i
                Complex elem = 0.5 * w;
                if (axis == Axis::y) {
                    const bool up = ((s >> bit) & 1) == 0;
                    elem *= up ? kI : -kI;
                }
                trips.emplace_back(flipped, s, elem);
            }
        }
    }
    SparseMatrix out(dim, dim);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

struct CacheKey {
    int axis;
    int kind;
    int n;
    auto operator<=>(const CacheKey &) const = default;
};

std::mutex &cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<CacheKey, std::unique_ptr<CollectiveOperator>> &cache() {
    static std::map<CacheKey, std::unique_ptr<CollectiveOperator>> c;
    return c;
}

void check_operator_rep(const Representation &rep) {
    if (rep.is_full()) {
        rep.check_vector_limit();
    } else if (rep.n_qubits < 1 || rep.n_qubits > Representation::kMaxSymmetric) {
        rep.check_vector_limit();
    }
}

} // namespace

const CollectiveOperator &build_collective(Axis axis, Representation rep) {
    check_operator_rep(rep);
    const CacheKey key{static_cast<int>(axis), static_cast<int>(rep.kind), rep.n_qubits};
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto &c = cache();
    auto it = c.find(key);
    if (it != c.end()) {
        return *it->second;
    }
    SparseMatrix m = rep.is_full() ? full_site_sum(axis, std::vector<double>(static_cast<std::size_t>(rep.n_qubits), 1.0))
                                   : symmetric_collective(axis, rep.n_qubits);
    m.makeCompressed();
    auto op = std::make_unique<CollectiveOperator>(CollectiveOperator{std::move(m), rep, AxisSource{axis}});
    const CollectiveOperator &ref = *op;
    c.emplace(key, std::move(op));
    return ref;
}

std::size_t collective_cache_size() {
    std::lock_guard<std::mutex> lock(cache_mutex());
    return cache().size();
}

CollectiveOperator build_direction(const Direction &n, Representation rep) {
    if (std::abs(n.norm() - 1.0) > kTol.unit_vector) {
        std::ostringstream msg;
        msg << "build_direction: direction must have unit norm (|n| = " << n.norm() << ")";
        throw InvalidArgument(msg.str());
    }
    SparseMatrix m = Complex(n.x()) * build_collective(Axis::x, rep).matrix +
                     Complex(n.y()) * build_collective(Axis::y, rep).matrix +
                     Complex(n.z()) * build_collective(Axis::z, rep).matrix;
    m.prune(Complex(0.0));
    return {std::move(m), rep, DirectionSource{n}};
}

CollectiveOperator build_site_weighted(Axis axis, const std::vector<double> &weights, Representation rep) {
    if (!rep.is_full()) {
        throw InvalidArgument("site-weighted operators are not permutation invariant and need the full "
                              "representation (the symmetric subspace is not invariant under them)");
    }
    rep.check_vector_limit();
    if (weights.size() != static_cast<std::size_t>(rep.n_qubits)) {
        throw InvalidArgument("build_site_weighted: one weight per qubit required");
    }
    SparseMatrix m = full_site_sum(axis, weights);
    m.makeCompressed();
    return {std::move(m), rep, SiteWeightSource{axis, weights}};
}

CollectiveOperator build_gradient_generator(Representation rep, bool centered) {
    std::vector<double> w(static_cast<std::size_t>(std::max(rep.n_qubits, 0)));
    const double center = centered ? 0.5 * (rep.n_qubits + 1) : 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = static_cast<double>(i + 1) - center;
    }
    return build_site_weighted(Axis::y, w, rep);
}

CollectiveOperator make_operator(const ComplexMatrix &m, Representation rep, std::string label) {
    if (m.rows() != rep.dim() || m.cols() != rep.dim()) {
        throw InvalidArgument("make_operator: matrix dimension does not match the representation");
    }
    if (!is_hermitian(m)) {
        std::ostringstream msg;
        msg << "make_operator: matrix is not Hermitian (max asymmetry " << max_asymmetry(m) << ")";
        throw InvalidArgument(msg.str());
    }
    SparseMatrix s = m.sparseView();
    s.makeCompressed();
    return {std::move(s), rep, UserSource{std::move(label)}};
}

CollectiveOperator parity_x(Representation rep) {
    rep.check_vector_limit();
    const Eigen::Index dim = rep.dim();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        // Full: flip every bit. Symmetric: |D^(k)> -> |D^(N-k)>.
        trips.emplace_back(dim - 1 - i, i, 1.0);
    }
    SparseMatrix m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return {std::move(m), rep, UserSource{"sigma_x^N"}};
}

QuantumState rotate(const QuantumState &state, const CollectiveOperator &generator, double theta) {
    if (!(state.rep() == generator.rep)) {
        throw InvalidArgument("rotate: state is in the " + state.rep().name() + " representation (N=" +
                              std::to_string(state.rep().n_qubits) + ") but the generator is in the " +
                              generator.rep.name() + " representation (N=" +
                              std::to_string(generator.rep.n_qubits) + ")");
    }
    if (theta == 0.0) {
        return state;
    }
    const ComplexMatrix u = unitary_exp(generator.dense(), theta, +1);
    if (state.is_pure()) {
        return QuantumState::pure(state.rep(), u * state.vector(), state.label());
    }
    return QuantumState::density(state.rep(), u * state.matrix() * u.adjoint(), state.label());
}

} // namespace qmetro
