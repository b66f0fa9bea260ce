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

#include "qmetro/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmetro {

namespace {

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin(const Tridiagonal &t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) {
            r += std::abs(t.off[i - 1]);
        }
        if (i + 1 < n) {
            r += std::abs(t.off[i]);
        }
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    return {lo, hi};
}

double scale_of(const Tridiagonal &t) {
    const auto [lo, hi] = gershgorin(t);
    return std::max({std::abs(lo), std::abs(hi), 1.0});
}

} // namespace

std::size_t sturm_count(const Tridiagonal &t, double x) {
    const std::size_t n = t.size();
    const double tiny = std::numeric_limits<double>::min() * 1e3;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
        q = t.diag[i] - x - (i > 0 ? e2 / q : 0.0);
        if (q == 0.0) {
            q = -tiny;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

double tridiagonal_eigenvalue(const Tridiagonal &t, std::size_t k) {
    if (k >= t.size()) {
        throw std::out_of_range("tridiagonal_eigenvalue: index beyond matrix size");
    }
    auto [lo, hi] = gershgorin(t);
    lo -= 1e-12 * scale_of(t);
    hi += 1e-12 * scale_of(t);
    // Invariant: count(lo) <= k < count(hi)
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count(t, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Eigenpair tridiagonal_lowest(const Tridiagonal &t) {
    const std::size_t n = t.size();
    if (n == 0) {
        throw std::invalid_argument("tridiagonal_lowest: empty matrix");
    }
    const double lambda = tridiagonal_eigenvalue(t, 0);
    if (n == 1) {
        return {lambda, {1.0}};
    }
    // T - shift*I is positive definite with smallest eigenvalue ~ delta, so the
    // unpivoted LDL^T factorization is stable.
    const double delta = 1e-10 * scale_of(t);
    const double shift = lambda - delta;

    std::vector<double> d(n);
    std::vector<double> l(n - 1);
    d[0] = t.diag[0] - shift;
    for (std::size_t i = 1; i < n; ++i) {
        l[i - 1] = t.off[i - 1] / d[i - 1];
        d[i] = t.diag[i] - shift - l[i - 1] * t.off[i - 1];
    }

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int iter = 0; iter < 4; ++iter) {
        // forward: L y = x
        for (std::size_t i = 1; i < n; ++i) {
            x[i] -= l[i - 1] * x[i - 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            x[i] /= d[i];
        }
        // backward: L^T z = y
        for (std::size_t i = n - 1; i-- > 0;) {
            x[i] -= l[i] * x[i + 1];
        }
        double norm = 0.0;
        for (double v : x) {
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (double &v : x) {
            v /= norm;
        }
    }
    const auto largest = std::max_element(x.begin(), x.end(),
                                          [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*largest < 0.0) {
        for (double &v : x) {
            v = -v;
        }
    }
    return {lambda, std::move(x)};
}

} // namespace qmetro
