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

#pragma once

#include <span>
#include <vector>

namespace qmetro {

/**
 * Real symmetric tridiagonal matrix: diag has n entries, off has n-1
 * (off[i] couples rows i and i+1).
 */
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    [[nodiscard]] std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const Tridiagonal &t, double x);

/// k-th smallest eigenvalue (0-based) by bisection, to near machine precision.
double tridiagonal_eigenvalue(const Tridiagonal &t, std::size_t k);

/**
 * Lowest eigenpair: bisection for the eigenvalue, then inverse iteration
 * on the positive-definite shifted matrix. The vector is normalized and its
 * largest-magnitude entry is positive.
 */
struct Eigenpair {
    double value;
    std::vector<double> vector;
};
Eigenpair tridiagonal_lowest(const Tridiagonal &t);

} // namespace qmetro
