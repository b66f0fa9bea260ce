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

#include <stdexcept>
#include <string>

namespace qmetro {

/**
 * Numerical thresholds shared by every module. Property tests and the
 * acceptance suite read these rather than hardcoding their own.
 */
struct Tolerances {
    double hermitian = 1e-12;     ///< elementwise, relative to max |M_ij|
    double spectral = 1e-10;      ///< reconstruction / orthonormality
    double psd_clamp = 1e-10;     ///< eigenvalues above -psd_clamp are clamped to 0
    double state_norm = 1e-10;    ///< |norm - 1| or |trace - 1|
    double support = 1e-12;       ///< QFI pairs with lambda_k + lambda_l below this are dropped
    double verdict = 1e-9;        ///< witness thresholds
    double unit_vector = 1e-9;    ///< | |n| - 1 |
};

inline constexpr Tolerances kTol{};

/// Raised when an input violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a size limit of a representation is exceeded.
class SizeLimit : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Raised when numbers describe no physical state (e.g. moments violating Jxyz2).
class Unphysical : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/**
 * Caps the OpenMP worker count from the QMETRO_THREADS environment variable.
 * Returns the effective cap (0 when the variable is unset).
 */
int apply_thread_limit_from_env();

} // namespace qmetro
