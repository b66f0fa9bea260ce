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

// Serial reference kernels against their OpenMP versions: wall time and
// largest deviation. Run with QMETRO_THREADS=k to vary the worker count.
#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "qmetro/kernels.hpp"
#include "qmetro/properties.hpp"
#include "qmetro/witnesses.hpp"

using namespace qmetro;

namespace {

double seconds(const std::function<void()> &f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) {
        f();
    }
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char *name, int dim, double t_serial, double t_parallel, double deviation) {
    std::printf("%-22s %6d %12.6f %12.6f %8.2fx %10.3e\n", name, dim, t_serial, t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0, deviation);
}

} // namespace

int main() {
    apply_thread_limit_from_env();
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-22s %6s %12s %12s %9s %10s\n", "kernel", "dim", "serial [s]", "parallel [s]", "speedup", "max dev");
    Sampler s(7);
    for (int n : {6, 8, 10}) {
        const Eigen::Index d = Eigen::Index{1} << n;
        const int reps = n == 10 ? 3 : 20;
        RealVector lambda = RealVector::Zero(d);
        for (Eigen::Index k = 0; k < d; ++k) {
            lambda(k) = s.uniform();
        }
        lambda /= lambda.sum();
        const ComplexMatrix a = s.hermitian(d);
        kernels::PairSum ser;
        kernels::PairSum par;
        const double ts = seconds([&] { ser = kernels::serial::qfi_pair_sum(lambda, a, 1e-12); }, reps);
        const double tp = seconds([&] { par = kernels::parallel::qfi_pair_sum(lambda, a, 1e-12); }, reps);
        row("qfi_pair_sum", static_cast<int>(d), ts, tp, std::abs(ser.value - par.value));

        const ComplexMatrix rho0 = s.density(d);
        const kernels::PauliFactors f{0.7, 0.7, 0.7};
        ComplexMatrix r1 = rho0;
        ComplexMatrix r2 = rho0;
        const double cs = seconds(
            [&] {
                for (int site = 0; site < n; ++site) {
                    kernels::serial::pauli_channel_qubit(r1, n, site, f);
                }
            },
            1);
        const double cp = seconds(
            [&] {
                for (int site = 0; site < n; ++site) {
                    kernels::parallel::pauli_channel_qubit(r2, n, site, f);
                }
            },
            1);
        row("pauli_channel (all)", static_cast<int>(d), cs, cp, (r1 - r2).cwiseAbs().maxCoeff());
    }
    {
        const auto dirs = golden_spiral(1 << 16);
        Eigen::Matrix3d fm = Eigen::Matrix3d::Random();
        fm = (fm + fm.transpose()).eval();
        kernels::ScanResult ser;
        kernels::ScanResult par;
        const double ts = seconds([&] { ser = kernels::serial::direction_scan(fm, dirs); }, 20);
        const double tp = seconds([&] { par = kernels::parallel::direction_scan(fm, dirs); }, 20);
        row("direction_scan", static_cast<int>(dirs.size()), ts, tp, std::abs(ser.value - par.value));
    }
    return 0;
}
