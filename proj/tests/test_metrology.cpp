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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "qmetro/fisher.hpp"
#include "qmetro/metrology.hpp"

using namespace qmetro;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("textbook schemes", "[metrology]") {
    for (int n : {2, 5, 8}) {
        const ErrorPropagation r = error_propagation(ramsey_scenario(n, Representation::symmetric(n)));
        CHECK(r.sensitive);
        CHECK_FALSE(r.limit);
        CHECK_THAT(r.variance, WithinRel(1.0 / n, 1e-12));

        const ErrorPropagation g = error_propagation(ghz_parity_scenario(n, Representation::symmetric(n)));
        CHECK(g.sensitive);
        CHECK(g.limit);
        CHECK_THAT(g.variance, WithinRel(1.0 / (n * n), 1e-10));
    }
    for (int n : {2, 4, 8}) {
        const ErrorPropagation d = error_propagation(dicke_scenario(n, Representation::symmetric(n)));
        CHECK(d.limit);
        CHECK_THAT(d.variance, WithinRel(2.0 / (n * (n + 2.0)), 1e-10));
    }
    // The full representation agrees with the symmetric one.
    const ErrorPropagation full = error_propagation(ghz_parity_scenario(4, Representation::full(4)));
    CHECK_THAT(full.variance, WithinRel(1.0 / 16.0, 1e-10));
}

TEST_CASE("curves against closed forms", "[metrology]") {
    const std::vector<double> thetas{0.0, 0.1, 0.7, 1.3, 2.9};
    const Scenario r = ramsey_scenario(6, Representation::symmetric(6));
    const auto rc = ramsey_curve(r, thetas);
    const Scenario g = ghz_parity_scenario(5, Representation::symmetric(5));
    const auto gc = ramsey_curve(g, thetas);
    const Scenario d = dicke_scenario(6, Representation::symmetric(6));
    const auto dc = ramsey_curve(d, thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const CurvePoint a = ramsey_closed_form(r.probe, thetas[i]);
        CHECK_THAT(rc[i].mean, WithinAbs(a.mean, 1e-12));
        CHECK_THAT(rc[i].variance, WithinAbs(a.variance, 1e-12));
        const CurvePoint b = ghz_parity_closed_form(5, thetas[i]);
        CHECK_THAT(gc[i].mean, WithinAbs(b.mean, 1e-12));
        CHECK_THAT(gc[i].variance, WithinAbs(b.variance, 1e-12));
        CHECK_THAT(dc[i].mean, WithinAbs(dicke_mean_closed_form(6, thetas[i]), 1e-11));
    }
}

TEST_CASE("derivative check", "[metrology]") {
    for (double t0 : {0.2, 0.9}) {
        CHECK(derivative_check(ramsey_scenario(6, Representation::symmetric(6), t0)).rel_error < 1e-6);
        CHECK(derivative_check(dicke_scenario(6, Representation::symmetric(6), t0)).rel_error < 1e-6);
        CHECK(derivative_check(squeezed_scenario({20, 0.5}, t0)).rel_error < 1e-6);
    }
}

TEST_CASE("gradient scheme", "[metrology]") {
    // numpy oracle on the PI singlet, theta -> 0
    CHECK_THAT(error_propagation(gradient_scenario(2)).variance, WithinRel(1.0, 1e-9));
    CHECK_THAT(error_propagation(gradient_scenario(4)).variance, WithinRel(0.15, 1e-9));
    const ErrorPropagation h = error_propagation(gradient_scenario(4, 0.0, true));
    CHECK_FALSE(h.sensitive);
    CHECK(std::isinf(h.variance));
    CHECK(h.precision_inv == 0.0);

    // A homogeneous pre-rotation of the singlet changes nothing.
    Scenario sc = gradient_scenario(4, 0.3);
    const double base = error_propagation(sc).variance;
    sc.probe = rotate(sc.probe, build_collective(Axis::x, sc.probe.rep()), 0.8);
    CHECK_THAT(error_propagation(sc).variance, WithinRel(base, 1e-9));
}

TEST_CASE("Cramer-Rao consistency", "[metrology]") {
    const CrbReport g = crb_consistency(ghz_parity_scenario(6, Representation::symmetric(6)));
    CHECK(g.holds);
    CHECK_THAT(g.gap, WithinAbs(0.0, 1e-9));
    const CrbReport r = crb_consistency(ramsey_scenario(6, Representation::symmetric(6)));
    CHECK_THAT(r.gap, WithinAbs(0.0, 1e-12));

    Scenario bad = ramsey_scenario(6, Representation::symmetric(6), 0.3);
    bad.measured = square(build_collective(Axis::z, bad.probe.rep()));
    const CrbReport b = crb_consistency(bad);
    CHECK(b.holds);
    CHECK(b.gap > 1e-3);

    for (double lambda : {0.05, 1.0, 20.0}) {
        CHECK(crb_consistency(squeezed_scenario({30, lambda})).holds);
    }
}

TEST_CASE("squeezing frontier", "[metrology]") {
    const int n = 100;
    const auto rows = squeezing_frontier(n, {1e-3, 0.1, 1.0, 10.0, 1e4});
    for (const auto &r : rows) {
        CHECK(r.under_ceiling);
        CHECK(r.precision_inv <= r.ceiling);
        CHECK(r.precision_inv <= r.qfi + 1e-6);
    }
    // Strong field: nearly polarized, shot-noise precision.
    CHECK(rows.back().polarization > 0.999);
    CHECK_THAT(rows.back().precision_inv, WithinRel(static_cast<double>(n), 1e-2));

    const double lam = lambda_for_polarization(n, 0.5);
    const FrontierRow at = frontier_row(n, lam);
    CHECK_THAT(at.polarization, WithinAbs(0.5, 1e-9));
    CHECK_THROWS_AS(lambda_for_polarization(n, 1.5), InvalidArgument);
}

TEST_CASE("noisy precision (numpy oracle)", "[metrology]") {
    double var = 0.0;
    CHECK_THAT(noisy_precision(4, 0.2, 1.0, &var), WithinRel(3.2738745578844304, 1e-9));
    CHECK_THAT(var, WithinRel(0.6373127016951805, 1e-9));
    const QuantumState s = apply_noise(squeezed_ground_state({4, 1.0}), NoiseChannel::depolarizing(0.2));
    CHECK_THAT(qfi(s, build_collective(Axis::y, s.rep())).value, WithinRel(3.5942502637274516, 1e-9));
    // Ground-state precision without noise.
    CHECK_THAT(noisy_precision(10, 0.0, 0.5), WithinRel(36.1354972709319, 1e-9));
    CHECK(noisy_precision(4, 1.0, 1.0) == 0.0);
}

TEST_CASE("noisy scaling sweep", "[metrology]") {
    SweepOptions opts;
    opts.coarse_points = 16;
    opts.golden_iterations = 30;
    const SweepResult r = noisy_scaling_sweep(0.25, {2, 4, 6}, opts);
    CHECK(r.failures.empty());
    REQUIRE(r.records.size() == 3);
    REQUIRE(r.exponent);
    for (const auto &rec : r.records) {
        CHECK(rec.precision_inv <= rec.noise_ceiling);
        CHECK(rec.precision_inv <= rec.qfi + 1e-8);
        CHECK(rec.var_jx >= 0.25 * rec.n / 4.0 - 1e-12);
    }
}

TEST_CASE("log-log slope", "[metrology]") {
    CHECK_THAT(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}), WithinAbs(2.0, 1e-12));
    CHECK_THROWS_AS(loglog_slope({1}, {1}), InvalidArgument);
}
