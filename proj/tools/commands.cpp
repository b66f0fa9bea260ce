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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <tuple>

#include "qmetro/fisher.hpp"
#include "qmetro/io.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/properties.hpp"
#include "qmetro/witnesses.hpp"

namespace qmetro::cli {

using io::Json;
using io::number;

namespace {

void emit(const std::string &text, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

Representation parse_rep(const std::string &name, int n) {
    if (name == "symmetric") {
        return Representation::symmetric(n);
    }
    if (name == "full") {
        return Representation::full(n);
    }
    throw InvalidArgument("representation must be 'symmetric' or 'full' (got '" + name + "')");
}

Json state_summary(const QuantumState &s) {
    return Json{{"label", s.label()},
                {"representation", s.rep().is_full() ? "full" : "symmetric"},
                {"n_qubits", s.rep().n_qubits},
                {"kind", s.is_pure() ? "pure" : "density"}};
}

Json matrix_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::Vector3d parse_direction(const std::string &spec) {
    std::istringstream in(spec);
    std::string part;
    std::vector<double> v;
    while (std::getline(in, part, ',')) {
        try {
            v.push_back(std::stod(part));
        } catch (const std::exception &) {
            throw InvalidArgument("direction '" + spec + "': expected three comma-separated numbers");
        }
    }
    if (v.size() != 3) {
        throw InvalidArgument("direction '" + spec + "': expected three comma-separated numbers");
    }
    Eigen::Vector3d n(v[0], v[1], v[2]);
    if (!(n.norm() > 0.0)) {
        throw InvalidArgument("direction '" + spec + "' has zero length");
    }
    return n.normalized();
}

CollectiveOperator generator_for(const QfiArgs &a, const Representation &rep) {
    const int chosen = (a.axis.empty() ? 0 : 1) + (a.direction.empty() ? 0 : 1) + (a.gradient ? 1 : 0);
    if (chosen != 1) {
        throw InvalidArgument("qfi: give exactly one of --axis, --direction, --gradient");
    }
    if (!a.axis.empty()) {
        return build_collective(parse_axis(a.axis), rep);
    }
    if (!a.direction.empty()) {
        return build_direction(parse_direction(a.direction), rep);
    }
    return build_gradient_generator(rep);
}

bool matches(const std::string &criterion, const std::vector<std::string> &wanted) {
    return std::any_of(wanted.begin(), wanted.end(),
                       [&](const std::string &w) { return criterion.rfind(w, 0) == 0; });
}

std::string record_name(const SweepRecord &r) {
    std::ostringstream out;
    out << r.scenario << " N=" << r.n << " p=" << io::format_g17(r.p) << " lambda=" << io::format_g17(r.lambda);
    return out.str();
}

std::vector<SweepRecord> frontier_records(const std::vector<int> &ns, const std::vector<double> &lambdas,
                                          const std::vector<double> &polarizations,
                                          std::vector<std::string> &failures) {
    struct Task {
        int n;
        double value;
    };
    std::vector<Task> tasks;
    for (int n : ns) {
        for (double v : lambdas.empty() ? polarizations : lambdas) {
            tasks.push_back({n, v});
        }
    }
    std::vector<FrontierRow> rows(tasks.size());
    std::vector<std::string> errors(tasks.size());
    const auto count = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const Task &t = tasks[static_cast<std::size_t>(i)];
        try {
            const double lambda = lambdas.empty() ? lambda_for_polarization(t.n, t.value) : t.value;
            rows[static_cast<std::size_t>(i)] = frontier_row(t.n, lambda);
        } catch (const std::exception &e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (const auto &e : errors) {
        if (!e.empty()) {
            throw InvalidArgument(e);
        }
    }
    std::vector<SweepRecord> records;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const FrontierRow &row = rows[i];
        const int n = tasks[i].n;
        SweepRecord r;
        r.scenario = "squeezed_frontier";
        r.n = n;
        r.lambda = row.lambda;
        r.precision_inv = row.precision_inv;
        r.qfi = row.qfi;
        r.bound_sep = n;
        r.bound_bisep = (n - 1.0) * (n - 1.0) + 1.0;
        r.bound_heisenberg = static_cast<double>(n) * n;
        records.push_back(r);
        if (!row.under_ceiling) {
            failures.push_back(record_name(r) + ": precision above 2N + N^2(1 - polarization^2)");
        }
        if (r.precision_inv > r.bound_heisenberg + 1e-6) {
            failures.push_back(record_name(r) + ": precision above N^2");
        }
        if (r.precision_inv > r.qfi * (1.0 + 1e-8) + 1e-8) {
            failures.push_back(record_name(r) + ": Cramer-Rao bound violated");
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const SweepRecord &a, const SweepRecord &b) {
        return std::tie(a.n, a.lambda) < std::tie(b.n, b.lambda);
    });
    for (int n : ns) {
        const FrontierRow *best = nullptr;
        const FrontierRow *lowest = nullptr;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].n != n) {
                continue;
            }
            if (best == nullptr || rows[i].precision_inv > best->precision_inv) {
                best = &rows[i];
            }
            if (lowest == nullptr || rows[i].polarization < lowest->polarization) {
                lowest = &rows[i];
            }
        }
        if (best != nullptr) {
            std::cerr << "frontier N=" << n << ": max (dtheta)^-2/N^2 = " << best->scaled
                      << " at polarization " << best->polarization << " (smallest sampled polarization "
                      << lowest->polarization << ")\n";
        }
    }
    return records;
}

} // namespace

int cmd_state(const StateArgs &a) {
    if (a.n < 1) {
        throw InvalidArgument("state: -N must be >= 1");
    }
    const std::string rep_name = a.rep.empty() ? (a.kind == "singlet" ? "full" : "symmetric") : a.rep;
    const Representation rep = parse_rep(rep_name, a.n);
    std::optional<QuantumState> s;
    if (a.kind == "ghz") {
        s = ghz(a.n, rep, parse_axis(a.axis));
    } else if (a.kind == "dicke") {
        if (a.m < 0) {
            throw InvalidArgument("state: dicke needs --m (number of excitations)");
        }
        s = dicke(a.n, a.m, rep);
    } else if (a.kind == "polarized") {
        s = polarized(a.n, parse_axis(a.axis), rep);
    } else if (a.kind == "coherent") {
        s = coherent(a.n, a.theta, a.phi, rep);
    } else if (a.kind == "singlet") {
        if (rep != Representation::full(a.n)) {
            throw InvalidArgument("state: the singlet lives in the full representation (use --rep full)");
        }
        s = singlet_pi(a.n);
    } else if (a.kind == "squeezed") {
        QuantumState g = squeezed_ground_state({a.n, a.lambda});
        s = rep.is_full() ? to_full(g) : g;
    } else {
        throw InvalidArgument("state: unknown kind '" + a.kind +
                              "' (ghz, dicke, polarized, coherent, singlet, squeezed)");
    }
    emit(io::dump_state(*s), a.out);
    return kOk;
}

int cmd_qfi(const QfiArgs &a) {
    const QuantumState s = io::read_state_file(a.state);
    const CollectiveOperator gen = generator_for(a, s.rep());
    const QfiResult f = qfi(s, gen);
    Json j;
    j["inputs"] = Json{{"state", a.state}, {"generator", gen.label()}};
    j["inputs"]["state_info"] = state_summary(s);
    j["qfi"] = number(f.value);
    j["skipped_pairs"] = f.skipped_pairs;
    j["variance"] = number(variance(s, gen));
    if (a.sld) {
        const ComplexMatrix l = sld(s, gen);
        const ComplexMatrix rho = s.density_matrix();
        j["sld"] = Json{{"tr_rho_l2", number((rho * l * l).trace().real())}, {"matrix", matrix_json(l)}};
    }
    if (a.wy) {
        const double wy = wigner_yanase(s, gen);
        const double var4 = 4.0 * variance(s, gen);
        j["wigner_yanase"] = number(wy);
        j["sandwich"] = Json{{"four_wy", number(4.0 * wy)},
                             {"qfi", number(f.value)},
                             {"four_var", number(var4)},
                             {"holds", 4.0 * wy <= f.value + 1e-8 && f.value <= var4 + 1e-8}};
    }
    if (a.zeno) {
        j["zeno_time"] = number(zeno_time(s, gen));
    }
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

int cmd_witness(const WitnessArgs &a) {
    const QuantumState s = io::read_state_file(a.state);
    Json j;
    j["inputs"] = Json{{"state", a.state}};
    j["inputs"]["state_info"] = state_summary(s);
    Json reports = Json::array();
    for (const auto &r : witness_battery(s)) {
        if (a.all || a.criteria.empty() || matches(r.criterion, a.criteria)) {
            reports.push_back(io::to_json(r));
        }
    }
    if (reports.empty()) {
        throw InvalidArgument("witness: no criterion matches the requested names");
    }
    j["reports"] = std::move(reports);
    const AvgQfiReport avg = avg_qfi(s);
    Json per_axis = Json::array();
    for (double v : avg.per_axis) {
        per_axis.push_back(number(v));
    }
    Json kprod = Json::array();
    for (double v : avg.k_producible) {
        kprod.push_back(number(v));
    }
    j["qfi"] = Json{{"per_axis", per_axis},
                    {"average", number(avg.value)},
                    {"separable_bound", number(avg.separable_bound)},
                    {"biseparable_bound", number(avg.biseparable_bound)},
                    {"max_bound", number(avg.max_bound)},
                    {"spin_length_bound", number(avg.spin_length_bound)},
                    {"k_producible_bounds", kprod}};
    j["depth_certificate"] = io::to_json(avg.depth);
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

int cmd_scenario(const ScenarioArgs &a) {
    std::optional<Scenario> sc;
    if (a.id == "ramsey") {
        sc = ramsey_scenario(a.n, parse_rep(a.rep, a.n), a.theta0);
    } else if (a.id == "ghz") {
        sc = ghz_parity_scenario(a.n, parse_rep(a.rep, a.n), a.theta0);
    } else if (a.id == "dicke") {
        sc = dicke_scenario(a.n, parse_rep(a.rep, a.n), a.theta0);
    } else if (a.id == "squeezed") {
        sc = squeezed_scenario({a.n, a.lambda}, a.theta0);
    } else if (a.id == "gradient") {
        sc = gradient_scenario(a.n, a.theta0, false);
    } else if (a.id == "gradient_homogeneous") {
        sc = gradient_scenario(a.n, a.theta0, true);
    } else {
        throw InvalidArgument("scenario: unknown id '" + a.id +
                              "' (ramsey, ghz, dicke, squeezed, gradient, gradient_homogeneous)");
    }
    const ErrorPropagation ep = error_propagation(*sc, a.max_order);
    const CrbReport crb = crb_consistency(*sc);
    Json j;
    j["inputs"] = Json{{"id", sc->id},
                       {"n", sc->n()},
                       {"representation", sc->probe.rep().is_full() ? "full" : "symmetric"},
                       {"theta0", a.theta0},
                       {"generator", sc->generator.label()},
                       {"measured", sc->measured.label()}};
    if (a.id == "squeezed") {
        j["inputs"]["lambda"] = a.lambda;
    }
    j["error_propagation"] = io::to_json(ep);
    if (!ep.limit && ep.sensitive) {
        const DerivativeCheck d = derivative_check(*sc);
        j["derivative_check"] = Json{{"analytic", number(d.analytic)},
                                     {"finite_difference", number(d.finite_difference)},
                                     {"rel_error", number(d.rel_error)}};
    }
    j["cramer_rao"] = Json{{"qfi", number(crb.qfi)},
                           {"inv_qfi", number(crb.inv_qfi)},
                           {"variance", number(crb.variance)},
                           {"gap", number(crb.gap)},
                           {"holds", crb.holds}};
    const double n = sc->n();
    const bool heisenberg_ok = !(ep.precision_inv > n * n + 1e-6);
    j["heisenberg_ok"] = heisenberg_ok;
    emit(j.dump(2) + "\n", a.out);
    if (!crb.holds || !heisenberg_ok) {
        std::cerr << "invariant violation in scenario " << sc->id << " N=" << sc->n() << "\n";
        return kInvariant;
    }
    return kOk;
}

int cmd_sweep(const SweepArgs &a) {
    const std::vector<int> ns = io::parse_int_range(a.n_range);
    if (ns.empty()) {
        throw InvalidArgument("sweep: the N range is empty");
    }
    std::vector<std::string> failures;
    std::vector<SweepRecord> records;
    if (a.scenario == "frontier") {
        if (!a.lambda_range.empty() && !a.polarization_range.empty()) {
            throw InvalidArgument("sweep: give --lambda or --polarization, not both");
        }
        std::vector<double> lambdas;
        std::vector<double> pols;
        if (!a.polarization_range.empty()) {
            pols = io::parse_range(a.polarization_range);
        } else {
            lambdas = io::parse_range(a.lambda_range.empty() ? "1e-3:1e4:64:log" : a.lambda_range);
        }
        if (lambdas.empty() && pols.empty()) {
            throw InvalidArgument("sweep: the lambda/polarization range is empty");
        }
        records = frontier_records(ns, lambdas, pols, failures);
    } else if (a.scenario == "noise") {
        SweepOptions opts;
        opts.coarse_points = a.coarse;
        opts.golden_iterations = a.golden;
        opts.compute_qfi = !a.no_qfi;
        if (!a.lambda_range.empty()) {
            const std::vector<double> grid = io::parse_range(a.lambda_range);
            if (grid.size() < 3) {
                throw InvalidArgument("sweep: the lambda grid needs at least 3 points");
            }
            opts.lambda_min = grid.front();
            opts.lambda_max = grid.back();
            opts.coarse_points = static_cast<int>(grid.size());
        }
        const SweepResult res = noisy_scaling_sweep(a.p, ns, opts);
        std::cerr << "coarse lambda grid: " << opts.coarse_points << " log-spaced points over ["
                  << opts.lambda_min << ", " << opts.lambda_max << "], then " << opts.golden_iterations
                  << " golden-section steps\n";
        if (res.exponent) {
            std::cerr << "fitted log-log exponent: " << io::format_g17(*res.exponent) << "\n";
        } else {
            std::cerr << "fewer than 3 sizes with nonzero precision: no exponent fitted\n";
        }
        records = res.records;
        failures = res.failures;
    } else {
        throw InvalidArgument("sweep: unknown scenario '" + a.scenario + "' (frontier, noise)");
    }
    std::ostringstream csv;
    io::write_sweep_csv(csv, records);
    emit(csv.str(), a.out);
    if (!failures.empty()) {
        std::cerr << "invariant violation: " << failures.front() << "\n";
        if (failures.size() > 1) {
            std::cerr << "(" << failures.size() - 1 << " more)\n";
        }
        return kInvariant;
    }
    return kOk;
}

int cmd_selftest(const SelftestArgs &a) {
    if (a.samples < 1) {
        throw InvalidArgument("selftest: --samples must be >= 1");
    }
    const auto results = run_property_battery({a.samples, a.seed});
    int failed = 0;
    for (const auto &r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  samples=" << r.samples
                  << " worst=" << r.worst << " tol=" << r.tolerance << "\n";
        failed += r.passed ? 0 : 1;
    }
    std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " properties hold\n";
    return failed == 0 ? kOk : kInvariant;
}

} // namespace qmetro::cli
