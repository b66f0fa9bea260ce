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

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qmetro/config.hpp"

using namespace qmetro::cli;

int main(int argc, char **argv) {
    qmetro::apply_thread_limit_from_env();

    CLI::App app{"qmetro: quantum metrology numerics (QMETRO_THREADS caps OpenMP workers)"};
    app.require_subcommand(1);

    StateArgs state;
    auto *st = app.add_subcommand("state", "Build a probe state and write it as a qmetro-state/1 JSON file");
    st->add_option("--kind", state.kind, "ghz, dicke, polarized, coherent, singlet, squeezed")->required();
    st->add_option("-N,--n", state.n, "number of qubits")->required();
    st->add_option("--m", state.m, "Dicke excitation number");
    st->add_option("--lambda", state.lambda, "Lambda of H = J_x^2 - Lambda J_z (squeezed)");
    st->add_option("--axis", state.axis, "axis for ghz and polarized");
    st->add_option("--theta", state.theta, "polar angle (coherent)");
    st->add_option("--phi", state.phi, "azimuth (coherent)");
    st->add_option("--rep", state.rep, "symmetric or full (default symmetric; full for singlet)");
    st->add_option("-o,--out", state.out, "output path (default stdout)");

    QfiArgs qf;
    auto *q = app.add_subcommand("qfi", "Quantum Fisher information of a state file");
    q->add_option("--state", qf.state, "state file")->required();
    q->add_option("--axis", qf.axis, "collective axis x, y or z");
    q->add_option("--direction", qf.direction, "unit direction a,b,c (normalized)");
    q->add_flag("--gradient", qf.gradient, "sum_n n j_y^(n) (full representation)");
    q->add_flag("--sld", qf.sld, "include the symmetric logarithmic derivative");
    q->add_flag("--wy", qf.wy, "include the Wigner-Yanase skew information and 4I <= F_Q <= 4Var");
    q->add_flag("--zeno", qf.zeno, "include the quantum Zeno time 2/sqrt(F_Q)");
    q->add_option("-o,--out", qf.out, "output path (default stdout)");

    WitnessArgs wit;
    auto *w = app.add_subcommand("witness", "Entanglement witnesses and depth certificate for a state file");
    w->add_option("--state", wit.state, "state file")->required();
    w->add_flag("--all", wit.all, "every criterion (default)");
    w->add_option("--criterion", wit.criteria, "criterion name prefixes, e.g. xi_os ssi_ qfi_entanglement");
    w->add_option("-o,--out", wit.out, "output path (default stdout)");

    ScenarioArgs scen;
    auto *sc = app.add_subcommand("scenario", "Error propagation and Cramer-Rao check of a phase-estimation scheme");
    sc->add_option("--id", scen.id, "ramsey, ghz, dicke, squeezed, gradient, gradient_homogeneous")->required();
    sc->add_option("-N,--n", scen.n, "number of qubits")->required();
    sc->add_option("--rep", scen.rep, "symmetric or full (ramsey, ghz, dicke)");
    sc->add_option("--theta0", scen.theta0, "working point");
    sc->add_option("--lambda", scen.lambda, "Lambda (squeezed)");
    sc->add_option("--max-order", scen.max_order, "Taylor order for the theta -> theta0 limit");
    sc->add_option("-o,--out", scen.out, "output path (default stdout)");

    SweepArgs sw;
    auto *swc = app.add_subcommand("sweep", "Squeezing frontier or noisy scaling sweep, written as CSV");
    swc->add_option("--scenario", sw.scenario, "frontier or noise")->required();
    swc->add_option("-N,--n", sw.n_range, "N list: start:stop:count[:lin|log] or comma list")->required();
    swc->add_option("--p", sw.p, "depolarizing probability (noise)");
    swc->add_option("--lambda", sw.lambda_range, "Lambda grid start:stop:count[:lin|log]");
    swc->add_option("--polarization", sw.polarization_range, "frontier on a <J_z>/J_max grid instead of Lambda");
    swc->add_option("--coarse", sw.coarse, "coarse log grid points (noise)");
    swc->add_option("--golden", sw.golden, "golden-section iterations (noise)");
    swc->add_flag("--no-qfi", sw.no_qfi, "skip the QFI column (noise)");
    swc->add_option("-o,--out", sw.out, "output CSV (default stdout)");

    SelftestArgs self;
    auto *se = app.add_subcommand("selftest", "Run the randomized property battery");
    se->add_option("--samples", self.samples, "samples per property");
    se->add_option("--seed", self.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (st->parsed()) {
            return cmd_state(state);
        }
        if (q->parsed()) {
            return cmd_qfi(qf);
        }
        if (w->parsed()) {
            return cmd_witness(wit);
        }
        if (sc->parsed()) {
            return cmd_scenario(scen);
        }
        if (swc->parsed()) {
            return cmd_sweep(sw);
        }
        if (se->parsed()) {
            return cmd_selftest(self);
        }
    } catch (const std::exception &e) {
        std::cerr << "qmetro: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
