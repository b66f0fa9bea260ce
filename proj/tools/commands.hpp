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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmetro::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvariant = 2 };

struct StateArgs {
    std::string kind;
    int n = 0;
    int m = -1;
    double lambda = 1.0;
    std::string axis = "z";
    std::string rep; ///< empty: symmetric, or full for the singlet
    double theta = 0.0;
    double phi = 0.0;
    std::string out;
};

struct QfiArgs {
    std::string state;
    std::string axis;
    std::string direction;
    bool gradient = false;
    bool sld = false;
    bool wy = false;
    bool zeno = false;
    std::string out;
};

struct WitnessArgs {
    std::string state;
    bool all = false;
    std::vector<std::string> criteria;
    std::string out;
};

struct ScenarioArgs {
    std::string id;
    int n = 0;
    std::string rep = "symmetric";
    double theta0 = 0.0;
    double lambda = 1.0;
    int max_order = 6;
    std::string out;
};

struct SweepArgs {
    std::string scenario;
    std::string n_range;
    double p = 0.0;
    std::string lambda_range;
    std::string polarization_range;
    int coarse = 36;
    int golden = 60;
    bool no_qfi = false;
    std::string out;
};

struct SelftestArgs {
    int samples = 100;
    std::uint64_t seed = 20140501;
};

int cmd_state(const StateArgs &a);
int cmd_qfi(const QfiArgs &a);
int cmd_witness(const WitnessArgs &a);
int cmd_scenario(const ScenarioArgs &a);
int cmd_sweep(const SweepArgs &a);
int cmd_selftest(const SelftestArgs &a);

} // namespace qmetro::cli
