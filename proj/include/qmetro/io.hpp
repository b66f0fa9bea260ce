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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmetro/metrology.hpp"
#include "qmetro/witnesses.hpp"

namespace qmetro::io {

using Json = nlohmann::ordered_json;

inline constexpr const char *kStateFormat = "qmetro-state/1";

/// {"format", "representation", "n_qubits", "kind", "label", "data"}; data holds [re, im] pairs, row-major.
Json state_to_json(const QuantumState &s);
/// Validates the tag, shape and QuantumState invariants.
QuantumState state_from_json(const Json &j);

std::string dump_state(const QuantumState &s);
QuantumState parse_state(const std::string &text);
void write_state_file(const std::string &path, const QuantumState &s);
QuantumState read_state_file(const std::string &path);

Json to_json(const WitnessReport &r);
Json to_json(const DepthCertificate &d);
Json to_json(const ErrorPropagation &e);

/// Non-finite values become strings ("inf", "-inf", "nan"); JSON has no literal for them.
Json number(double x);

/// printf %.17g
std::string format_g17(double x);

inline constexpr const char *kSweepHeader =
    "scenario,N,p,lambda,theta0,precision_inv,qfi,bound_sep,bound_bisep,bound_heisenberg";
void write_sweep_csv(std::ostream &out, const std::vector<SweepRecord> &records);

/// start:stop:count[:lin|log]; count 0 is an empty range; log needs start, stop > 0.
std::vector<double> parse_range(const std::string &spec);
/// A range whose values must all be integers (e.g. N lists). Also accepts a single integer or a comma list.
std::vector<int> parse_int_range(const std::string &spec);

} // namespace qmetro::io
