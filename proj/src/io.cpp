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

#include "qmetro/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qmetro::io {

namespace {

Json pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex unpair(const Json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidArgument("state file: each entry must be a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

Json state_to_json(const QuantumState &s) {
    Json j;
    j["format"] = kStateFormat;
    j["representation"] = s.rep().is_full() ? "full" : "symmetric";
    j["n_qubits"] = s.rep().n_qubits;
    j["kind"] = s.is_pure() ? "pure" : "density";
    j["label"] = s.label();
    Json data = Json::array();
    if (s.is_pure()) {
        for (Eigen::Index i = 0; i < s.dim(); ++i) {
            data.push_back(pair(s.vector()(i)));
        }
    } else {
        const ComplexMatrix &rho = s.matrix();
        for (Eigen::Index r = 0; r < rho.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < rho.cols(); ++c) {
                row.push_back(pair(rho(r, c)));
            }
            data.push_back(std::move(row));
        }
    }
    j["data"] = std::move(data);
    return j;
}

QuantumState state_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("format") || j["format"] != kStateFormat) {
        throw InvalidArgument(std::string("state file: missing or unknown format tag (expected ") + kStateFormat + ")");
    }
    for (const char *key : {"representation", "n_qubits", "kind", "data"}) {
        if (!j.contains(key)) {
            throw InvalidArgument(std::string("state file: missing field '") + key + "'");
        }
    }
    const std::string rep_name = j["representation"].get<std::string>();
    const int n = j["n_qubits"].get<int>();
    if (n < 1) {
        throw InvalidArgument("state file: n_qubits must be >= 1");
    }
    Representation rep;
    if (rep_name == "full") {
        rep = Representation::full(n);
    } else if (rep_name == "symmetric") {
        rep = Representation::symmetric(n);
    } else {
        throw InvalidArgument("state file: representation must be 'full' or 'symmetric' (got '" + rep_name + "')");
    }
    const std::string kind = j["kind"].get<std::string>();
    const std::string label = j.value("label", std::string{});
    const Json &data = j["data"];
    const Eigen::Index d = rep.dim();
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != d) {
        throw InvalidArgument("state file: data must have " + std::to_string(d) + " entries for " + rep.name());
    }
    if (kind == "pure") {
        rep.check_vector_limit();
        ComplexVector psi(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            psi(i) = unpair(data[static_cast<std::size_t>(i)]);
        }
        return QuantumState::pure(rep, std::move(psi), label);
    }
    if (kind == "density") {
        rep.check_density_limit();
        ComplexMatrix rho(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            const Json &row = data[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
                throw InvalidArgument("state file: density row " + std::to_string(r) + " must have " +
                                      std::to_string(d) + " entries");
            }
            for (Eigen::Index c = 0; c < d; ++c) {
                rho(r, c) = unpair(row[static_cast<std::size_t>(c)]);
            }
        }
        return QuantumState::density(rep, std::move(rho), label);
    }
    throw InvalidArgument("state file: kind must be 'pure' or 'density' (got '" + kind + "')");
}

std::string dump_state(const QuantumState &s) { return state_to_json(s).dump(1) + "\n"; }

QuantumState parse_state(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("state file: ") + e.what());
    }
    try {
        return state_from_json(j);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("state file: ") + e.what());
    }
}

void write_state_file(const std::string &path, const QuantumState &s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << dump_state(s);
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

QuantumState read_state_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str());
}

Json number(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    if (std::isnan(x)) {
        return "nan";
    }
    return x > 0 ? "inf" : "-inf";
}

Json to_json(const DepthCertificate &d) {
    return Json{{"k", d.k}, {"bound", number(d.bound)}, {"boundary", d.boundary},
                {"genuine_multipartite", d.genuine_multipartite}};
}

Json to_json(const WitnessReport &r) {
    Json j{{"criterion", r.criterion},
           {"value", number(r.value)},
           {"threshold", number(r.threshold)},
           {"verdict", to_string(r.verdict)}};
    j["depth"] = r.depth ? Json(*r.depth) : Json(nullptr);
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

Json to_json(const ErrorPropagation &e) {
    return Json{{"sensitive", e.sensitive},
                {"method", e.method},
                {"variance", number(e.variance)},
                {"precision_inv", number(e.precision_inv)},
                {"mean", number(e.mean)},
                {"var_m", number(e.var_m)},
                {"slope", number(e.slope)},
                {"limit", e.limit},
                {"var_order", e.var_order},
                {"slope_order", e.slope_order}};
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRecord> &records) {
    out << kSweepHeader << '\n';
    for (const auto &r : records) {
        out << r.scenario << ',' << r.n << ',' << format_g17(r.p) << ',' << format_g17(r.lambda) << ','
            << format_g17(r.theta0) << ',' << format_g17(r.precision_inv) << ',' << format_g17(r.qfi) << ','
            << format_g17(r.bound_sep) << ',' << format_g17(r.bound_bisep) << ',' << format_g17(r.bound_heisenberg)
            << '\n';
    }
}

namespace {

double parse_number(const std::string &s, const std::string &spec) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw InvalidArgument("range '" + spec + "': '" + s + "' is not a number");
    }
    if (used != s.size() || !std::isfinite(v)) {
        throw InvalidArgument("range '" + spec + "': '" + s + "' is not a finite number");
    }
    return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

} // namespace

std::vector<double> parse_range(const std::string &spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3 && parts.size() != 4) {
        throw InvalidArgument("range '" + spec + "': expected start:stop:count[:lin|log]");
    }
    const double start = parse_number(parts[0], spec);
    const double stop = parse_number(parts[1], spec);
    const double count_d = parse_number(parts[2], spec);
    if (count_d < 0 || count_d != std::floor(count_d) || count_d > 1e7) {
        throw InvalidArgument("range '" + spec + "': count must be a non-negative integer");
    }
    const auto count = static_cast<int>(count_d);
    const std::string scale = parts.size() == 4 ? parts[3] : "lin";
    if (scale != "lin" && scale != "log") {
        throw InvalidArgument("range '" + spec + "': scale must be 'lin' or 'log'");
    }
    if (scale == "log" && !(start > 0.0 && stop > 0.0)) {
        throw InvalidArgument("range '" + spec + "': log ranges need positive endpoints");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        if (scale == "lin") {
            out.push_back(i == count - 1 ? stop : start + (stop - start) * t);
        } else {
            const double a = std::log10(start);
            const double b = std::log10(stop);
            out.push_back(i == count - 1 ? stop : std::pow(10.0, a + (b - a) * t));
        }
    }
    return out;
}

std::vector<int> parse_int_range(const std::string &spec) {
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        values = parse_range(spec);
    } else {
        for (const auto &part : split(spec, ',')) {
            values.push_back(parse_number(part, spec));
        }
    }
    std::vector<int> out;
    for (double v : values) {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 || std::abs(r) > std::numeric_limits<int>::max()) {
            throw InvalidArgument("range '" + spec + "': value " + format_g17(v) + " is not an integer");
        }
        out.push_back(static_cast<int>(r));
    }
    return out;
}

} // namespace qmetro::io
