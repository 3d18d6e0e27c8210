// Copyright 2026 The vqgf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "circuit.hpp"
#include "optimize.hpp"
#include "statevector.hpp"

namespace vqgf::io {

/// Input that does not parse or violates a file schema.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Well-formed file whose parameters do not fit the declared circuit.
class ShapeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest form that still carries 17 significant digits; 0 prints as "0".
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/**
 * Saved parameters of one training run.
 *
 * `ansatz` is "basic" or "strong" for trained layered circuits; "mcx" and
 * "nielsen_chuang" name the fixed reference circuits (layers is ignored).
 */
struct ParamsFile {
    int version = 1;
    std::size_t qubits = 0;
    std::string ansatz = "basic";
    std::size_t layers = 0;
    std::string method = "observable";
    std::uint64_t seed = 0;
    double final_cost = 0.0;
    bool strip_trailing_cnots = false;
    std::vector<double> params;
};

/// Circuit described by a params file; throws ShapeError if the params do not fit.
inline Circuit circuit_for(const ParamsFile &pf) {
    Circuit c;
    try {
        if (pf.ansatz == "mcx") {
            c = mcx_circuit(pf.qubits);
        } else if (pf.ansatz == "nielsen_chuang") {
            if (pf.qubits != 3) {
                throw ShapeError("nielsen_chuang circuit is defined on 3 qubits only");
            }
            c = nielsen_chuang_toffoli();
        } else {
            c = build_ansatz(parse_ansatz_kind(pf.ansatz), pf.qubits, pf.layers);
        }
    } catch (const std::invalid_argument &e) {
        throw ShapeError(e.what());
    }
    if (pf.strip_trailing_cnots) {
        c = strip_trailing_cnots(c);
    }
    if (pf.params.size() != c.param_count()) {
        throw ShapeError("params file holds " + std::to_string(pf.params.size()) +
                         " angles, circuit expects " + std::to_string(c.param_count()));
    }
    return c;
}

inline nlohmann::json to_json(const ParamsFile &pf) {
    return nlohmann::json{{"version", pf.version},
                          {"qubits", pf.qubits},
                          {"ansatz", pf.ansatz},
                          {"layers", pf.layers},
                          {"method", pf.method},
                          {"seed", pf.seed},
                          {"final_cost", pf.final_cost},
                          {"strip_trailing_cnots", pf.strip_trailing_cnots},
                          {"params", pf.params}};
}

inline ParamsFile params_from_json(const nlohmann::json &j) {
    try {
        ParamsFile pf;
        pf.version = j.at("version").get<int>();
        if (pf.version != 1) {
            throw FormatError("unsupported params file version " + std::to_string(pf.version));
        }
        pf.qubits = j.at("qubits").get<std::size_t>();
        pf.ansatz = j.at("ansatz").get<std::string>();
        pf.layers = j.at("layers").get<std::size_t>();
        pf.method = j.at("method").get<std::string>();
        pf.seed = j.at("seed").get<std::uint64_t>();
        pf.final_cost = j.at("final_cost").get<double>();
        pf.strip_trailing_cnots = j.value("strip_trailing_cnots", false);
        pf.params = j.at("params").get<std::vector<double>>();
        return pf;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed params file: ") + e.what());
    }
}

inline ParamsFile parse_params(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError(std::string("params file is not JSON: ") + e.what());
    }
    return params_from_json(j);
}

inline std::string dump_params(const ParamsFile &pf) { return to_json(pf).dump(2) + "\n"; }

inline std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

inline ParamsFile read_params_file(const std::string &path) { return parse_params(read_text(path)); }

inline void write_params_file(const std::string &path, const ParamsFile &pf) {
    write_text(path, dump_params(pf));
}

/// `step,cost` CSV, one row per recorded cost.
inline void write_trace_csv(std::ostream &out, const std::vector<double> &costs) {
    out << "step,cost\n";
    for (std::size_t i = 0; i < costs.size(); ++i) {
        out << i << ',' << format_real(costs[i]) << '\n';
    }
}

inline std::vector<double> read_trace_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "step,cost") {
        throw FormatError("trace must start with header 'step,cost'");
    }
    std::vector<double> costs;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw FormatError("trace row without comma: " + line);
        }
        std::size_t step = 0;
        const auto [p, ec] = std::from_chars(line.data(), line.data() + comma, step);
        if (ec != std::errc{} || p != line.data() + comma || step != costs.size()) {
            throw FormatError("trace steps must count up from 0: " + line);
        }
        try {
            costs.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception &) {
            throw FormatError("bad cost value: " + line);
        }
    }
    return costs;
}

namespace detail {

inline std::string qasm_u3(double t, double p, double l, std::size_t wire) {
    return "u3(" + format_real(t) + "," + format_real(p) + "," + format_real(l) + ") q[" +
           std::to_string(wire) + "];\n";
}

} // namespace detail

/**
 * OpenQASM 2.0 over the {u3, cx} alphabet. H and X are written as their U3
 * forms; an MCX is only expressible when it has a single control.
 */
inline std::string to_qasm(const Circuit &circuit, std::span<const double> params) {
    check_params(circuit, params);
    constexpr double pi = std::numbers::pi;
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" +
                      std::to_string(circuit.qubits()) + "];\n";
    for (const auto &g : circuit.gates()) {
        switch (g.kind) {
        case GateKind::U3:
            out += detail::qasm_u3(params[g.param_slots[0]], params[g.param_slots[1]],
                                   params[g.param_slots[2]], g.target());
            break;
        case GateKind::H:
            out += detail::qasm_u3(pi / 2, 0.0, pi, g.target());
            break;
        case GateKind::X:
            out += detail::qasm_u3(pi, 0.0, pi, g.target());
            break;
        case GateKind::MCX:
            if (g.wires.size() != 2) {
                throw FormatError("mcx with " + std::to_string(g.wires.size() - 1) +
                                  " controls has no u3/cx form");
            }
            [[fallthrough]];
        case GateKind::CNOT:
            out += "cx q[" + std::to_string(g.wires[0]) + "],q[" + std::to_string(g.wires[1]) +
                   "];\n";
            break;
        }
    }
    return out;
}

struct BoundCircuit {
    Circuit circuit;
    std::vector<double> params;
};

/// Reads the subset written by to_qasm. Each u3 gets fresh parameter slots.
inline BoundCircuit parse_qasm(const std::string &text) {
    static const std::regex qreg_re(R"(^qreg\s+q\[(\d+)\];$)");
    static const std::regex u3_re(
        R"(^u3\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*([^,\s\)]+)\s*\)\s+q\[(\d+)\];$)");
    static const std::regex cx_re(R"(^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\];$)");

    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::optional<Circuit> circuit;
    std::vector<double> params;
    std::size_t lineno = 0;
    auto fail = [&](const std::string &why) {
        return FormatError("qasm line " + std::to_string(lineno) + ": " + why);
    };
    auto number = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            throw fail("bad angle '" + s + "'");
        }
        if (used != s.size()) {
            throw fail("bad angle '" + s + "'");
        }
        return v;
    };
    try {
        while (std::getline(in, line)) {
            ++lineno;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) {
                continue;
            }
            line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
            if (line.rfind("//", 0) == 0) {
                continue;
            }
            std::smatch m;
            if (line == "OPENQASM 2.0;") {
                header = true;
            } else if (line == "include \"qelib1.inc\";") {
                continue;
            } else if (std::regex_match(line, m, qreg_re)) {
                if (!header || circuit) {
                    throw fail("qreg must follow the header exactly once");
                }
                circuit.emplace(std::stoul(m[1].str()));
            } else if (!circuit) {
                throw fail("gate before qreg");
            } else if (std::regex_match(line, m, u3_re)) {
                circuit->u3(std::stoul(m[4].str()));
                for (int k = 1; k <= 3; ++k) {
                    params.push_back(number(m[k].str()));
                }
            } else if (std::regex_match(line, m, cx_re)) {
                circuit->cnot(std::stoul(m[1].str()), std::stoul(m[2].str()));
            } else {
                throw fail("unsupported statement '" + line + "'");
            }
        }
    } catch (const std::out_of_range &e) {
        throw fail(e.what());
    } catch (const std::invalid_argument &e) {
        throw fail(e.what());
    }
    if (!circuit) {
        throw FormatError("qasm text has no OPENQASM 2.0 header and qreg");
    }
    return {std::move(*circuit), std::move(params)};
}

/// Gate list with bound angles, for tools that do not read QASM.
inline nlohmann::json to_circuit_json(const Circuit &circuit, std::span<const double> params) {
    check_params(circuit, params);
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : circuit.gates()) {
        nlohmann::json jg{{"gate", gate_name(g.kind)}, {"wires", g.wires}};
        if (g.kind == GateKind::U3) {
            jg["angles"] = {params[g.param_slots[0]], params[g.param_slots[1]],
                            params[g.param_slots[2]]};
        }
        gates.push_back(std::move(jg));
    }
    return nlohmann::json{{"qubits", circuit.qubits()},
                          {"depth", depth(circuit)},
                          {"gates", std::move(gates)}};
}

} // namespace vqgf::io
