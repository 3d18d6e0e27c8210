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

#include <vqgf/io.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"

using namespace vqgf;
using namespace vqgf::io;

namespace {

ParamsFile sample(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> a(-1e3, 1e3);
    ParamsFile pf;
    pf.qubits = 3;
    pf.ansatz = rng() % 2 ? "basic" : "strong";
    pf.layers = 1 + rng() % 4;
    pf.method = rng() % 2 ? "hst" : "observable";
    pf.seed = rng();
    pf.final_cost = a(rng);
    pf.params.resize(3 * pf.qubits * pf.layers);
    for (auto &p : pf.params) {
        p = a(rng) * std::pow(10.0, double(rng() % 20) - 10.0);
    }
    return pf;
}

} // namespace

TEST(ParamsFile, round_trip_is_lossless) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pf = sample(rng);
        const auto back = parse_params(dump_params(pf));
        EXPECT_EQ(back.params, pf.params);
        EXPECT_EQ(back.final_cost, pf.final_cost);
        EXPECT_EQ(back.seed, pf.seed);
        EXPECT_EQ(back.ansatz, pf.ansatz);
        EXPECT_EQ(back.layers, pf.layers);
        EXPECT_EQ(back.method, pf.method);
        EXPECT_EQ(dump_params(back), dump_params(pf));
        EXPECT_NO_THROW(circuit_for(back));
    }
}

TEST(ParamsFile, schema_fields) {
    ParamsFile pf;
    pf.qubits = 2;
    pf.layers = 1;
    pf.params.assign(6, 0.25);
    const auto j = nlohmann::json::parse(dump_params(pf));
    for (const char *key :
         {"version", "qubits", "ansatz", "layers", "method", "seed", "final_cost", "params"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["version"], 1);
}

TEST(ParamsFile, malformed_input) {
    EXPECT_THROW(parse_params("not json"), FormatError);
    EXPECT_THROW(parse_params("{}"), FormatError);
    EXPECT_THROW(parse_params(R"({"version":2,"qubits":3,"ansatz":"basic","layers":1,)"
                              R"("method":"hst","seed":1,"final_cost":0,"params":[]})"),
                 FormatError);
    EXPECT_THROW(parse_params(R"({"version":1,"qubits":3,"ansatz":"basic","layers":1,)"
                              R"("method":"hst","seed":1,"final_cost":0,"params":["x"]})"),
                 FormatError);
    EXPECT_THROW(read_params_file("/nonexistent/params.json"), FormatError);
}

TEST(ParamsFile, shape_checks) {
    ParamsFile pf;
    pf.qubits = 3;
    pf.layers = 2;
    pf.params.assign(17, 0.0);
    EXPECT_THROW(circuit_for(pf), ShapeError);
    pf.params.assign(18, 0.0);
    EXPECT_EQ(circuit_for(pf).param_count(), 18u);
    pf.ansatz = "random";
    EXPECT_THROW(circuit_for(pf), ShapeError);

    ParamsFile ref;
    ref.qubits = 5;
    ref.ansatz = "mcx";
    EXPECT_EQ(circuit_for(ref), mcx_circuit(5));
    ref.ansatz = "nielsen_chuang";
    EXPECT_THROW(circuit_for(ref), ShapeError);
    ref.qubits = 3;
    ref.params = nielsen_chuang_angles();
    EXPECT_EQ(circuit_for(ref), nielsen_chuang_toffoli());
}

TEST(ParamsFile, strip_flag_keeps_param_count) {
    ParamsFile pf;
    pf.qubits = 3;
    pf.layers = 4;
    pf.strip_trailing_cnots = true;
    pf.params.assign(36, 0.0);
    const auto c = circuit_for(pf);
    EXPECT_EQ(c.size(), basic_entangled_ansatz(3, 4).size() - 3);
    EXPECT_TRUE(parse_params(dump_params(pf)).strip_trailing_cnots);
}

TEST(TraceCsv, format_and_round_trip) {
    const std::vector<double> costs{0.4375, -0.5, 1.0 / 3.0, 0.0};
    std::ostringstream out;
    write_trace_csv(out, costs);
    const std::string text = out.str();
    EXPECT_EQ(text.substr(0, 10), "step,cost\n");
    EXPECT_NE(text.find("2,0.33333333333333331\n"), std::string::npos);
    EXPECT_NE(text.find("3,0\n"), std::string::npos);
    std::istringstream in(text);
    EXPECT_EQ(read_trace_csv(in), costs);
}

TEST(TraceCsv, rejects_bad_input) {
    std::istringstream no_header("0,1\n");
    EXPECT_THROW(read_trace_csv(no_header), FormatError);
    std::istringstream gap("step,cost\n0,1\n2,1\n");
    EXPECT_THROW(read_trace_csv(gap), FormatError);
    std::istringstream junk("step,cost\n0,abc\n");
    EXPECT_THROW(read_trace_csv(junk), FormatError);
}

TEST(Qasm, basic_layer_bound_to_zeros) {
    const auto c = basic_entangled_ansatz(3, 1);
    const std::vector<double> zeros(9, 0.0);
    EXPECT_EQ(to_qasm(c, zeros), "OPENQASM 2.0;\n"
                                 "include \"qelib1.inc\";\n"
                                 "qreg q[3];\n"
                                 "u3(0,0,0) q[0];\n"
                                 "u3(0,0,0) q[1];\n"
                                 "u3(0,0,0) q[2];\n"
                                 "cx q[0],q[1];\n"
                                 "cx q[1],q[2];\n"
                                 "cx q[2],q[0];\n");
}

TEST(Qasm, angles_carry_full_precision) {
    Circuit c(1);
    c.u3(0);
    const auto text = to_qasm(c, std::vector<double>{0.1, 1.0 / 3.0, -2.5});
    EXPECT_NE(text.find("u3(0.10000000000000001,0.33333333333333331,-2.5) q[0];"),
              std::string::npos);
}

TEST(Qasm, round_trip_preserves_unitary) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto c = build_ansatz(trial % 2 ? AnsatzKind::BasicEntangled
                                              : AnsatzKind::StronglyEntangled,
                                    n, 2);
        const auto p = init_params(c.param_count(), rng());
        const auto back = parse_qasm(to_qasm(c, p));
        EXPECT_EQ(back.circuit, c);
        const auto u = circuit_unitary(c, p);
        const auto v = circuit_unitary(back.circuit, back.params);
        for (std::size_t k = 0; k < u.entries.size(); ++k) {
            EXPECT_LT(std::abs(u.entries[k] - v.entries[k]), 1e-9);
        }
    }
}

TEST(Qasm, fixed_gates_become_u3_and_cx) {
    Circuit c(2);
    c.h(0).x(1).mcx({0}, 1);
    const auto back = parse_qasm(to_qasm(c, {}));
    const auto u = circuit_unitary(c, {});
    const auto v = circuit_unitary(back.circuit, back.params);
    for (std::size_t k = 0; k < u.entries.size(); ++k) {
        EXPECT_LT(std::abs(u.entries[k] - v.entries[k]), 1e-12);
    }
    EXPECT_THROW(to_qasm(mcx_circuit(3), {}), FormatError);
}

TEST(Qasm, parse_errors) {
    EXPECT_THROW(parse_qasm(""), FormatError);
    EXPECT_THROW(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nccx q[0],q[1];\n"), FormatError);
    EXPECT_THROW(parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[2];\n"), FormatError);
    EXPECT_THROW(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nu3(pi,0,0) q[0];\n"), FormatError);
    EXPECT_THROW(parse_qasm("cx q[0],q[1];\n"), FormatError);
}

TEST(CircuitJson, lists_gates_with_angles) {
    Circuit c(2);
    c.u3(1).cnot(1, 0);
    const auto j = to_circuit_json(c, std::vector<double>{0.5, 0.25, 0.125});
    EXPECT_EQ(j["qubits"], 2);
    EXPECT_EQ(j["depth"], 2);
    ASSERT_EQ(j["gates"].size(), 2u);
    EXPECT_EQ(j["gates"][0]["gate"], "u3");
    EXPECT_EQ(j["gates"][0]["angles"], (std::vector<double>{0.5, 0.25, 0.125}));
    EXPECT_EQ(j["gates"][1]["gate"], "cx");
    EXPECT_EQ(j["gates"][1]["wires"], (std::vector<std::size_t>{1, 0}));
}
