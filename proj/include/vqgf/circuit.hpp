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

#include <algorithm>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gate.hpp"

namespace vqgf {

enum class AnsatzKind { BasicEntangled, StronglyEntangled };

inline std::string_view to_string(AnsatzKind kind) {
    return kind == AnsatzKind::BasicEntangled ? "basic" : "strong";
}

inline AnsatzKind parse_ansatz_kind(std::string_view name) {
    if (name == "basic") {
        return AnsatzKind::BasicEntangled;
    }
    if (name == "strong") {
        return AnsatzKind::StronglyEntangled;
    }
    throw std::invalid_argument("unknown ansatz '" + std::string(name) +
                                "' (expected basic or strong)");
}

namespace detail {

inline void require_at_least_two(std::size_t qubits, std::string_view what) {
    if (qubits < 2) {
        throw std::invalid_argument(std::string(what) + " needs at least 2 qubits, got " +
                                    std::to_string(qubits));
    }
}

inline void require_layers(std::size_t layers) {
    if (layers < 1) {
        throw std::invalid_argument("ansatz needs at least one layer");
    }
}

} // namespace detail

/**
 * Per layer: a U3 on every wire, then the CNOT ring
 * (0->1), (1->2), ..., (n-2 -> n-1), (n-1 -> 0).
 */
inline Circuit basic_entangled_ansatz(std::size_t qubits, std::size_t layers) {
    detail::require_at_least_two(qubits, "basic entangled ansatz");
    detail::require_layers(layers);
    Circuit c(qubits);
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < qubits; ++q) {
            c.u3(q);
        }
        for (std::size_t q = 0; q < qubits; ++q) {
            c.cnot(q, (q + 1) % qubits);
        }
    }
    return c;
}

/// CNOT control-to-target offset used by layer `layer` of the strongly entangled ansatz.
inline std::size_t strongly_entangled_range(std::size_t qubits, std::size_t layer) {
    detail::require_at_least_two(qubits, "strongly entangled ansatz");
    return layer % (qubits - 1) + 1;
}

/**
 * Like the basic ansatz, but layer l entangles i -> (i + r_l) mod n with
 * r_l = (l mod (n-1)) + 1, so n-1 consecutive layers cover every offset.
 */
inline Circuit strongly_entangled_ansatz(std::size_t qubits, std::size_t layers) {
    detail::require_at_least_two(qubits, "strongly entangled ansatz");
    detail::require_layers(layers);
    Circuit c(qubits);
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < qubits; ++q) {
            c.u3(q);
        }
        const std::size_t r = strongly_entangled_range(qubits, l);
        for (std::size_t q = 0; q < qubits; ++q) {
            c.cnot(q, (q + r) % qubits);
        }
    }
    return c;
}

inline Circuit build_ansatz(AnsatzKind kind, std::size_t qubits, std::size_t layers) {
    return kind == AnsatzKind::BasicEntangled ? basic_entangled_ansatz(qubits, layers)
                                              : strongly_entangled_ansatz(qubits, layers);
}

/// Controls 0..n-2, target n-1.
inline Circuit mcx_circuit(std::size_t qubits) {
    detail::require_at_least_two(qubits, "mcx circuit");
    std::vector<std::size_t> controls(qubits - 1);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        controls[i] = i;
    }
    Circuit c(qubits);
    c.mcx(std::move(controls), qubits - 1);
    return c;
}

/**
 * Textbook 3-qubit Toffoli over {U3, CNOT}: controls 0 and 1, target 2.
 * Hadamard, T and T^dagger are U3 gates whose angles come from
 * nielsen_chuang_angles().
 */
inline Circuit nielsen_chuang_toffoli() {
    Circuit c(3);
    c.u3(2);     // H
    c.cnot(1, 2);
    c.u3(2);     // T^dagger
    c.cnot(0, 2);
    c.u3(2);     // T
    c.cnot(1, 2);
    c.u3(2);     // T^dagger
    c.cnot(0, 2);
    c.u3(1);     // T
    c.u3(2);     // T
    c.u3(2);     // H
    c.cnot(0, 1);
    c.u3(0);     // T
    c.u3(1);     // T^dagger
    c.cnot(0, 1);
    return c;
}

inline std::vector<double> nielsen_chuang_angles() {
    constexpr double pi = std::numbers::pi;
    const std::vector<double> h{pi / 2, 0.0, pi};
    const std::vector<double> t{0.0, 0.0, pi / 4};
    const std::vector<double> tdg{0.0, 0.0, -pi / 4};
    std::vector<double> out;
    for (const auto *g : {&h, &tdg, &t, &tdg, &t, &t, &h, &t, &tdg}) {
        out.insert(out.end(), g->begin(), g->end());
    }
    return out;
}

/**
 * Input stage of the doubled-register evaluation circuit on 2n wires:
 * Hadamards on wires 0..n-1, then CNOT(i -> n+i) copying each input bit
 * into the second register.
 */
inline Circuit evaluation_prefix(std::size_t qubits) {
    if (qubits < 1) {
        throw std::invalid_argument("evaluation prefix needs at least one qubit");
    }
    Circuit c(2 * qubits);
    for (std::size_t q = 0; q < qubits; ++q) {
        c.h(q);
    }
    for (std::size_t q = 0; q < qubits; ++q) {
        c.cnot(q, qubits + q);
    }
    return c;
}

/**
 * Longest wire-dependency chain. Each gate lands one layer past the latest
 * gate that touched any of its wires.
 */
inline std::size_t depth(const Circuit &circuit) {
    std::vector<std::size_t> finish(circuit.qubits(), 0);
    std::size_t deepest = 0;
    for (const auto &g : circuit.gates()) {
        std::size_t layer = 0;
        for (auto w : g.wires) {
            layer = std::max(layer, finish[w]);
        }
        ++layer;
        for (auto w : g.wires) {
            finish[w] = layer;
        }
        deepest = std::max(deepest, layer);
    }
    return deepest;
}

/**
 * Drops the run of CNOTs that ends the circuit. Parameter slots are
 * untouched, so parameter arrays stay compatible.
 */
inline Circuit strip_trailing_cnots(const Circuit &circuit) {
    std::vector<GateSpec> gates = circuit.gates();
    while (!gates.empty() && gates.back().kind == GateKind::CNOT) {
        gates.pop_back();
    }
    return Circuit::from_gates(circuit.qubits(), std::move(gates));
}

} // namespace vqgf
