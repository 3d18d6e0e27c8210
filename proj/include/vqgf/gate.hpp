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
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vqgf {

enum class GateKind { U3, CNOT, H, X, MCX };

inline std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::U3:
        return "u3";
    case GateKind::CNOT:
        return "cx";
    case GateKind::H:
        return "h";
    case GateKind::X:
        return "x";
    case GateKind::MCX:
        return "mcx";
    }
    return "?";
}

/**
 * One gate of a circuit.
 *
 * Wire layout per kind: U3/H/X take a single target wire; CNOT takes
 * (control, target); MCX takes all controls followed by the target.
 * For U3 gates `param_slots` holds the indices of (theta, phi, lambda) in
 * the circuit's parameter array; it is empty for every other kind.
 */
struct GateSpec {
    GateKind kind = GateKind::X;
    std::vector<std::size_t> wires;
    std::vector<std::size_t> param_slots;

    std::size_t target() const { return wires.back(); }

    friend bool operator==(const GateSpec &, const GateSpec &) = default;
};

/**
 * Ordered gate list over a fixed number of qubits.
 *
 * Invariants (checked on every mutation): wire indices are in range and
 * distinct within a gate, and the U3 parameter slots form a bijection onto
 * 0..param_count()-1 with three slots per U3 gate.
 */
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t qubits) : qubits_(qubits) {}

    /// Builds a circuit from an explicit gate list and validates it.
    static Circuit from_gates(std::size_t qubits, std::vector<GateSpec> gates) {
        Circuit c(qubits);
        c.gates_ = std::move(gates);
        c.param_count_ = 0;
        for (const auto &g : c.gates_) {
            c.param_count_ += g.param_slots.size();
        }
        c.validate();
        return c;
    }

    std::size_t qubits() const { return qubits_; }
    std::size_t param_count() const { return param_count_; }
    const std::vector<GateSpec> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    /// Appends a U3 on `wire` that owns the next three parameter slots.
    Circuit &u3(std::size_t wire) {
        GateSpec g{GateKind::U3, {wire}, {param_count_, param_count_ + 1, param_count_ + 2}};
        check_wires(g);
        gates_.push_back(std::move(g));
        param_count_ += 3;
        return *this;
    }

    Circuit &cnot(std::size_t control, std::size_t target) {
        return push({GateKind::CNOT, {control, target}, {}});
    }

    Circuit &h(std::size_t wire) { return push({GateKind::H, {wire}, {}}); }

    Circuit &x(std::size_t wire) { return push({GateKind::X, {wire}, {}}); }

    Circuit &mcx(std::vector<std::size_t> controls, std::size_t target) {
        if (controls.empty()) {
            throw std::invalid_argument("mcx needs at least one control");
        }
        controls.push_back(target);
        return push({GateKind::MCX, std::move(controls), {}});
    }

    /**
     * Appends every gate of `other` (same qubit count); its parameter slots
     * are shifted past this circuit's slots.
     */
    Circuit &append(const Circuit &other) {
        if (other.qubits_ != qubits_) {
            throw std::invalid_argument("append: qubit count mismatch (" +
                                        std::to_string(other.qubits_) + " vs " +
                                        std::to_string(qubits_) + ")");
        }
        for (GateSpec g : other.gates_) {
            for (auto &s : g.param_slots) {
                s += param_count_;
            }
            gates_.push_back(std::move(g));
        }
        param_count_ += other.param_count_;
        return *this;
    }

    /// Same gates, placed on the low-numbered wires of a wider register.
    Circuit widened(std::size_t qubits) const {
        if (qubits < qubits_) {
            throw std::invalid_argument("widened: cannot shrink a circuit");
        }
        Circuit c = *this;
        c.qubits_ = qubits;
        return c;
    }

    /// Throws std::invalid_argument if any invariant is broken.
    void validate() const {
        std::vector<bool> seen(param_count_, false);
        std::size_t u3_count = 0;
        for (const auto &g : gates_) {
            check_wires(g);
            if ((g.kind == GateKind::U3) != !g.param_slots.empty()) {
                throw std::invalid_argument("parameter slots present iff gate is u3");
            }
            if (g.kind == GateKind::U3) {
                ++u3_count;
                if (g.param_slots.size() != 3) {
                    throw std::invalid_argument("u3 needs exactly three parameter slots");
                }
            }
            for (auto s : g.param_slots) {
                if (s >= param_count_ || seen[s]) {
                    throw std::invalid_argument("parameter slot " + std::to_string(s) +
                                                " out of range or reused");
                }
                seen[s] = true;
            }
        }
        if (param_count_ != 3 * u3_count) {
            throw std::invalid_argument("param_count must be 3 x number of u3 gates");
        }
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    Circuit &push(GateSpec g) {
        check_wires(g);
        gates_.push_back(std::move(g));
        return *this;
    }

    void check_wires(const GateSpec &g) const {
        std::size_t expected = 0;
        switch (g.kind) {
        case GateKind::U3:
        case GateKind::H:
        case GateKind::X:
            expected = 1;
            break;
        case GateKind::CNOT:
            expected = 2;
            break;
        case GateKind::MCX:
            expected = g.wires.size() < 2 ? 2 : g.wires.size();
            break;
        }
        if (g.wires.size() != expected) {
            throw std::invalid_argument(std::string(gate_name(g.kind)) + ": wrong number of wires");
        }
        for (std::size_t i = 0; i < g.wires.size(); ++i) {
            if (g.wires[i] >= qubits_) {
                throw std::out_of_range(std::string(gate_name(g.kind)) + ": wire " +
                                        std::to_string(g.wires[i]) + " out of range for " +
                                        std::to_string(qubits_) + " qubits");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (g.wires[i] == g.wires[j]) {
                    throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                                ": duplicate wire " + std::to_string(g.wires[i]));
                }
            }
        }
    }

    std::size_t qubits_ = 0;
    std::vector<GateSpec> gates_;
    std::size_t param_count_ = 0;
};

} // namespace vqgf
