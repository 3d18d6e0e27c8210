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

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "statevector.hpp"

namespace vqgf {

/// One (input basis index, expected output basis index) row.
struct TruthPair {
    std::size_t input = 0;
    std::size_t output = 0;

    friend bool operator==(const TruthPair &, const TruthPair &) = default;
};

/**
 * Classical reversible truth table on n qubits. Row k maps input k; the
 * outputs form a permutation of 0..2^n-1.
 *
 * Read as an observable, the table defines
 *   A = I - 2 sum_k |in_k><in_k| (x) |out_k><out_k|,
 * which is never materialized: every projector is diagonal in the
 * computational basis.
 */
class TruthTable {
  public:
    TruthTable(std::size_t qubits, std::vector<TruthPair> pairs)
        : qubits_(qubits), pairs_(std::move(pairs)) {
        if (qubits < 1 || qubits > kMaxDenseQubits) {
            throw std::invalid_argument("truth table qubit count out of range");
        }
        const std::size_t dim = std::size_t{1} << qubits;
        if (pairs_.size() != dim) {
            throw std::invalid_argument("truth table needs exactly 2^n rows");
        }
        std::vector<bool> seen_out(dim, false);
        for (std::size_t k = 0; k < dim; ++k) {
            if (pairs_[k].input != k) {
                throw std::invalid_argument("truth table rows must be ordered by input");
            }
            if (pairs_[k].output >= dim || seen_out[pairs_[k].output]) {
                throw std::invalid_argument("truth table outputs must be a permutation");
            }
            seen_out[pairs_[k].output] = true;
        }
    }

    std::size_t qubits() const { return qubits_; }
    std::size_t dim() const { return pairs_.size(); }
    const std::vector<TruthPair> &pairs() const { return pairs_; }
    std::size_t output_for(std::size_t input) const { return pairs_.at(input).output; }

    bool contains(std::size_t input, std::size_t output) const {
        return input < pairs_.size() && pairs_[input].output == output;
    }

    /// Permutation matrix with column `in` holding a one at row `out`.
    DenseUnitary as_unitary() const {
        DenseUnitary u{dim(), std::vector<Complex>(dim() * dim())};
        for (const auto &p : pairs_) {
            u(p.output, p.input) = 1.0;
        }
        return u;
    }

  private:
    std::size_t qubits_;
    std::vector<TruthPair> pairs_;
};

/// Identity on 0..2^n-3, with the last two basis states exchanged.
inline TruthTable toffoli_truth_table(std::size_t qubits) {
    detail::require_at_least_two(qubits, "toffoli truth table");
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<TruthPair> pairs(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        pairs[i] = {i, i};
    }
    pairs[dim - 2].output = dim - 1;
    pairs[dim - 1].output = dim - 2;
    return TruthTable(qubits, std::move(pairs));
}

inline DenseUnitary mcx_unitary(std::size_t qubits) {
    return toffoli_truth_table(qubits).as_unitary();
}

/// Hilbert-Schmidt cost 1 - |Tr(target^dagger V)|^2 / d^2. Global-phase blind.
inline double hst_cost(const Circuit &ansatz, std::span<const double> params,
                       const DenseUnitary &target) {
    if (ansatz.qubits() > kMaxDenseQubits || (std::size_t{1} << ansatz.qubits()) != target.dim) {
        throw std::invalid_argument("hst_cost: ansatz has " + std::to_string(ansatz.qubits()) +
                                    " qubits but target dimension is " +
                                    std::to_string(target.dim));
    }
    const DenseUnitary v = circuit_unitary(ansatz, params);
    const double d = static_cast<double>(target.dim);
    return 1.0 - std::norm(trace_inner(target, v)) / (d * d);
}

/**
 * Doubled-register state: Hadamards and a CNOT fan-out prepare
 * 2^{-n/2} sum_j |j>|j>, then the ansatz acts on register 1 (wires 0..n-1).
 * Register 1 occupies the high bits of the combined index.
 */
inline StateVector evaluation_state(const Circuit &ansatz, std::span<const double> params) {
    const std::size_t n = ansatz.qubits();
    if (n < 1 || 2 * n > kMaxQubits) {
        throw std::invalid_argument("evaluation_state: doubled register of " +
                                    std::to_string(2 * n) + " qubits out of range");
    }
    check_params(ansatz, params);
    StateVector state = run_circuit(zero_state(2 * n), evaluation_prefix(n), {});
    for (const auto &g : ansatz.gates()) {
        apply_gate_inplace(state, g, params);
    }
    return state;
}

/// <psi|A|psi> = 1 - 2 sum_k |psi[out_k * 2^n + in_k]|^2.
inline double observable_expectation(const StateVector &state, const TruthTable &table) {
    const std::size_t n = table.qubits();
    if (state.qubits() != 2 * n) {
        throw std::invalid_argument("observable_expectation: state has " +
                                    std::to_string(state.qubits()) + " qubits, table needs " +
                                    std::to_string(2 * n));
    }
    double hit = 0.0;
    for (const auto &p : table.pairs()) {
        hit += std::norm(state[(p.output << n) | p.input]);
    }
    return 1.0 - 2.0 * hit;
}

/// Probability that the ansatz maps each basis input to its table output.
inline std::vector<double> row_success(const Circuit &ansatz, std::span<const double> params,
                                       const TruthTable &table) {
    if (ansatz.qubits() != table.qubits()) {
        throw std::invalid_argument("ansatz has " + std::to_string(ansatz.qubits()) +
                                    " qubits, truth table " + std::to_string(table.qubits()));
    }
    check_params(ansatz, params);
    std::vector<double> success(table.dim());
    for (const auto &p : table.pairs()) {
        const StateVector out = run_circuit(basis_state(ansatz.qubits(), p.input), ansatz, params);
        success[p.input] = std::norm(out[p.output]);
    }
    return success;
}

/**
 * Same value as observable_expectation(evaluation_state(...)) computed on the
 * n-qubit register alone: 1 - (2 / 2^n) sum_k |<out_k|V|in_k>|^2.
 */
inline double observable_cost_direct(const Circuit &ansatz, std::span<const double> params,
                                     const TruthTable &table) {
    double hit = 0.0;
    for (double s : row_success(ansatz, params, table)) {
        hit += s;
    }
    return 1.0 - 2.0 * hit / static_cast<double>(table.dim());
}

} // namespace vqgf
