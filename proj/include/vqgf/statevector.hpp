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
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gate.hpp"

namespace vqgf {

using Complex = std::complex<double>;

/// Largest register the simulator accepts (a doubled 7-qubit register).
inline constexpr std::size_t kMaxQubits = 14;

/// Largest circuit for which a dense unitary is materialized.
inline constexpr std::size_t kMaxDenseQubits = 7;

/// Row-major 2x2 matrix.
using Matrix2 = std::array<Complex, 4>;

/*
 * Qubit 0 is the most significant bit of a basis index:
 * |q0 q1 ... q_{n-1}> has index sum_i q_i * 2^(n-1-i), so |110> is 6.
 */
inline std::size_t wire_mask(std::size_t qubits, std::size_t wire) {
    return std::size_t{1} << (qubits - 1 - wire);
}

class StateVector {
  public:
    /// |0...0> on `qubits` wires.
    static StateVector zero(std::size_t qubits) { return basis(qubits, 0); }

    static StateVector basis(std::size_t qubits, std::size_t index) {
        check_qubits(qubits);
        const std::size_t dim = std::size_t{1} << qubits;
        if (index >= dim) {
            throw std::out_of_range("basis index " + std::to_string(index) +
                                    " out of range for " + std::to_string(qubits) + " qubits");
        }
        StateVector s(qubits);
        s.amps_[index] = 1.0;
        return s;
    }

    /// Wraps explicit amplitudes; the length must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amps) {
        std::size_t qubits = 0;
        while ((std::size_t{1} << qubits) < amps.size()) {
            ++qubits;
        }
        if (amps.empty() || (std::size_t{1} << qubits) != amps.size()) {
            throw std::invalid_argument("amplitude count must be a power of two");
        }
        check_qubits(qubits);
        StateVector s(qubits);
        s.amps_ = std::move(amps);
        return s;
    }

    std::size_t qubits() const { return qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amps() const { return amps_; }
    std::span<Complex> amps() { return amps_; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }
    Complex &operator[](std::size_t i) { return amps_[i]; }

    double norm_squared() const {
        double acc = 0.0;
        for (const auto &a : amps_) {
            acc += std::norm(a);
        }
        return acc;
    }

  private:
    explicit StateVector(std::size_t qubits)
        : qubits_(qubits), amps_(std::size_t{1} << qubits, Complex{0.0, 0.0}) {}

    static void check_qubits(std::size_t qubits) {
        if (qubits < 1 || qubits > kMaxQubits) {
            throw std::invalid_argument("qubit count " + std::to_string(qubits) +
                                        " outside [1, " + std::to_string(kMaxQubits) + "]");
        }
    }

    std::size_t qubits_;
    std::vector<Complex> amps_;
};

inline StateVector zero_state(std::size_t qubits) { return StateVector::zero(qubits); }

inline StateVector basis_state(std::size_t qubits, std::size_t index) {
    return StateVector::basis(qubits, index);
}

/**
 * Square complex matrix of a circuit, row-major. Column j is the image of
 * basis state j.
 */
struct DenseUnitary {
    std::size_t dim = 0;
    std::vector<Complex> entries;

    static DenseUnitary identity(std::size_t dim) {
        DenseUnitary u{dim, std::vector<Complex>(dim * dim)};
        for (std::size_t i = 0; i < dim; ++i) {
            u(i, i) = 1.0;
        }
        return u;
    }

    Complex &operator()(std::size_t row, std::size_t col) { return entries[row * dim + col]; }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries[row * dim + col];
    }

    /// log2(dim)
    std::size_t qubits() const {
        std::size_t q = 0;
        while ((std::size_t{1} << q) < dim) {
            ++q;
        }
        return q;
    }
};

inline DenseUnitary operator*(const DenseUnitary &a, const DenseUnitary &b) {
    if (a.dim != b.dim) {
        throw std::invalid_argument("matrix product: dimension mismatch");
    }
    DenseUnitary out{a.dim, std::vector<Complex>(a.dim * a.dim)};
    for (std::size_t i = 0; i < a.dim; ++i) {
        for (std::size_t k = 0; k < a.dim; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < a.dim; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline DenseUnitary adjoint(const DenseUnitary &u) {
    DenseUnitary out{u.dim, std::vector<Complex>(u.dim * u.dim)};
    for (std::size_t i = 0; i < u.dim; ++i) {
        for (std::size_t j = 0; j < u.dim; ++j) {
            out(j, i) = std::conj(u(i, j));
        }
    }
    return out;
}

/// Largest entrywise deviation of U^dagger U from the identity.
inline double unitarity_error(const DenseUnitary &u) {
    const DenseUnitary p = adjoint(u) * u;
    double worst = 0.0;
    for (std::size_t i = 0; i < u.dim; ++i) {
        for (std::size_t j = 0; j < u.dim; ++j) {
            const Complex expect = i == j ? Complex{1.0, 0.0} : Complex{};
            worst = std::max(worst, std::abs(p(i, j) - expect));
        }
    }
    return worst;
}

/// Tr(a^dagger b) without forming the product.
inline Complex trace_inner(const DenseUnitary &a, const DenseUnitary &b) {
    if (a.dim != b.dim) {
        throw std::invalid_argument("trace_inner: dimension mismatch");
    }
    Complex acc{};
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
        acc += std::conj(a.entries[k]) * b.entries[k];
    }
    return acc;
}

/**
 * General single-qubit rotation
 *
 *   [[cos(t/2),          -e^{i l} sin(t/2)],
 *    [e^{i p} sin(t/2),   e^{i(p+l)} cos(t/2)]]
 *
 * Angles are not range-restricted.
 */
inline Matrix2 u3_matrix(double theta, double phi, double lambda) {
    if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(lambda)) {
        throw std::invalid_argument("u3_matrix: non-finite angle");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {Complex{c, 0.0}, -std::polar(s, lambda), std::polar(s, phi),
            std::polar(c, phi + lambda)};
}

namespace detail {

inline void apply_single(std::span<Complex> amps, std::size_t mask, const Matrix2 &m) {
    const std::size_t dim = amps.size();
    // Visit each (bit clear, bit set) pair once.
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + mask];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + mask] = m[2] * a0 + m[3] * a1;
        }
    }
}

inline void apply_controlled_x(std::span<Complex> amps, std::size_t control_mask,
                               std::size_t target_mask) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & control_mask) == control_mask && (i & target_mask) == 0) {
            std::swap(amps[i], amps[i | target_mask]);
        }
    }
}

inline const Matrix2 &hadamard_matrix() {
    static const Matrix2 h = [] {
        const double r = 1.0 / std::sqrt(2.0);
        return Matrix2{Complex{r, 0}, Complex{r, 0}, Complex{r, 0}, Complex{-r, 0}};
    }();
    return h;
}

} // namespace detail

/**
 * Applies one gate to `state` in place. `params` is the full parameter
 * array of the owning circuit; U3 gates read their three slots from it.
 */
inline void apply_gate_inplace(StateVector &state, const GateSpec &gate,
                               std::span<const double> params) {
    const std::size_t n = state.qubits();
    for (std::size_t i = 0; i < gate.wires.size(); ++i) {
        if (gate.wires[i] >= n) {
            throw std::out_of_range("gate wire " + std::to_string(gate.wires[i]) +
                                    " out of range for " + std::to_string(n) + " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.wires[i] == gate.wires[j]) {
                throw std::invalid_argument("duplicate wire within gate");
            }
        }
    }
    const std::size_t tmask = wire_mask(n, gate.target());
    switch (gate.kind) {
    case GateKind::U3: {
        if (gate.param_slots.size() != 3) {
            throw std::invalid_argument("u3 gate needs three parameter slots");
        }
        for (auto s : gate.param_slots) {
            if (s >= params.size()) {
                throw std::out_of_range("u3 parameter slot beyond parameter array");
            }
        }
        detail::apply_single(state.amps(), tmask,
                             u3_matrix(params[gate.param_slots[0]], params[gate.param_slots[1]],
                                       params[gate.param_slots[2]]));
        break;
    }
    case GateKind::H:
        detail::apply_single(state.amps(), tmask, detail::hadamard_matrix());
        break;
    case GateKind::X:
        detail::apply_controlled_x(state.amps(), 0, tmask);
        break;
    case GateKind::CNOT:
    case GateKind::MCX: {
        std::size_t cmask = 0;
        for (std::size_t i = 0; i + 1 < gate.wires.size(); ++i) {
            cmask |= wire_mask(n, gate.wires[i]);
        }
        detail::apply_controlled_x(state.amps(), cmask, tmask);
        break;
    }
    }
}

inline StateVector apply_gate(StateVector state, const GateSpec &gate,
                              std::span<const double> params) {
    apply_gate_inplace(state, gate, params);
    return state;
}

inline void check_params(const Circuit &circuit, std::span<const double> params) {
    if (params.size() != circuit.param_count()) {
        throw std::invalid_argument("parameter count mismatch: circuit has " +
                                    std::to_string(circuit.param_count()) + " slots, got " +
                                    std::to_string(params.size()));
    }
}

/// Applies every gate in order to a copy of `state`.
inline StateVector run_circuit(StateVector state, const Circuit &circuit,
                               std::span<const double> params) {
    check_params(circuit, params);
    if (circuit.qubits() != state.qubits()) {
        throw std::invalid_argument("qubit count mismatch: circuit " +
                                    std::to_string(circuit.qubits()) + ", state " +
                                    std::to_string(state.qubits()));
    }
    for (const auto &g : circuit.gates()) {
        apply_gate_inplace(state, g, params);
    }
    return state;
}

/// Dense matrix of the circuit, built column by column from basis inputs.
inline DenseUnitary circuit_unitary(const Circuit &circuit, std::span<const double> params) {
    if (circuit.qubits() > kMaxDenseQubits) {
        throw std::invalid_argument("circuit_unitary: " + std::to_string(circuit.qubits()) +
                                    " qubits exceeds dense cap of " +
                                    std::to_string(kMaxDenseQubits));
    }
    check_params(circuit, params);
    const std::size_t dim = std::size_t{1} << circuit.qubits();
    DenseUnitary u{dim, std::vector<Complex>(dim * dim)};
    for (std::size_t col = 0; col < dim; ++col) {
        const StateVector out = run_circuit(basis_state(circuit.qubits(), col), circuit, params);
        for (std::size_t row = 0; row < dim; ++row) {
            u(row, col) = out[row];
        }
    }
    return u;
}

inline std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> p;
    p.reserve(state.dim());
    for (const auto &a : state.amps()) {
        p.push_back(std::norm(a));
    }
    return p;
}

} // namespace vqgf
