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
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cost.hpp"

namespace vqgf {

struct InputSuccess {
    std::size_t input = 0;
    std::size_t expected_output = 0;
    double success = 0.0;
};

/// Phase-blind per-row success of a circuit against a truth table.
struct TruthTableReport {
    std::vector<InputSuccess> per_input;
    double min_success = 0.0;
    double mean_success = 0.0;
};

inline TruthTableReport truth_table_report(const Circuit &ansatz, std::span<const double> params,
                                           const TruthTable &table) {
    const auto success = row_success(ansatz, params, table);
    TruthTableReport report;
    report.per_input.reserve(success.size());
    report.min_success = 1.0;
    double total = 0.0;
    for (const auto &p : table.pairs()) {
        const double s = success[p.input];
        report.per_input.push_back({p.input, p.output, s});
        report.min_success = std::min(report.min_success, s);
        total += s;
    }
    report.mean_success = total / static_cast<double>(success.size());
    return report;
}

/// |Tr(target^dagger V)|^2 / d^2, the complement of hst_cost.
inline double process_fidelity(const Circuit &ansatz, std::span<const double> params,
                               const DenseUnitary &target) {
    if ((std::size_t{1} << ansatz.qubits()) != target.dim) {
        throw std::invalid_argument("process_fidelity: dimension mismatch");
    }
    const double d = static_cast<double>(target.dim);
    return std::norm(trace_inner(target, circuit_unitary(ansatz, params))) / (d * d);
}

} // namespace vqgf
