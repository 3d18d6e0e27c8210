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

#include <vqgf/cost.hpp>

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracle.hpp"

using namespace vqgf;

namespace {

constexpr double pi = std::numbers::pi;

/// Classical bit-level evaluation of an X/CNOT/MCX circuit.
std::size_t classical_image(const Circuit &c, std::size_t input) {
    const std::size_t n = c.qubits();
    std::vector<int> bits(n);
    for (std::size_t w = 0; w < n; ++w) {
        bits[w] = (input >> (n - 1 - w)) & 1;
    }
    for (const auto &g : c.gates()) {
        bool fire = true;
        for (std::size_t i = 0; i + 1 < g.wires.size(); ++i) {
            fire = fire && bits[g.wires[i]];
        }
        if (fire) {
            bits[g.target()] ^= 1;
        }
    }
    std::size_t out = 0;
    for (int b : bits) {
        out = out * 2 + b;
    }
    return out;
}

Circuit random_permutation_circuit(std::mt19937_64 &rng, std::size_t n, std::size_t gates) {
    Circuit c(n);
    for (std::size_t g = 0; g < gates; ++g) {
        const std::size_t t = rng() % n;
        switch (rng() % 3) {
        case 0:
            c.x(t);
            break;
        case 1:
            c.cnot((t + 1 + rng() % (n - 1)) % n, t);
            break;
        default: {
            std::vector<std::size_t> ctrls;
            for (std::size_t q = 0; q < n; ++q) {
                if (q != t && rng() % 2) {
                    ctrls.push_back(q);
                }
            }
            if (ctrls.empty()) {
                ctrls.push_back((t + 1) % n);
            }
            c.mcx(ctrls, t);
        }
        }
    }
    return c;
}

Circuit x_on_all(std::size_t n) {
    Circuit c(n);
    for (std::size_t q = 0; q < n; ++q) {
        c.x(q);
    }
    return c;
}

Circuit x_on_target(std::size_t n) {
    Circuit c(n);
    c.x(n - 1);
    return c;
}

} // namespace

TEST(TruthTable, toffoli_tables) {
    const auto r3 = toffoli_truth_table(3);
    ASSERT_EQ(r3.dim(), 8u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(r3.pairs()[i], (TruthPair{i, i}));
    }
    EXPECT_EQ(r3.pairs()[6], (TruthPair{6, 7}));
    EXPECT_EQ(r3.pairs()[7], (TruthPair{7, 6}));

    const auto r5 = toffoli_truth_table(5);
    for (std::size_t i = 0; i < 30; ++i) {
        EXPECT_EQ(r5.output_for(i), i);
    }
    EXPECT_EQ(r5.output_for(30), 31u);
    EXPECT_EQ(r5.output_for(31), 30u);

    const auto r2 = toffoli_truth_table(2);
    EXPECT_EQ(r2.pairs(), (std::vector<TruthPair>{{0, 0}, {1, 1}, {2, 3}, {3, 2}}));
    EXPECT_THROW(toffoli_truth_table(1), std::invalid_argument);
}

TEST(TruthTable, validates_permutation) {
    EXPECT_THROW(TruthTable(1, {{0, 0}, {1, 0}}), std::invalid_argument);
    EXPECT_THROW(TruthTable(1, {{1, 1}, {0, 0}}), std::invalid_argument);
    EXPECT_THROW(TruthTable(2, {{0, 0}, {1, 1}}), std::invalid_argument);
    EXPECT_NO_THROW(TruthTable(1, {{0, 1}, {1, 0}}));
}

TEST(TruthTable, unitary_matches_mcx_circuit) {
    for (std::size_t n = 2; n <= 5; ++n) {
        EXPECT_EQ(oracle::max_abs_diff(oracle::mcx_matrix(n), mcx_unitary(n)), 0.0);
    }
}

TEST(HstCost, examples) {
    const auto target = mcx_unitary(3);
    EXPECT_EQ(hst_cost(mcx_circuit(3), {}, target), 0.0);

    // Tr(MCX3) by direct diagonal sum.
    const auto ref = oracle::mcx_matrix(3);
    double trace = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        trace += ref[i][i].real();
    }
    ASSERT_EQ(trace, 6.0);
    const double expected_empty = 1.0 - trace * trace / 64.0;
    ASSERT_EQ(expected_empty, 0.4375);
    EXPECT_NEAR(hst_cost(Circuit(3), {}, target), expected_empty, 1e-12);

    EXPECT_LE(hst_cost(nielsen_chuang_toffoli(), nielsen_chuang_angles(), target), 1e-10);
}

TEST(HstCost, dimension_mismatch) {
    EXPECT_THROW(hst_cost(Circuit(2), {}, mcx_unitary(3)), std::invalid_argument);
    EXPECT_THROW(hst_cost(basic_entangled_ansatz(3, 1), std::vector<double>(8), mcx_unitary(3)),
                 std::invalid_argument);
}

TEST(HstCost, matches_oracle_on_random_ansatz) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto [c, params] = oracle::random_circuit(rng, n, 15);
        const double expected =
            oracle::hst_cost(oracle::mcx_matrix(n), oracle::circuit_matrix(c, params));
        EXPECT_NEAR(hst_cost(c, params, mcx_unitary(n)), expected, 1e-12);
    }
}

TEST(EvaluationState, bell_pair_and_norm) {
    const auto bell = evaluation_state(Circuit(1), {});
    EXPECT_NEAR(bell[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(bell[3].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(bell[1], Complex(0.0));
    EXPECT_EQ(bell[2], Complex(0.0));

    const auto ansatz = basic_entangled_ansatz(3, 2);
    std::mt19937_64 rng(2);
    std::vector<double> params(ansatz.param_count());
    for (auto &p : params) {
        p = std::uniform_real_distribution<double>(0, 2 * pi)(rng);
    }
    EXPECT_NEAR(evaluation_state(ansatz, params).norm_squared(), 1.0, 1e-12);
}

TEST(EvaluationState, mcx_places_mass_on_table_pairs) {
    const auto s = evaluation_state(mcx_circuit(3), {});
    const auto table = toffoli_truth_table(3);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (std::abs(s[i]) > 0.0) {
            ++nonzero;
            const std::size_t out = i >> 3, in = i & 7u;
            EXPECT_TRUE(table.contains(in, out)) << "index " << i;
            EXPECT_NEAR(s[i].real(), 1.0 / std::sqrt(8.0), 1e-15);
        }
    }
    EXPECT_EQ(nonzero, 8u);
    EXPECT_THROW(evaluation_state(Circuit(8), {}), std::invalid_argument);
}

TEST(ObservableExpectation, examples) {
    const auto r3 = toffoli_truth_table(3);
    EXPECT_NEAR(observable_expectation(evaluation_state(mcx_circuit(3), {}), r3), -1.0, 1e-12);

    // Every input k lands on its complement, which is never its table row.
    std::size_t hits = 0;
    for (std::size_t k = 0; k < 8; ++k) {
        hits += r3.contains(k, 7 - k);
    }
    ASSERT_EQ(hits, 0u);
    EXPECT_NEAR(observable_expectation(evaluation_state(x_on_all(3), {}), r3), 1.0, 1e-12);

    // Identity satisfies rows 0..5 only.
    EXPECT_NEAR(observable_expectation(evaluation_state(Circuit(3), {}), r3), 1.0 - 2.0 * 6 / 8,
                1e-12);
    EXPECT_THROW(observable_expectation(zero_state(5), r3), std::invalid_argument);
}

TEST(ObservableCostDirect, examples) {
    const auto r3 = toffoli_truth_table(3);
    EXPECT_NEAR(observable_cost_direct(mcx_circuit(3), {}, r3), -1.0, 1e-12);
    // X on the target maps 6->7 and 7->6 and breaks every other row.
    EXPECT_NEAR(observable_cost_direct(x_on_target(3), {}, r3), 1.0 - 2.0 * 2 / 8, 1e-12);
    EXPECT_NEAR(observable_cost_direct(Circuit(3), {}, r3), -0.5, 1e-12);
    EXPECT_THROW(observable_cost_direct(Circuit(2), {}, r3), std::invalid_argument);
}

TEST(ObservableCostDirect, matches_brute_force_operator) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto [c, params] = oracle::random_circuit(rng, n, 15);
        const auto table = toffoli_truth_table(n);
        const double expected = oracle::observable_brute_force(c, params, table);
        EXPECT_NEAR(observable_cost_direct(c, params, table), expected, 1e-12);
        EXPECT_NEAR(observable_expectation(evaluation_state(c, params), table), expected, 1e-12);
    }
}

TEST(ObservableCost, permutation_circuits_follow_the_counting_rule) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto c = random_permutation_circuit(rng, n, 1 + trial % 7);
        const auto table = toffoli_truth_table(n);
        const std::size_t d = std::size_t{1} << n;
        std::size_t hits = 0;
        for (std::size_t k = 0; k < d; ++k) {
            hits += table.contains(k, classical_image(c, k));
        }
        const double expected = 1.0 - 2.0 * double(hits) / double(d);
        const double got = observable_cost_direct(c, {}, table);
        EXPECT_NEAR(got, expected, 1e-12);
        if (hits == d) {
            EXPECT_NEAR(got, -1.0, 1e-12);
        }
        if (hits == 0) {
            EXPECT_NEAR(got, 1.0, 1e-12);
        }
    }
}

TEST(Costs, global_phase_insensitive) {
    // Scaling the target by a phase leaves the cost unchanged.
    std::mt19937_64 rng(61);
    const auto ansatz = basic_entangled_ansatz(3, 2);
    std::vector<double> params(ansatz.param_count());
    for (auto &p : params) {
        p = std::uniform_real_distribution<double>(0, 2 * pi)(rng);
    }
    auto target = mcx_unitary(3);
    const double base = hst_cost(ansatz, params, target);
    for (auto &e : target.entries) {
        e *= std::polar(1.0, 0.7);
    }
    EXPECT_NEAR(hst_cost(ansatz, params, target), base, 1e-12);

    // Prepending Z X Z X on one wire multiplies the state by -1.
    Circuit phased(3);
    phased.u3(0).x(0).u3(0).x(0);
    phased.append(ansatz);
    std::vector<double> pp{0, 0, pi, 0, 0, pi};
    pp.insert(pp.end(), params.begin(), params.end());
    const auto table = toffoli_truth_table(3);
    EXPECT_NEAR(hst_cost(phased, pp, mcx_unitary(3)), base, 1e-12);
    EXPECT_NEAR(observable_cost_direct(phased, pp, table),
                observable_cost_direct(ansatz, params, table), 1e-12);
}
