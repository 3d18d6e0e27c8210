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
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "circuit.hpp"
#include "cost.hpp"

namespace vqgf {

/// Scalar objective over a parameter array. Must be safe to call concurrently.
using CostFunction = std::function<double(std::span<const double>)>;

enum class Method { Hst, Observable };

inline std::string_view to_string(Method m) { return m == Method::Hst ? "hst" : "observable"; }

inline Method parse_method(std::string_view name) {
    if (name == "hst") {
        return Method::Hst;
    }
    if (name == "observable") {
        return Method::Observable;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected hst or observable)");
}

enum class StopMode { HstEps, ObservableFloor };

inline StopMode stop_mode_for(Method m) {
    return m == Method::Hst ? StopMode::HstEps : StopMode::ObservableFloor;
}

enum class StopReason { Converged, MaxSteps };

inline std::string_view to_string(StopReason r) {
    return r == StopReason::Converged ? "converged" : "max_steps";
}

struct OptimizerConfig {
    double learning_rate = 0.01;
    std::size_t max_steps = 500;
    double hst_stop_eps = 1e-6;
    /// Observable runs stop once cost <= -1 + observable_stop_eps.
    double observable_stop_eps = 1e-3;
    std::uint64_t seed = 0;
    /// Worker threads for gradient evaluation; results do not depend on it.
    std::size_t threads = 1;

    void validate() const {
        if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
            throw std::invalid_argument("learning_rate must be positive");
        }
        if (max_steps < 1) {
            throw std::invalid_argument("max_steps must be at least 1");
        }
        if (!(hst_stop_eps > 0.0) || !(observable_stop_eps > 0.0)) {
            throw std::invalid_argument("stop thresholds must be positive");
        }
        if (threads < 1) {
            throw std::invalid_argument("threads must be at least 1");
        }
    }

    bool converged(StopMode mode, double cost) const {
        return mode == StopMode::HstEps ? cost <= hst_stop_eps
                                        : cost <= -1.0 + observable_stop_eps;
    }
};

struct OptimizationTrace {
    /// Cost before each update, plus the cost of final_params.
    std::vector<double> costs;
    std::vector<double> final_params;
    StopReason stop_reason = StopReason::MaxSteps;

    std::size_t steps_taken() const { return costs.empty() ? 0 : costs.size() - 1; }
    double final_cost() const { return costs.back(); }
};

/// Raised when the objective returns NaN or infinity mid-run.
class NonFiniteCostError : public std::runtime_error {
  public:
    NonFiniteCostError(std::size_t step, std::vector<double> params)
        : std::runtime_error(describe(step, params)), step_(step), params_(std::move(params)) {}

    std::size_t step() const { return step_; }
    const std::vector<double> &params() const { return params_; }

  private:
    static std::string describe(std::size_t step, const std::vector<double> &params) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite cost at step " << step << ", params [";
        for (std::size_t i = 0; i < params.size(); ++i) {
            os << (i ? ", " : "") << params[i];
        }
        os << "]";
        return os.str();
    }

    std::size_t step_;
    std::vector<double> params_;
};

/**
 * Uniform angles on [0, 2pi) from a seeded mt19937_64. The mapping from raw
 * 64-bit draws is explicit so that results match across standard libraries.
 */
inline std::vector<double> init_params(std::size_t count, std::uint64_t seed) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::vector<double> out(count);
    for (auto &v : out) {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = unit * two_pi;
        if (v >= two_pi) {
            v = std::nextafter(two_pi, 0.0);
        }
    }
    return out;
}

namespace detail {

/// Fills out[j] = component(j) for every j, spread over `threads` workers.
template <typename Component>
void for_each_component(std::size_t count, std::size_t threads, std::vector<double> &out,
                        Component &&component) {
    out.assign(count, 0.0);
    const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), count);
    if (workers <= 1) {
        for (std::size_t j = 0; j < count; ++j) {
            out[j] = component(j);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t j = w; j < count; j += workers) {
                        out[j] = component(j);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace detail

/**
 * Parameter-shift gradient: [C(x + pi/2 e_j) - C(x - pi/2 e_j)] / 2.
 *
 * Exact when every parameter enters the cost through a single rotation
 * angle, which holds for U3 angles in both circuit costs (U3 factors into
 * Rz(phi) Ry(theta) Rz(lambda) up to a phase that the costs ignore).
 */
inline std::vector<double> param_shift_gradient(const CostFunction &cost,
                                                std::span<const double> params,
                                                std::size_t threads = 1) {
    constexpr double shift = std::numbers::pi / 2.0;
    std::vector<double> grad;
    detail::for_each_component(params.size(), threads, grad, [&](std::size_t j) {
        std::vector<double> shifted(params.begin(), params.end());
        shifted[j] = params[j] + shift;
        const double plus = cost(shifted);
        shifted[j] = params[j] - shift;
        const double minus = cost(shifted);
        return (plus - minus) / 2.0;
    });
    return grad;
}

/// Central differences with step h; validation oracle for the shift rule.
inline std::vector<double> finite_diff_gradient(const CostFunction &cost,
                                                std::span<const double> params, double h = 1e-5) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("finite_diff_gradient: step must be positive");
    }
    std::vector<double> grad(params.size());
    std::vector<double> shifted(params.begin(), params.end());
    for (std::size_t j = 0; j < params.size(); ++j) {
        shifted[j] = params[j] + h;
        const double plus = cost(shifted);
        shifted[j] = params[j] - h;
        const double minus = cost(shifted);
        shifted[j] = params[j];
        grad[j] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

/// Called after each recorded cost with (step, cost).
using StepObserver = std::function<void(std::size_t, double)>;

/**
 * Vanilla gradient descent, params <- params - lr * grad, using the
 * parameter-shift gradient. Stops on the mode's threshold or after
 * config.max_steps updates.
 */
inline OptimizationTrace gradient_descent(const CostFunction &cost,
                                          std::vector<double> params,
                                          const OptimizerConfig &config, StopMode mode,
                                          const StepObserver &observer = {}) {
    config.validate();
    OptimizationTrace trace;
    trace.costs.reserve(config.max_steps + 1);
    for (std::size_t step = 0;; ++step) {
        const double c = cost(params);
        if (!std::isfinite(c)) {
            throw NonFiniteCostError(step, params);
        }
        trace.costs.push_back(c);
        if (observer) {
            observer(step, c);
        }
        if (config.converged(mode, c)) {
            trace.stop_reason = StopReason::Converged;
            break;
        }
        if (step == config.max_steps) {
            trace.stop_reason = StopReason::MaxSteps;
            break;
        }
        const auto grad = param_shift_gradient(cost, params, config.threads);
        for (std::size_t j = 0; j < params.size(); ++j) {
            params[j] -= config.learning_rate * grad[j];
        }
    }
    trace.final_params = std::move(params);
    return trace;
}

/// Objective for `method` on an n-qubit ansatz targeting the n-qubit MCX.
inline CostFunction make_cost(Method method, const Circuit &ansatz) {
    if (method == Method::Hst) {
        return [ansatz, target = mcx_unitary(ansatz.qubits())](std::span<const double> p) {
            return hst_cost(ansatz, p, target);
        };
    }
    return [ansatz, table = toffoli_truth_table(ansatz.qubits())](std::span<const double> p) {
        return observable_cost_direct(ansatz, p, table);
    };
}

} // namespace vqgf
