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

// vqgf: learn {U3, CNOT} decompositions of multi-controlled X gates.
//
//   vqgf synth  --qubits 3 --method observable --ansatz basic --layers 8 --seeds 1,2,3
//   vqgf verify params_1.json --threshold 0.97
//   vqgf export params_1.json --format qasm
//
// Exit codes: 0 success, 1 invalid input, 2 not converged / below threshold,
// 3 params file does not fit its declared circuit.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <vqgf/io.hpp>
#include <vqgf/vqgf.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNotReached = 2;
constexpr int kExitShape = 3;

struct SynthOptions {
    std::size_t qubits = 0;
    std::string method = "observable";
    std::string ansatz = "basic";
    std::size_t layers = 8;
    double learning_rate = 0.01;
    std::size_t steps = 500;
    double hst_eps = 1e-6;
    double observable_eps = 1e-3;
    std::string seeds = "1";
    bool strip_trailing_cnots = false;
    std::string out_dir = ".";
    std::string init_from;
};

struct VerifyOptions {
    std::string params_file;
    std::optional<std::size_t> qubits;
    double threshold = 0.97;
};

struct ExportOptions {
    std::string params_file;
    std::string format = "qasm";
    std::string output;
};

std::size_t thread_budget() {
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("VQGF_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) {
                threads = std::min<std::size_t>(threads, static_cast<std::size_t>(cap));
            }
        } catch (const std::exception &) {
            std::cerr << "warning: ignoring malformed VQGF_THREADS='" << env << "'\n";
        }
    }
    return threads;
}

std::vector<std::uint64_t> parse_seeds(const std::string &text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("bad seed '" + item + "'");
        }
        seeds.push_back(std::stoull(item));
    }
    if (seeds.empty()) {
        throw std::invalid_argument("at least one seed is required");
    }
    return seeds;
}

int run_synth(const SynthOptions &opt) {
    using namespace vqgf;
    vqgf::Circuit ansatz;
    Method method{};
    OptimizerConfig config;
    std::vector<std::uint64_t> seeds;
    std::optional<std::vector<double>> start;
    try {
        if (opt.qubits < 2 || opt.qubits > kMaxDenseQubits) {
            throw std::invalid_argument("--qubits must be in [2, " +
                                        std::to_string(kMaxDenseQubits) + "]");
        }
        method = parse_method(opt.method);
        ansatz = build_ansatz(parse_ansatz_kind(opt.ansatz), opt.qubits, opt.layers);
        if (opt.strip_trailing_cnots) {
            ansatz = strip_trailing_cnots(ansatz);
        }
        config.learning_rate = opt.learning_rate;
        config.max_steps = opt.steps;
        config.hst_stop_eps = opt.hst_eps;
        config.observable_stop_eps = opt.observable_eps;
        config.threads = thread_budget();
        config.validate();
        seeds = parse_seeds(opt.seeds);
        if (!opt.init_from.empty()) {
            const auto pf = io::read_params_file(opt.init_from);
            if (pf.qubits != opt.qubits || pf.ansatz != opt.ansatz || pf.layers != opt.layers ||
                pf.strip_trailing_cnots != opt.strip_trailing_cnots) {
                throw std::invalid_argument("--init-from file describes a different circuit");
            }
            io::circuit_for(pf);
            start = pf.params;
        }
        std::filesystem::create_directories(opt.out_dir);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    const auto cost = make_cost(method, ansatz);
    const auto table = toffoli_truth_table(opt.qubits);
    const std::filesystem::path out(opt.out_dir);
    bool any_converged = false;
    for (const auto seed : seeds) {
        config.seed = seed;
        auto init = start ? *start : init_params(ansatz.param_count(), seed);
        OptimizationTrace trace;
        try {
            trace = gradient_descent(cost, std::move(init), config, stop_mode_for(method));
        } catch (const NonFiniteCostError &e) {
            std::cerr << "seed " << seed << ": " << e.what() << "\n";
            return kExitInvalid;
        }
        any_converged = any_converged || trace.stop_reason == StopReason::Converged;

        io::ParamsFile pf;
        pf.qubits = opt.qubits;
        pf.ansatz = opt.ansatz;
        pf.layers = opt.layers;
        pf.method = opt.method;
        pf.seed = seed;
        pf.final_cost = trace.final_cost();
        pf.strip_trailing_cnots = opt.strip_trailing_cnots;
        pf.params = trace.final_params;
        const auto tag = std::to_string(seed);
        io::write_params_file((out / ("params_" + tag + ".json")).string(), pf);
        std::ofstream csv(out / ("trace_" + tag + ".csv"), std::ios::binary);
        io::write_trace_csv(csv, trace.costs);

        const auto report = truth_table_report(ansatz, trace.final_params, table);
        std::ostringstream line;
        line << "seed=" << seed << " steps=" << trace.steps_taken()
             << " final_cost=" << io::format_real(trace.final_cost())
             << " stop=" << to_string(trace.stop_reason)
             << " min_success=" << io::format_real(report.min_success)
             << " mean_success=" << io::format_real(report.mean_success) << "\n";
        std::cout << line.str() << std::flush;
    }
    return any_converged ? kExitOk : kExitNotReached;
}

int run_verify(const VerifyOptions &opt) {
    using namespace vqgf;
    io::ParamsFile pf;
    try {
        pf = io::read_params_file(opt.params_file);
    } catch (const io::FormatError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    vqgf::Circuit circuit;
    try {
        if (opt.qubits && *opt.qubits != pf.qubits) {
            throw io::ShapeError("file declares " + std::to_string(pf.qubits) +
                                 " qubits, expected " + std::to_string(*opt.qubits));
        }
        if (pf.qubits < 2 || pf.qubits > kMaxDenseQubits) {
            throw io::ShapeError("qubit count " + std::to_string(pf.qubits) + " unsupported");
        }
        circuit = io::circuit_for(pf);
    } catch (const io::ShapeError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitShape;
    }

    const auto table = toffoli_truth_table(pf.qubits);
    const auto report = truth_table_report(circuit, pf.params, table);
    const double fidelity = process_fidelity(circuit, pf.params, table.as_unitary());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : report.per_input) {
        rows.push_back(
            {{"input", r.input}, {"expected_output", r.expected_output}, {"success", r.success}});
    }
    const bool pass = report.min_success >= opt.threshold;
    const nlohmann::json out{
        {"qubits", pf.qubits},
        {"ansatz", pf.ansatz},
        {"layers", pf.layers},
        {"method", pf.method},
        {"seed", pf.seed},
        {"depth", depth(circuit)},
        {"per_input", std::move(rows)},
        {"min_success", report.min_success},
        {"mean_success", report.mean_success},
        {"process_fidelity", fidelity},
        {"observable_cost", observable_cost_direct(circuit, pf.params, table)},
        {"threshold", opt.threshold},
        {"pass", pass},
    };
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitNotReached;
}

int run_export(const ExportOptions &opt) {
    using namespace vqgf;
    std::string text;
    try {
        const auto pf = io::read_params_file(opt.params_file);
        const auto circuit = io::circuit_for(pf);
        if (opt.format == "qasm") {
            text = io::to_qasm(circuit, pf.params);
        } else if (opt.format == "json") {
            text = io::to_circuit_json(circuit, pf.params).dump(2) + "\n";
        } else {
            throw io::FormatError("unsupported format '" + opt.format + "'");
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        io::write_text(opt.output, text);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational synthesis of multi-controlled X gates over {U3, CNOT}"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto *synth_cmd = app.add_subcommand("synth", "Train an ansatz toward the n-qubit MCX");
    synth_cmd->add_option("--qubits,-n", synth.qubits, "Qubit count n")->required();
    synth_cmd->add_option("--method", synth.method, "hst or observable")->capture_default_str();
    synth_cmd->add_option("--ansatz", synth.ansatz, "basic or strong")->capture_default_str();
    synth_cmd->add_option("--layers", synth.layers, "Ansatz layers")->capture_default_str();
    synth_cmd->add_option("--lr,--learning-rate", synth.learning_rate, "Gradient descent step size")
        ->capture_default_str();
    synth_cmd->add_option("--steps", synth.steps, "Maximum parameter updates")
        ->capture_default_str();
    synth_cmd->add_option("--hst-eps", synth.hst_eps, "HST stop threshold")->capture_default_str();
    synth_cmd->add_option("--observable-eps", synth.observable_eps,
                          "Observable runs stop at cost <= -1 + eps")
        ->capture_default_str();
    synth_cmd->add_option("--seeds", synth.seeds, "Comma-separated seeds")->capture_default_str();
    synth_cmd->add_flag("--strip-trailing-cnots", synth.strip_trailing_cnots,
                        "Drop the CNOTs that end the last layer");
    synth_cmd->add_option("--out,-o", synth.out_dir, "Output directory")->capture_default_str();
    synth_cmd->add_option("--init-from", synth.init_from,
                          "Start every seed from this params file");

    VerifyOptions verify;
    auto *verify_cmd = app.add_subcommand("verify", "Evaluate saved parameters against the MCX");
    verify_cmd->add_option("params", verify.params_file, "Params JSON file")->required();
    verify_cmd->add_option("--qubits,-n", verify.qubits, "Expected qubit count");
    verify_cmd->add_option("--threshold", verify.threshold, "Minimum per-input success")
        ->capture_default_str();

    ExportOptions exp;
    auto *export_cmd = app.add_subcommand("export", "Write the bound circuit as QASM or JSON");
    export_cmd->add_option("params", exp.params_file, "Params JSON file")->required();
    export_cmd->add_option("--format", exp.format, "qasm or json")->capture_default_str();
    export_cmd->add_option("--output", exp.output, "Write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    if (*synth_cmd) {
        return run_synth(synth);
    }
    if (*verify_cmd) {
        return run_verify(verify);
    }
    return run_export(exp);
}
