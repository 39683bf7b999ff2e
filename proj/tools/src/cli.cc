// Copyright 2026 The Weakwire Authors
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

#include "weakwire_tools/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "weakwire/circuit_json.h"
#include "weakwire/errors.h"
#include "weakwire/hvmodel.h"
#include "weakwire/locality_checks.h"
#include "weakwire/serialize.h"
#include "weakwire/weakvalues.h"
#include "weakwire_tools/figures.h"

namespace weakwire::tools {

namespace {

struct Config {
    std::string input;
    std::string output = "-";
    std::string figure;
    std::string gate;
    std::string mode = "full";
    std::string fit_output;
    double tau_step = 1e-3;
    double tolerance = kDefaultCheckTolerance;
    std::size_t seeds = 400;
    std::uint64_t rng_seed = SolverOptions{}.rng_seed;
    bool all_outcomes = false;
    bool until_stable = false;
};

CircuitSpec load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read input file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit_json(buf.str());
}

void emit(const Config &cfg, const std::string &text, std::ostream &out) {
    if (cfg.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
        throw UsageError("cannot write output file '" + cfg.output + "'");
    }
}

std::string dump(const nlohmann::json &j) {
    return j.dump(2) + "\n";
}

GateId parse_gate(const CircuitSpec &c, const std::string &text) {
    if (text.empty()) {
        for (std::size_t m = 0; m < c.moments.size(); ++m) {
            for (std::size_t i = 0; i < c.moments[m].size(); ++i) {
                if (std::holds_alternative<SwapAlphaGate>(c.moments[m][i])) {
                    return {m, i};
                }
            }
        }
        throw UsageError("circuit has no SwapAlpha gate to sweep");
    }
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            return {std::stoul(text), 0};
        }
        return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
    } catch (const std::exception &) {
        throw UsageError("gate must be given as MOMENT or MOMENT:INDEX, got '" + text + "'");
    }
}

SolverOptions solver_options(const Config &cfg) {
    SolverOptions o;
    o.n_seeds = cfg.seeds;
    o.rng_seed = cfg.rng_seed;
    return o;
}

std::string outcome_bits(const CircuitSpec &c) {
    std::string bits;
    for (const auto &m : std::get<std::vector<MeasuredWire>>(c.meas)) {
        bits += m.outcome > 0 ? '0' : '1';
    }
    return bits;
}

int cmd_weak(const Config &cfg, std::ostream &out) {
    const CircuitSpec c = load_circuit(cfg.input);
    nlohmann::json cuts = nlohmann::json::array();
    for (std::size_t m = 0; m <= c.moments.size(); ++m) {
        nlohmann::json ws = nlohmann::json::array();
        for (const auto &w : weak_vectors(c, Cut::before(m))) {
            ws.push_back(to_json(w));
        }
        cuts.push_back({{"moment", m}, {"w", ws}});
    }
    const Complex amp = transition_amplitude(c);
    nlohmann::json j = {
        {"n_qubits", c.n_qubits},
        {"amplitude", {amp.real(), amp.imag()}},
        {"probability", born_probability(c)},
        {"cuts", cuts},
    };
    emit(cfg, dump(j), out);
    return kExitOk;
}

int cmd_sweep(const Config &cfg, std::ostream &out) {
    const CircuitSpec c = load_circuit(cfg.input);
    const GateId id = parse_gate(c, cfg.gate);
    const auto *g = std::get_if<SwapAlphaGate>(&c.gate(id));
    if (g == nullptr) {
        throw GateKindError("only SwapAlpha gates can be swept");
    }
    const auto grid = uniform_tau_grid(g->alpha, cfg.tau_step);
    std::ostringstream csv;
    write_sweep_csv(csv, swap_sweep(c, id, grid));
    emit(cfg, csv.str(), out);
    return kExitOk;
}

int cmd_verify(const Config &cfg, std::ostream &out) {
    const CircuitSpec c = load_circuit(cfg.input);
    const auto reports = run_check_suite(c, SuiteOptions{cfg.tolerance, cfg.tau_step});
    nlohmann::json checks = nlohmann::json::array();
    bool ok = true;
    for (const auto &r : reports) {
        checks.push_back(to_json(r));
        ok = ok && !r.failed();
    }
    emit(cfg, dump({{"pass", ok}, {"checks", checks}}), out);
    return ok ? kExitOk : kExitVerification;
}

int cmd_hv_solve(const Config &cfg, std::ostream &out) {
    const CircuitSpec c = load_circuit(cfg.input);
    const ConstraintMode mode = parse_mode(cfg.mode);
    const SolverOptions opts = solver_options(cfg);
    std::vector<CircuitSpec> targets;
    if (cfg.all_outcomes) {
        targets = all_product_outcomes(c);
    } else {
        targets.push_back(c);
    }
    std::map<std::string, SolutionSet> sets;
    nlohmann::json stable = nlohmann::json::object();
    for (const auto &t : targets) {
        const HvProblem p = hv_problem_from_circuit(t, mode);
        const std::string label = outcome_bits(t);
        if (cfg.until_stable) {
            StableSolve r = solve_until_stable(p, opts);
            stable[label] = r.stable;
            sets.emplace(label, std::move(r.set));
        } else {
            sets.emplace(label, solve(p, opts));
        }
    }
    nlohmann::json j = solver_report_json(sets, opts);
    if (cfg.until_stable) {
        j["stable"] = stable;
    }
    emit(cfg, dump(j), out);
    return kExitOk;
}

int cmd_reproduce(const Config &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.figure == "fig3") {
        const Fig3Data d = reproduce_fig3(kFig3Seed, cfg.tau_step);
        emit(cfg, fig3_csv(d), out);
        const std::string fit = dump(fig3_fit_json(d));
        if (cfg.fit_output.empty()) {
            err << fit;
        } else {
            Config side = cfg;
            side.output = cfg.fit_output;
            emit(side, fit, out);
        }
        return kExitOk;
    }
    if (cfg.figure == "fig5") {
        emit(cfg, dump(reproduce_fig5()), out);
        return kExitOk;
    }
    if (cfg.figure == "fig6") {
        emit(cfg, dump(reproduce_fig6(solver_options(cfg), parse_mode(cfg.mode))), out);
        return kExitOk;
    }
    throw UsageError("unknown figure '" + cfg.figure + "' (expected fig3, fig5 or fig6)");
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Config cfg;
    CLI::App app{"Weak values, locality checks and hidden-variable solves for small qubit circuits", "weakwire"};
    app.require_subcommand(1);

    auto *weak = app.add_subcommand("weak", "Weak vectors of every wire at every cut between moments");
    auto *sweep = app.add_subcommand("sweep", "Weak vectors across a SwapAlpha gate, as CSV");
    auto *verify = app.add_subcommand("verify", "Run the locality check suite; exit 3 if a check fails");
    auto *hv = app.add_subcommand("hv-solve", "Solve the hidden-variable boundary problem");
    auto *repro = app.add_subcommand("reproduce", "Emit the data behind a figure");

    for (auto *cmd : {weak, sweep, verify, hv}) {
        cmd->add_option("--input", cfg.input, "Circuit JSON")->required()->check(CLI::ExistingFile);
    }
    for (auto *cmd : {weak, sweep, verify, hv, repro}) {
        cmd->add_option("--output", cfg.output, "Output path, '-' for stdout");
    }
    for (auto *cmd : {sweep, verify, repro}) {
        cmd->add_option("--tau-step", cfg.tau_step, "Largest grid spacing inside a SwapAlpha gate")
            ->check(CLI::PositiveNumber);
    }
    sweep->add_option("--gate", cfg.gate, "MOMENT[:INDEX] of the gate; default the first SwapAlpha gate");
    verify->add_option("--tolerance", cfg.tolerance, "Absolute tolerance of the exact identities")
        ->check(CLI::PositiveNumber);
    for (auto *cmd : {hv, repro}) {
        cmd->add_option("--seeds", cfg.seeds, "Random starts (initial budget when doubling)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--rng-seed", cfg.rng_seed, "Seed of the start generator");
        cmd->add_option("--mode", cfg.mode, "Constraint mode")->check(CLI::IsMember({"full", "relaxed"}));
    }
    hv->add_flag("--all-outcomes", cfg.all_outcomes, "Solve for every product outcome of the measurement");
    hv->add_flag("--until-stable", cfg.until_stable, "Double the seed budget until the count settles");
    repro->add_option("--figure", cfg.figure, "fig3, fig5 or fig6")->required();
    repro->add_option("--fit-output", cfg.fit_output, "fig3: where to write the fit parameters (default stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    // fig6 doubles from a smaller budget unless told otherwise.
    if (repro->parsed() && repro->count("--seeds") == 0) {
        cfg.seeds = 100;
    }

    try {
        if (weak->parsed()) {
            return cmd_weak(cfg, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(cfg, out);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out);
        }
        if (hv->parsed()) {
            return cmd_hv_solve(cfg, out);
        }
        return cmd_reproduce(cfg, out, err);
    } catch (const ForbiddenOutcomeError &e) {
        err << "error: " << e.what() << "\n";
        return kExitForbidden;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace weakwire::tools
