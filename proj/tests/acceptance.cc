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

// Acceptance gate. Prints one PASS/FAIL line per criterion; exit status is nonzero if any
// selected criterion fails. `--only ACn` runs a single criterion.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracles.h"
#include "weakwire/hvmodel.h"
#include "weakwire/locality_checks.h"
#include "weakwire/weakvalues.h"
#include "weakwire_tools/figures.h"

using namespace weakwire;

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_diff(const CVec3 &a, const CVec3 &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

const SqrtSwapOutcome kAllowed[] = {SqrtSwapOutcome::k00, SqrtSwapOutcome::k10, SqrtSwapOutcome::k11};

Result ac1() {
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Rng rng(101);
    double err = 0, norm = 0;
    for (int k = 0; k < 100; ++k) {
        const double theta0 = rng.uniform(0.01, oracle::kPi - 0.01);
        for (int outcome : {+1, -1}) {
            WeakVector w = weak_vector(single_qubit_example(theta0, outcome), Cut::before(0), 0);
            err = std::max(err, max_diff(w, single_qubit_closed_form(theta0, outcome)));
            norm = std::max(norm, std::abs(hyperbolic_dot(w, w) - 1.0));
        }
    }
    const double dt = seconds_since(t0);
    return {err <= 1e-10 && norm <= 1e-10 && dt < 1.0,
            fmt("100 angles x 2 outcomes: max|w - closed form| = %.2e, max|w.w - 1| = %.2e, %.3f s", err, norm, dt)};
}

Result ac2() {
    oracle::Rng rng(102);
    double err = 0;
    for (int k = 0; k < 100; ++k) {
        const double theta0 = rng.uniform(0.01, oracle::kPi - 0.01);
        std::vector<WeakVector> ws{weak_vector(single_qubit_example(theta0, +1), Cut::before(0), 0),
                                   weak_vector(single_qubit_example(theta0, -1), Cut::before(0), 0)};
        auto p = single_qubit_probability_rule(ws);
        err = std::max({err, std::abs(p[0] - std::pow(std::cos(theta0 / 2), 2)),
                        std::abs(p[1] - std::pow(std::sin(theta0 / 2), 2))});
    }
    return {err <= 1e-10, fmt("100 angles: max|P_rule - P_Born| = %.2e", err)};
}

Result ac3() {
    oracle::Rng rng(103);
    double worst = 0;
    std::size_t min_cuts = 1000;
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + trial % 2;
        const std::size_t idle = static_cast<std::size_t>(rng.uniform(0, n - 1e-9));
        CircuitSpec c = oracle::random_circuit(rng, {.n_qubits = n, .n_moments = 5, .idle_wire = idle});
        std::vector<Cut> cuts;
        for (std::size_t m = 0; m <= c.moments.size(); ++m) {
            cuts.push_back(Cut::before(m));
            if (m == c.moments.size()) {
                break;
            }
            for (std::size_t j = 0; j < c.moments[m].size(); ++j) {
                if (const auto *s = std::get_if<SwapAlphaGate>(&c.moments[m][j])) {
                    cuts.push_back(Cut::inside({m, j}, s->alpha * rng.uniform(0, 1)));
                }
            }
        }
        min_cuts = std::min(min_cuts, cuts.size());
        CheckReport r = check_wire_constancy(c, idle, cuts, 1e-10);
        worst = std::max(worst, r.max_residual);
        ok = ok && r.passed();
    }
    ok = ok && min_cuts >= 5;
    return {ok, fmt("50 circuits, >= %zu cuts each: max residual = %.2e", min_cuts, worst)};
}

Result ac4() {
    oracle::Rng rng(104);
    double worst = 0;
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        CircuitSpec c = oracle::random_circuit(rng, {.n_qubits = 3, .n_moments = 3});
        // Guarantee a rotation between entangling layers.
        c.moments.insert(c.moments.begin() + 1, Moment{rng.rotation(static_cast<std::size_t>(trial % 3))});
        CheckReport r = check_gate_rotation(c, {1, 0}, 1e-10);
        worst = std::max(worst, r.max_residual);
        ok = ok && r.passed();
    }
    return {ok, fmt("50 entangled instances: max |w_after - R w_before| = %.2e", worst)};
}

Result ac5() {
    oracle::Rng rng(105);
    double worst = 0;
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        CircuitSpec c = oracle::random_circuit(rng, {.n_qubits = 3, .n_moments = 3, .product_meas = true});
        for (std::size_t w = 0; w < c.n_qubits; ++w) {
            CheckReport r = check_measurement_anchor(c, w, 1e-10);
            worst = std::max(worst, r.max_residual);
            ok = ok && r.passed();
        }
    }
    return {ok, fmt("50 instances x 3 wires: max |w.f - 1| = %.2e", worst)};
}

Result ac6() {
    std::vector<CircuitSpec> cases;
    for (auto o : kAllowed) {
        cases.push_back(sqrt_swap_example(o));
    }
    oracle::Rng rng(106);
    for (int k = 0; k < 20; ++k) {
        CircuitSpec c;
        c.n_qubits = 2;
        c.prep = rng.state(2);
        c.meas = rng.state(2);
        c.moments = {{SwapAlphaGate{0, 1, rng.uniform(0.1, 2.3)}}};
        cases.push_back(c);
    }
    bool ok = true;
    double rmin = 1e9, rmax = 0, worst_ode = 0, worst_avg = 0;
    for (const auto &c : cases) {
        OdeConvergence conv = swap_ode_convergence(c, {0, 0}, 1e-3);
        const double alpha = std::get<SwapAlphaGate>(c.moments[0][0]).alpha;
        CheckReport avg = check_average_conservation(swap_sweep(c, {0, 0}, uniform_tau_grid(alpha, 1e-3)), 1e-10);
        ok = ok && conv.coarse.passed() && conv.ratio_ok && avg.passed();
        rmin = std::min(rmin, conv.ratio);
        rmax = std::max(rmax, conv.ratio);
        worst_ode = std::max(worst_ode, conv.coarse.max_residual / conv.coarse.tolerance);
        worst_avg = std::max(worst_avg, avg.max_residual);
    }
    return {ok, fmt("23 sweeps: max residual/(C h^2) = %.3f, h/(h/2) ratio in [%.3f, %.3f], max avg drift = %.2e",
                    worst_ode, rmin, rmax, worst_avg)};
}

Result ac7() {
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) {
        grid.push_back(0.005 * k);
    }
    double err = 0;
    for (auto o : kAllowed) {
        SweepSeries s = swap_sweep(sqrt_swap_example(o), {0, 0}, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            auto [wa, wb] = sqrt_swap_closed_form(o, grid[k]);
            err = std::max({err, max_diff(s.w_a[k], wa), max_diff(s.w_b[k], wb)});
        }
    }
    std::map<std::string, CheckReport> cross;
    for (auto o : kAllowed) {
        CircuitSpec c = sqrt_swap_example(o);
        cross[outcome_label(o)] = check_cross_product(c, swap_sweep(c, {0, 0}, uniform_tau_grid(0.5, 1e-3)));
    }
    const bool ok = err <= 1e-10 && cross["00"].passed() && cross["11"].passed() && !cross["10"].passed() &&
                    cross["10"].max_residual > 0.1;
    return {ok, fmt("closed forms on 101 points: max err = %.2e; cross-product residual 00 = %.2e, 11 = %.2e "
                    "(tol %.1e), 10 = %.3f (%s)",
                    err, cross["00"].max_residual, cross["11"].max_residual, cross["00"].tolerance,
                    cross["10"].max_residual, status_name(cross["10"].status))};
}

Result ac8() {
    const double expect[4] = {0.25, 0.0, 0.5, 0.25};
    const SqrtSwapOutcome order[4] = {SqrtSwapOutcome::k00, SqrtSwapOutcome::k01, SqrtSwapOutcome::k10,
                                      SqrtSwapOutcome::k11};
    double err = 0;
    for (int k = 0; k < 4; ++k) {
        err = std::max(err, std::abs(born_probability(sqrt_swap_example(order[k])) - expect[k]));
    }
    return {err <= 1e-12, fmt("P(00, 01, 10, 11) vs (0.25, 0, 0.5, 0.25): max err = %.2e", err)};
}

std::map<std::string, StableSolve> stable_solves(double &elapsed) {
    const auto t0 = std::chrono::steady_clock::now();
    std::map<std::string, StableSolve> out;
    SolverOptions opt;
    opt.n_seeds = 100;
    for (auto o : {SqrtSwapOutcome::k00, SqrtSwapOutcome::k01, SqrtSwapOutcome::k10, SqrtSwapOutcome::k11}) {
        out[outcome_label(o)] = solve_until_stable(sqrt_swap_problem(o), opt, 400);
    }
    elapsed = seconds_since(t0);
    return out;
}

Result ac9() {
    double elapsed = 0;
    auto solves = stable_solves(elapsed);
    const std::map<std::string, std::size_t> expect{{"00", 2}, {"01", 0}, {"10", 4}, {"11", 2}};
    bool ok = elapsed < 60;
    std::map<std::string, std::size_t> counts;
    double worst_constraint = 0;
    std::string hist;
    for (const auto &[label, r] : solves) {
        counts[label] = r.set.size();
        ok = ok && r.stable && r.set.size() == expect.at(label) && r.set.seeds_used == 400;
        hist += " " + label + ":";
        for (auto [n, c] : r.history) {
            hist += fmt("%zu@%zu", c, n) + (n == r.history.back().first ? "" : ",");
        }
        for (const auto &h : r.set.solutions) {
            worst_constraint =
                std::max(worst_constraint, constraint_residuals(h.params(), r.set.problem).cwiseAbs().maxCoeff());
        }
    }
    ok = ok && worst_constraint <= 1e-8;
    auto probs = count_probability(counts);
    double perr = 0;
    for (auto o : {SqrtSwapOutcome::k00, SqrtSwapOutcome::k01, SqrtSwapOutcome::k10, SqrtSwapOutcome::k11}) {
        perr = std::max(perr, std::abs(probs[outcome_label(o)] - born_probability(sqrt_swap_example(o))));
    }
    ok = ok && perr <= 1e-12;
    return {ok, fmt("counts{%s } max constraint violation = %.2e, |P_count - P_Born| = %.2e, %.1f s", hist.c_str(),
                    worst_constraint, perr, elapsed)};
}

Result ac10() {
    double elapsed = 0;
    auto solves = stable_solves(elapsed);
    std::vector<double> grid;
    for (int k = 0; k <= 50; ++k) {
        grid.push_back(0.01 * k);
    }
    auto series_err = [&](const AveragedSeries &avg, SqrtSwapOutcome o, bool imaginary) {
        double e = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            auto [wa, wb] = sqrt_swap_closed_form(o, grid[k]);
            const Eigen::Vector3d ta = imaginary ? Eigen::Vector3d(wa.imag()) : Eigen::Vector3d(wa.real());
            const Eigen::Vector3d tb = imaginary ? Eigen::Vector3d(wb.imag()) : Eigen::Vector3d(wb.real());
            e = std::max({e, (avg.a[k] - ta).cwiseAbs().maxCoeff(), (avg.b[k] - tb).cwiseAbs().maxCoeff()});
        }
        return e;
    };
    bool ok = true;
    std::string re, im_all, im_half;
    for (auto o : kAllowed) {
        const SolutionSet &set = solves[outcome_label(o)].set;
        const double e_re = series_err(average_re_s(set, grid), o, false);
        AveragedSeries all = average_im_s(set, grid, ImHalf::kAll);
        double e_all = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            e_all = std::max({e_all, all.a[k].cwiseAbs().maxCoeff(), all.b[k].cwiseAbs().maxCoeff()});
        }
        const double e_half = series_err(average_im_s(set, grid, ImHalf::kFirstHalf), o, true);
        ok = ok && e_re <= 1e-6 && e_all <= 1e-6 && e_half <= 1e-6;
        re += fmt(" %s=%.1e", outcome_label(o), e_re);
        im_all += fmt(" %s=%.1e", outcome_label(o), e_all);
        im_half += fmt(" %s=%.1e", outcome_label(o), e_half);
    }
    return {ok, "Re avg err" + re + "; Im all-mode" + im_all + "; Im first-half err" + im_half};
}

Result ac11() {
    tools::Fig3Data d = tools::reproduce_fig3(tools::kFig3Seed, 0.01);
    return {d.fit.max_residual <= 1e-8 && d.alpha.front() == 0 && d.alpha.back() == tools::kFig3Alpha,
            fmt("%zu points on [0, %.1f]: omega = %.12f, max fit residual = %.2e", d.alpha.size(), tools::kFig3Alpha,
                d.fit.omega, d.fit.max_residual)};
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
        {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11},
    };
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--only ACn]\n", argv[0]);
            return 2;
        }
    }
    bool all_pass = true;
    bool ran = false;
    for (const auto &[name, fn] : criteria) {
        if (!only.empty() && only != name) {
            continue;
        }
        ran = true;
        Result r;
        try {
            r = fn();
        } catch (const std::exception &e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%-5s %s  %s\n", name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    if (!ran) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return all_pass ? 0 : 1;
}
