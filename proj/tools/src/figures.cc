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

#include "weakwire_tools/figures.h"

#include <cmath>
#include <random>
#include <sstream>

#include "weakwire/errors.h"
#include "weakwire/serialize.h"
#include "weakwire/weakvalues.h"

namespace weakwire::tools {

namespace {

struct LinearFit {
    Eigen::Vector3d coef;
    double sse;
};

LinearFit fit_at(double omega, std::span<const double> t, std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd m(2 * n, 3);
    Eigen::VectorXd y(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double c = std::cos(omega * t[k]);
        const double s = std::sin(omega * t[k]);
        m.row(k) << 1, c, s;
        m.row(n + k) << 1, -c, -s;
        y[k] = a[k];
        y[n + k] = b[k];
    }
    Eigen::Vector3d coef = m.colPivHouseholderQr().solve(y);
    return {coef, (m * coef - y).squaredNorm()};
}

double canonical(std::mt19937_64 &gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

StateVector random_state(std::mt19937_64 &gen) {
    Eigen::VectorXcd v(4);
    for (auto &x : v) {
        x = Complex(2 * canonical(gen) - 1, 2 * canonical(gen) - 1);
    }
    return StateVector(2, v.normalized());
}

nlohmann::json pair_row(const std::string &outcome, double tau, const WeakVector &a, const WeakVector &b) {
    return {{"outcome", outcome}, {"tau", tau}, {"w_a", to_json(a)}, {"w_b", to_json(b)}};
}

}  // namespace

double ExchangeFit::eval(double t, int sign) const {
    return offset + sign * (cos_amp * std::cos(omega * t) + sin_amp * std::sin(omega * t));
}

ExchangeFit fit_exchange_pair(std::span<const double> t, std::span<const double> a, std::span<const double> b,
                              double omega_lo, double omega_hi) {
    if (t.size() != a.size() || t.size() != b.size() || t.size() < 4) {
        throw UsageError("fit needs at least four points in each series");
    }
    constexpr int kScan = 400;
    double best = omega_lo;
    double best_sse = fit_at(omega_lo, t, a, b).sse;
    const double d = (omega_hi - omega_lo) / kScan;
    for (int k = 1; k <= kScan; ++k) {
        const double w = omega_lo + d * k;
        const double sse = fit_at(w, t, a, b).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best = w;
        }
    }
    double lo = std::max(omega_lo, best - d);
    double hi = std::min(omega_hi, best + d);
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = fit_at(x1, t, a, b).sse;
    double f2 = fit_at(x2, t, a, b).sse;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = fit_at(x1, t, a, b).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = fit_at(x2, t, a, b).sse;
        }
    }
    ExchangeFit fit;
    fit.omega = (lo + hi) / 2;
    const LinearFit lin = fit_at(fit.omega, t, a, b);
    fit.offset = lin.coef[0];
    fit.cos_amp = lin.coef[1];
    fit.sin_amp = lin.coef[2];
    for (std::size_t k = 0; k < t.size(); ++k) {
        fit.max_residual = std::max({fit.max_residual, std::abs(fit.eval(t[k], +1) - a[k]),
                                     std::abs(fit.eval(t[k], -1) - b[k])});
    }
    return fit;
}

CircuitSpec random_exchange_circuit(std::uint64_t seed, double alpha) {
    std::mt19937_64 gen(seed);
    CircuitSpec c;
    c.n_qubits = 2;
    c.prep = random_state(gen);
    c.meas = random_state(gen);
    c.moments = {{SwapAlphaGate{0, 1, alpha}}};
    return c;
}

Fig3Data reproduce_fig3(std::uint64_t seed, double step) {
    const CircuitSpec c = random_exchange_circuit(seed, kFig3Alpha);
    const auto grid = uniform_tau_grid(kFig3Alpha, step);
    const SweepSeries s = swap_sweep(c, GateId{0, 0}, grid);
    Fig3Data d;
    d.seed = seed;
    d.component = "re_x";
    d.alpha = s.tau;
    for (std::size_t k = 0; k < s.size(); ++k) {
        d.a.push_back(s.w_a[k][0].real());
        d.b.push_back(s.w_b[k][0].real());
    }
    d.fit = fit_exchange_pair(d.alpha, d.a, d.b);
    return d;
}

std::string fig3_csv(const Fig3Data &d) {
    std::ostringstream out;
    out << "alpha,re_wax,re_wbx,fit_wax,fit_wbx\n";
    for (std::size_t k = 0; k < d.alpha.size(); ++k) {
        out << format_double(d.alpha[k]) << ',' << format_double(d.a[k]) << ',' << format_double(d.b[k]) << ','
            << format_double(d.fit.eval(d.alpha[k], +1)) << ',' << format_double(d.fit.eval(d.alpha[k], -1)) << '\n';
    }
    return out.str();
}

nlohmann::json fig3_fit_json(const Fig3Data &d) {
    return {
        {"seed", d.seed},
        {"component", d.component},
        {"alpha_max", kFig3Alpha},
        {"points", d.alpha.size()},
        {"offset", d.fit.offset},
        {"cos_amp", d.fit.cos_amp},
        {"sin_amp", d.fit.sin_amp},
        {"omega", d.fit.omega},
        {"max_residual", d.fit.max_residual},
    };
}

nlohmann::json reproduce_fig5() {
    nlohmann::json rows = nlohmann::json::array();
    for (SqrtSwapOutcome o : {SqrtSwapOutcome::k00, SqrtSwapOutcome::k10, SqrtSwapOutcome::k11}) {
        const CircuitSpec c = sqrt_swap_example(o);
        for (double tau : {0.0, 0.5}) {
            auto w = weak_vectors(c, Cut::inside(GateId{0, 0}, tau));
            rows.push_back(pair_row(outcome_label(o), tau, w[0], w[1]));
        }
    }
    return {{"rows", rows}};
}

nlohmann::json reproduce_fig6(const SolverOptions &options, ConstraintMode mode, std::size_t max_seeds) {
    std::map<std::string, SolutionSet> sets;
    nlohmann::json history = nlohmann::json::object();
    nlohmann::json born = nlohmann::json::object();
    bool stable = true;
    for (SqrtSwapOutcome o : {SqrtSwapOutcome::k00, SqrtSwapOutcome::k01, SqrtSwapOutcome::k10, SqrtSwapOutcome::k11}) {
        StableSolve r = solve_until_stable(sqrt_swap_problem(o, mode), options, max_seeds);
        stable = stable && r.stable;
        nlohmann::json h = nlohmann::json::array();
        for (auto [n, count] : r.history) {
            h.push_back({{"n_seeds", n}, {"count", count}});
        }
        history[outcome_label(o)] = h;
        born[outcome_label(o)] = born_probability(sqrt_swap_example(o));
        sets.emplace(outcome_label(o), std::move(r.set));
    }
    nlohmann::json j = solver_report_json(sets, options);
    j["stable"] = stable;
    j["count_history"] = history;
    j["born_probabilities"] = born;
    return j;
}

}  // namespace weakwire::tools
