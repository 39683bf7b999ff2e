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

#include "weakwire/locality_checks.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "weakwire/errors.h"

namespace weakwire {

namespace {

constexpr double kPi = std::numbers::pi;

CheckReport graded(std::string name, double residual, double tolerance, std::optional<Witness> witness = {}) {
    CheckReport r;
    r.check = std::move(name);
    r.max_residual = residual;
    r.tolerance = tolerance;
    r.status = residual <= tolerance ? CheckStatus::kPass : CheckStatus::kFail;
    r.witness = witness;
    return r;
}

std::string with_wire(const char *name, std::size_t wire) {
    return std::string(name) + "[wire " + std::to_string(wire) + "]";
}

std::string with_gate(const char *name, GateId g) {
    return std::string(name) + "[gate " + std::to_string(g.moment) + ":" + std::to_string(g.index) + "]";
}

double uniform_step(const SweepSeries &s, std::size_t min_points) {
    if (s.size() < min_points) {
        throw UsageError("finite-difference check needs at least " + std::to_string(min_points) + " grid points");
    }
    double h = s.tau[1] - s.tau[0];
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (std::abs((s.tau[k] - s.tau[k - 1]) - h) > 1e-9 * h) {
            throw UsageError("finite-difference check needs a uniform tau grid");
        }
    }
    return h;
}

double max_modulus(const SweepSeries &s) {
    double m = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        m = std::max({m, s.w_a[k].cwiseAbs().maxCoeff(), s.w_b[k].cwiseAbs().maxCoeff()});
    }
    return m;
}

const SwapAlphaGate &swap_gate(const CircuitSpec &c, GateId id) {
    const auto *g = std::get_if<SwapAlphaGate>(&c.gate(id));
    if (g == nullptr) {
        throw GateKindError("gate is not a SwapAlpha gate");
    }
    return *g;
}

std::vector<double> grid_with_intervals(double alpha, std::size_t intervals) {
    std::vector<double> g(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
        g[k] = alpha * static_cast<double>(k) / static_cast<double>(intervals);
    }
    return g;
}

// Bloch direction of a wire's factor in a product-measured final state.
std::optional<BlochVector> measured_direction(const CircuitSpec &c, std::size_t wire) {
    if (const auto *m = std::get_if<std::vector<MeasuredWire>>(&c.meas)) {
        return (*m).at(wire).direction();
    }
    const auto &f = std::get<StateVector>(c.meas);
    if (reduced_purity(f, wire) < kSeparablePurity) {
        return std::nullopt;
    }
    return reduced_bloch(f, wire);
}

std::string format_tau(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", tau);
    return buf;
}

bool touches(const GateOp &g, std::size_t wire) {
    auto w = gate_wires(g);
    return std::find(w.begin(), w.end(), wire) != w.end();
}

}  // namespace

const char *status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::kPass:
            return "pass";
        case CheckStatus::kFail:
            return "fail";
        case CheckStatus::kSkipped:
            return "skipped";
    }
    return "unknown";
}

CheckReport check_wire_constancy(const CircuitSpec &c, std::size_t wire, std::span<const Cut> cuts, double tolerance) {
    if (wire >= c.n_qubits) {
        throw RangeError("wire out of range");
    }
    if (cuts.empty()) {
        throw UsageError("wire constancy needs at least one cut");
    }
    std::size_t lo = cuts.front().moment;
    std::size_t hi = lo;
    for (const Cut &cut : cuts) {
        lo = std::min(lo, cut.moment);
        hi = std::max(hi, cut.moment + (cut.interior ? 1 : 0));
    }
    for (std::size_t k = lo; k < hi && k < c.moments.size(); ++k) {
        for (const auto &g : c.moments[k]) {
            if (touches(g, wire)) {
                throw UsageError("wire " + std::to_string(wire) + " passes through a gate in moment " +
                                 std::to_string(k) + " between the cuts");
            }
        }
    }
    const WeakVector ref = weak_vector(c, cuts.front(), wire);
    double worst = 0;
    Witness witness{cuts.front().moment, wire, std::nullopt};
    for (const Cut &cut : cuts.subspan(1)) {
        double r = max_abs_diff(weak_vector(c, cut, wire), ref);
        if (r > worst || std::isnan(r)) {
            worst = r;
            witness.moment = cut.moment;
            witness.tau = cut.interior ? std::optional<double>(cut.interior->tau) : std::nullopt;
        }
    }
    return graded(with_wire("wire_constancy", wire), worst, tolerance, witness);
}

Eigen::Matrix3d bloch_rotation(const Eigen::Matrix2cd &u) {
    Eigen::Matrix3d r;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            r(j, k) = 0.5 * (pauli(j) * u * pauli(k) * u.adjoint()).trace().real();
        }
    }
    return r;
}

CheckReport check_gate_rotation(const CircuitSpec &c, GateId gate, double tolerance) {
    const auto *rot = std::get_if<RotationGate>(&c.gate(gate));
    if (rot == nullptr) {
        throw GateKindError("check_gate_rotation needs a single-qubit rotation gate");
    }
    const Eigen::Matrix3d r = bloch_rotation(rotation_matrix(rot->axis, rot->angle, rot->phase));
    const WeakVector before = weak_vector(c, Cut::before(gate.moment), rot->wire);
    const WeakVector after = weak_vector(c, Cut::before(gate.moment + 1), rot->wire);
    const WeakVector predicted = r.cast<Complex>() * before;
    return graded(with_gate("gate_rotation", gate), max_abs_diff(after, predicted), tolerance,
                  Witness{gate.moment, rot->wire, std::nullopt});
}

CheckReport check_measurement_anchor(const CircuitSpec &c, std::size_t wire, double tolerance) {
    validate(c);
    if (wire >= c.n_qubits) {
        throw RangeError("wire out of range");
    }
    auto dir = measured_direction(c, wire);
    if (!dir) {
        throw UsageError("final state has no product factor on wire " + std::to_string(wire));
    }
    const WeakVector w = weak_vector(c, Cut::before(c.moments.size()), wire);
    double r = std::abs(hyperbolic_dot(w, dir->to_complex()) - 1.0);
    return graded(with_wire("measurement_anchor", wire), r, tolerance, Witness{c.moments.size(), wire, std::nullopt});
}

CheckReport check_prep_relations(const CircuitSpec &c, std::size_t wire, double tolerance) {
    validate(c);
    if (wire >= c.n_qubits) {
        throw RangeError("wire out of range");
    }
    for (const auto &m : c.moments) {
        if (!m.empty()) {
            throw UsageError("preparation/measurement relations are only claimed for gate-free circuits");
        }
    }
    const auto *prep = std::get_if<std::vector<BlochVector>>(&c.prep);
    const auto *meas = std::get_if<std::vector<MeasuredWire>>(&c.meas);
    if (prep == nullptr || meas == nullptr) {
        throw UsageError("preparation/measurement relations need per-wire preparation and measurement");
    }
    const Complex i(0, 1);
    const CVec3 i_hat = (*prep)[wire].to_complex();
    const CVec3 f_hat = (*meas)[wire].direction().to_complex();
    const WeakVector w_prep = weak_vector(c, Cut::before(0), wire);
    const WeakVector w_meas = weak_vector(c, Cut::before(c.moments.size()), wire);
    double r_prep = max_abs_diff(w_prep, i_hat + i * complex_cross(i_hat, w_prep));
    double r_meas = max_abs_diff(w_meas, f_hat + i * complex_cross(w_meas, f_hat));
    Witness witness{r_prep >= r_meas ? 0 : c.moments.size(), wire, std::nullopt};
    return graded(with_wire("prep_relations", wire), std::max(r_prep, r_meas), tolerance, witness);
}

std::vector<double> swap_ode_residuals(const SweepSeries &s) {
    const double h = uniform_step(s, 3);
    const double k = kPi * kPi / 2;
    std::vector<double> out(s.size(), 0.0);
    for (std::size_t n = 1; n + 1 < s.size(); ++n) {
        CVec3 dda = (s.w_a[n + 1] - 2.0 * s.w_a[n] + s.w_a[n - 1]) / (h * h);
        CVec3 ddb = (s.w_b[n + 1] - 2.0 * s.w_b[n] + s.w_b[n - 1]) / (h * h);
        CVec3 diff = s.w_b[n] - s.w_a[n];
        out[n] = std::max(max_abs_diff(dda, k * diff), max_abs_diff(ddb, -k * diff));
    }
    return out;
}

double swap_ode_tolerance(const SweepSeries &s) {
    const double h = uniform_step(s, 3);
    return 10.0 * std::pow(kPi, 4) / 4.0 * max_modulus(s) * h * h;
}

CheckReport check_swap_ode(const SweepSeries &s, std::optional<double> tolerance) {
    auto r = swap_ode_residuals(s);
    auto worst = std::max_element(r.begin(), r.end());
    auto idx = static_cast<std::size_t>(worst - r.begin());
    return graded("swap_ode", *worst, tolerance.value_or(swap_ode_tolerance(s)),
                  Witness{s.gate.moment, std::nullopt, s.tau[idx]});
}

OdeConvergence swap_ode_convergence(const CircuitSpec &c, GateId gate, double step, double ratio_band) {
    const SwapAlphaGate &g = swap_gate(c, gate);
    if (!(g.alpha > 0) || !(step > 0)) {
        throw DomainError("convergence study needs alpha > 0 and step > 0");
    }
    auto intervals = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(g.alpha / step - 1e-9)));
    auto coarse_grid = grid_with_intervals(g.alpha, intervals);
    auto fine_grid = grid_with_intervals(g.alpha, 2 * intervals);
    SweepSeries coarse = swap_sweep(c, gate, coarse_grid);
    SweepSeries fine = swap_sweep(c, gate, fine_grid);

    OdeConvergence out;
    out.coarse = check_swap_ode(coarse);
    auto rc = swap_ode_residuals(coarse);
    auto rf = swap_ode_residuals(fine);
    for (std::size_t k = 1; k + 1 < rc.size(); ++k) {
        out.coarse_residual = std::max(out.coarse_residual, rc[k]);
        out.fine_residual = std::max(out.fine_residual, rf[2 * k]);
    }
    out.ratio = out.fine_residual > 0 ? out.coarse_residual / out.fine_residual : 0.0;
    out.ratio_ok = std::abs(out.ratio - 4.0) <= ratio_band;
    return out;
}

std::vector<double> cross_product_residuals(const SweepSeries &s) {
    const double h = uniform_step(s, 3);
    const std::size_t n = s.size();
    auto derivative = [&](const std::vector<WeakVector> &w, std::size_t k) -> CVec3 {
        if (k == 0) {
            return (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2 * h);
        }
        if (k == n - 1) {
            return (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]) / (2 * h);
        }
        return (w[k + 1] - w[k - 1]) / (2 * h);
    };
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        CVec3 pred_a = (kPi / 2) * complex_cross(s.w_b[k], s.w_a[k]);
        CVec3 pred_b = (kPi / 2) * complex_cross(s.w_a[k], s.w_b[k]);
        out[k] = std::max(max_abs_diff(derivative(s.w_a, k), pred_a), max_abs_diff(derivative(s.w_b, k), pred_b));
    }
    return out;
}

double cross_product_tolerance(const SweepSeries &s) {
    const double h = uniform_step(s, 3);
    return 10.0 * std::pow(kPi, 3) / 6.0 * max_modulus(s) * h * h;
}

std::vector<bool> boundary_separable(const CircuitSpec &c, const SweepSeries &s) {
    const SwapAlphaGate &g = swap_gate(c, s.gate);
    std::vector<bool> out;
    out.reserve(s.size());
    for (double tau : s.tau) {
        CutStates st = cut_states(c, Cut::inside(s.gate, tau));
        bool sep = true;
        for (std::size_t w : {g.wire_a, g.wire_b}) {
            sep = sep && reduced_purity(st.forward, w) >= kSeparablePurity &&
                  reduced_purity(st.retro, w) >= kSeparablePurity;
        }
        out.push_back(sep);
    }
    return out;
}

CheckReport check_cross_product(const CircuitSpec &c, const SweepSeries &s, std::optional<double> tolerance) {
    auto r = cross_product_residuals(s);
    const double tol = tolerance.value_or(cross_product_tolerance(s));
    auto worst = std::max_element(r.begin(), r.end());
    auto idx = static_cast<std::size_t>(worst - r.begin());
    CheckReport rep = graded("cross_product", *worst, tol, Witness{s.gate.moment, std::nullopt, s.tau[idx]});
    if (rep.passed()) {
        return rep;
    }
    auto sep = boundary_separable(c, s);
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (sep[k] && !(r[k] <= tol)) {
            rep.witness->tau = s.tau[k];
            rep.note = "violated where both boundary states are separable";
            return rep;
        }
    }
    rep.status = CheckStatus::kSkipped;
    rep.note = "condition not met: violations only where a boundary state is entangled";
    return rep;
}

CheckReport check_hyperbolic_norm(const CircuitSpec &c, const Cut &cut, std::size_t wire, double tolerance) {
    CutStates st = cut_states(c, cut);
    const WeakVector w = weak_vector(st, wire);
    const double r = std::abs(hyperbolic_dot(w, w) - 1.0);
    Witness witness{cut.moment, wire, cut.interior ? std::optional<double>(cut.interior->tau) : std::nullopt};
    std::string name = "hyperbolic_norm[wire " + std::to_string(wire) + ", moment " + std::to_string(cut.moment);
    if (cut.interior) {
        name += ", tau " + format_tau(cut.interior->tau);
    }
    CheckReport rep = graded(name + "]", r, tolerance, witness);
    bool separable = reduced_purity(st.forward, wire) >= kSeparablePurity ||
                     reduced_purity(st.retro, wire) >= kSeparablePurity;
    if (!separable) {
        rep.status = CheckStatus::kSkipped;
        rep.note = "condition not met: wire entangled in both forward and retro states";
    }
    return rep;
}

CheckReport check_average_conservation(const SweepSeries &s, double tolerance) {
    if (s.size() == 0) {
        throw UsageError("empty sweep");
    }
    const CVec3 ref = (s.w_a[0] + s.w_b[0]) / 2.0;
    double worst = 0;
    std::size_t at = 0;
    for (std::size_t k = 1; k < s.size(); ++k) {
        double r = max_abs_diff((s.w_a[k] + s.w_b[k]) / 2.0, ref);
        if (r > worst) {
            worst = r;
            at = k;
        }
    }
    return graded("average_conservation", worst, tolerance, Witness{s.gate.moment, std::nullopt, s.tau[at]});
}

CheckReport check_pair_dot(const SweepSeries &s, double tolerance) {
    double worst = 0;
    std::size_t at = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        double r = std::abs(hyperbolic_dot(s.w_a[k], s.w_b[k]) - 1.0);
        if (r > worst) {
            worst = r;
            at = k;
        }
    }
    return graded("pair_dot", worst, tolerance, Witness{s.gate.moment, std::nullopt, s.size() ? s.tau[at] : 0.0});
}

std::vector<CheckReport> run_check_suite(const CircuitSpec &c, const SuiteOptions &options) {
    validate(c);
    std::vector<CheckReport> out;
    const double tol = options.tolerance;
    const std::size_t n_moments = c.moments.size();

    for (std::size_t wire = 0; wire < c.n_qubits; ++wire) {
        // Maximal runs of moments that leave this wire alone.
        std::size_t k = 0;
        while (k < n_moments) {
            if (std::any_of(c.moments[k].begin(), c.moments[k].end(),
                            [&](const GateOp &g) { return touches(g, wire); })) {
                ++k;
                continue;
            }
            std::size_t start = k;
            while (k < n_moments && std::none_of(c.moments[k].begin(), c.moments[k].end(),
                                                 [&](const GateOp &g) { return touches(g, wire); })) {
                ++k;
            }
            std::vector<Cut> cuts;
            for (std::size_t m = start; m <= k; ++m) {
                cuts.push_back(Cut::before(m));
                if (m < k) {
                    for (std::size_t j = 0; j < c.moments[m].size(); ++j) {
                        if (const auto *s = std::get_if<SwapAlphaGate>(&c.moments[m][j])) {
                            cuts.push_back(Cut::inside({m, j}, s->alpha / 2));
                        }
                    }
                }
            }
            out.push_back(check_wire_constancy(c, wire, cuts, tol));
        }
    }

    bool gate_free = true;
    for (std::size_t m = 0; m < n_moments; ++m) {
        for (std::size_t j = 0; j < c.moments[m].size(); ++j) {
            gate_free = false;
            const GateId id{m, j};
            if (std::holds_alternative<RotationGate>(c.moments[m][j])) {
                out.push_back(check_gate_rotation(c, id, tol));
                continue;
            }
            const auto &s = std::get<SwapAlphaGate>(c.moments[m][j]);
            if (!(s.alpha > 0)) {
                continue;
            }
            auto grid = uniform_tau_grid(s.alpha, options.tau_step);
            if (grid.size() < 3) {
                grid = grid_with_intervals(s.alpha, 2);
            }
            SweepSeries series = swap_sweep(c, id, grid);
            CheckReport ode = check_swap_ode(series);
            ode.check = with_gate("swap_ode", id);
            out.push_back(ode);
            CheckReport avg = check_average_conservation(series, tol);
            avg.check = with_gate("average_conservation", id);
            out.push_back(avg);
            CheckReport cross = check_cross_product(c, series);
            cross.check = with_gate("cross_product", id);
            out.push_back(cross);
        }
    }

    for (std::size_t wire = 0; wire < c.n_qubits; ++wire) {
        if (measured_direction(c, wire)) {
            out.push_back(check_measurement_anchor(c, wire, tol));
        }
    }

    if (gate_free && std::holds_alternative<std::vector<BlochVector>>(c.prep) &&
        std::holds_alternative<std::vector<MeasuredWire>>(c.meas)) {
        for (std::size_t wire = 0; wire < c.n_qubits; ++wire) {
            out.push_back(check_prep_relations(c, wire, tol));
        }
    }

    for (std::size_t m = 0; m <= n_moments; ++m) {
        for (std::size_t wire = 0; wire < c.n_qubits; ++wire) {
            out.push_back(check_hyperbolic_norm(c, Cut::before(m), wire, tol));
        }
    }
    return out;
}

}  // namespace weakwire
