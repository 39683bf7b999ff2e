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

#include "weakwire/weakvalues.h"

#include <cmath>
#include <numbers>
#include <string>

#include "weakwire/errors.h"

namespace weakwire {

namespace {

// T_ab = sum over other wires of forward[a, rest] * conj(retro[b, rest]), so that
// <retro| (B on wire) |forward> = Tr(B T).
Eigen::Matrix2cd transition_operator(const StateVector &forward, const StateVector &retro, std::size_t wire) {
    const std::size_t n = forward.n_qubits();
    if (wire >= n) {
        throw RangeError("wire " + std::to_string(wire) + " out of range");
    }
    const std::size_t bit = std::size_t{1} << (n - 1 - wire);
    const auto &f = forward.amps();
    const auto &r = retro.amps();
    Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
    for (std::size_t i = 0; i < forward.dim(); ++i) {
        if (i & bit) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(i);
        auto i1 = static_cast<Eigen::Index>(i | bit);
        Complex r0 = std::conj(r(i0));
        Complex r1 = std::conj(r(i1));
        t(0, 0) += f(i0) * r0;
        t(0, 1) += f(i0) * r1;
        t(1, 0) += f(i1) * r0;
        t(1, 1) += f(i1) * r1;
    }
    return t;
}

}  // namespace

CutStates cut_states(const CircuitSpec &c, const Cut &cut, double eps_amp) {
    StateVector forward = evolve_forward(c, cut);
    StateVector retro = evolve_retro(c, cut);
    Complex amp = retro.inner(forward);
    if (!(std::abs(amp) > eps_amp)) {
        throw ForbiddenOutcomeError("zero transition amplitude: weak values are undefined for this outcome");
    }
    return CutStates{std::move(forward), std::move(retro), amp};
}

Complex weak_value(const CircuitSpec &c, const Cut &cut, const Operator &a, double eps_amp) {
    CutStates s = cut_states(c, cut, eps_amp);
    return s.retro.inner(s.forward.apply(a)) / s.amplitude;
}

WeakVector weak_vector(const CutStates &states, std::size_t wire) {
    Eigen::Matrix2cd t = transition_operator(states.forward, states.retro, wire);
    WeakVector w;
    for (int j = 0; j < 3; ++j) {
        w(j) = (pauli(j) * t).trace() / states.amplitude;
    }
    return w;
}

WeakVector weak_vector(const CircuitSpec &c, const Cut &cut, std::size_t wire, double eps_amp) {
    return weak_vector(cut_states(c, cut, eps_amp), wire);
}

std::vector<WeakVector> weak_vectors(const CircuitSpec &c, const Cut &cut, double eps_amp) {
    CutStates s = cut_states(c, cut, eps_amp);
    std::vector<WeakVector> out;
    out.reserve(c.n_qubits);
    for (std::size_t w = 0; w < c.n_qubits; ++w) {
        out.push_back(weak_vector(s, w));
    }
    return out;
}

std::vector<double> uniform_tau_grid(double alpha, double step) {
    if (!(alpha > 0) || !std::isfinite(alpha)) {
        throw DomainError("tau grids need a positive, finite alpha");
    }
    if (!(step > 0)) {
        throw DomainError("tau grid step must be positive");
    }
    auto intervals = static_cast<std::size_t>(std::ceil(alpha / step - 1e-9));
    intervals = std::max<std::size_t>(intervals, 1);
    std::vector<double> grid(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
        grid[k] = alpha * static_cast<double>(k) / static_cast<double>(intervals);
    }
    return grid;
}

SweepSeries swap_sweep(const CircuitSpec &c, GateId gate, std::span<const double> tau_grid, double eps_amp) {
    const auto *s = std::get_if<SwapAlphaGate>(&c.gate(gate));
    if (s == nullptr) {
        throw GateKindError("swap_sweep needs a SwapAlpha gate");
    }
    for (std::size_t k = 1; k < tau_grid.size(); ++k) {
        if (!(tau_grid[k] > tau_grid[k - 1])) {
            throw UsageError("tau grid must be strictly ascending");
        }
    }
    SweepSeries out;
    out.gate = gate;
    out.tau.assign(tau_grid.begin(), tau_grid.end());
    out.w_a.reserve(tau_grid.size());
    out.w_b.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        CutStates states = cut_states(c, Cut::inside(gate, tau), eps_amp);
        out.w_a.push_back(weak_vector(states, s->wire_a));
        out.w_b.push_back(weak_vector(states, s->wire_b));
    }
    return out;
}

WeakVector single_qubit_closed_form(double theta0, int outcome) {
    const Complex i(0, 1);
    if (outcome == +1) {
        double c = std::cos(theta0 / 2);
        if (std::abs(c) < 1e-12) {
            throw DomainError("tan(theta0/2) is undefined at this angle");
        }
        double t = std::tan(theta0 / 2);
        return WeakVector(t, i * t, 1.0);
    }
    if (outcome == -1) {
        double s = std::sin(theta0 / 2);
        if (std::abs(s) < 1e-12) {
            throw DomainError("cot(theta0/2) is undefined at this angle");
        }
        double ct = std::cos(theta0 / 2) / s;
        return WeakVector(-ct, -i * ct, 1.0);
    }
    throw DomainError("outcome must be +1 or -1");
}

std::pair<WeakVector, WeakVector> sqrt_swap_closed_form(SqrtSwapOutcome outcome, double tau) {
    if (!(tau >= 0 && tau <= 0.5)) {
        throw DomainError("closed form is defined for 0 <= tau <= 0.5");
    }
    const Complex i(0, 1);
    const Complex e = std::exp(i * std::numbers::pi * tau);
    const Complex e_neg = std::exp(-i * std::numbers::pi * tau);
    const double s = std::sin(std::numbers::pi * tau);
    switch (outcome) {
        case SqrtSwapOutcome::k00:
            return {
                WeakVector(1.0 + i + (1.0 - i) * e, 1.0 - i - (1.0 + i) * e, 2.0) / 2.0,
                WeakVector(1.0 + i - (1.0 - i) * e, 1.0 - i + (1.0 + i) * e, 2.0) / 2.0,
            };
        case SqrtSwapOutcome::k10:
            // e^{-i pi tau} here, not e^{+i pi tau}.
            return {
                WeakVector(1.0 + e_neg, 1.0 - e_neg, -2.0 * s) / 2.0,
                WeakVector(1.0 - e_neg, 1.0 + e_neg, 2.0 * s) / 2.0,
            };
        case SqrtSwapOutcome::k11:
            return {
                WeakVector(1.0 - i + (1.0 + i) * e, 1.0 + i - (1.0 - i) * e, -2.0) / 2.0,
                WeakVector(1.0 - i - (1.0 + i) * e, 1.0 + i + (1.0 - i) * e, -2.0) / 2.0,
            };
        case SqrtSwapOutcome::k01:
            break;
    }
    throw ForbiddenOutcomeError("outcome 01 has zero probability; its weak values do not exist");
}

std::vector<double> single_qubit_probability_rule(std::span<const WeakVector> ws) {
    std::vector<double> p;
    double total = 0;
    for (const auto &w : ws) {
        double re2 = w.real().squaredNorm();
        if (!(re2 > 0) || !std::isfinite(re2)) {
            throw DomainError("probability rule needs a nonzero, finite Re(w)");
        }
        p.push_back(1.0 / re2);
        total += 1.0 / re2;
    }
    for (double &x : p) {
        x /= total;
    }
    return p;
}

}  // namespace weakwire
