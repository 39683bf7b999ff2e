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

#include "weakwire/circuit.h"

#include <cmath>
#include <numbers>
#include <string>

#include "weakwire/errors.h"

namespace weakwire {

namespace {

constexpr double kNormTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_unit(const BlochVector &v, const char *what) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z) ||
        std::abs(v.norm() - 1.0) > kNormTolerance) {
        throw UsageError(std::string(what) + " must be a finite unit vector");
    }
}

void require_state(const StateVector &s, std::size_t n_qubits, const char *what) {
    if (s.n_qubits() != n_qubits) {
        throw UsageError(std::string(what) + " has the wrong number of qubits");
    }
    if (std::abs(s.norm() - 1.0) > kNormTolerance) {
        throw UsageError(std::string(what) + " is not normalized");
    }
}

const SwapAlphaGate &interior_gate(const CircuitSpec &c, const Cut &cut) {
    if (cut.moment >= c.moments.size()) {
        throw RangeError("interior cut references a moment past the end of the circuit");
    }
    const Moment &m = c.moments[cut.moment];
    if (cut.interior->gate_index >= m.size()) {
        throw RangeError("interior cut references a missing gate");
    }
    const auto *g = std::get_if<SwapAlphaGate>(&m[cut.interior->gate_index]);
    if (g == nullptr) {
        throw GateKindError("interior cuts are only defined inside SwapAlpha gates");
    }
    double lo = std::min(0.0, g->alpha);
    double hi = std::max(0.0, g->alpha);
    double tau = cut.interior->tau;
    if (!std::isfinite(tau) || tau < lo - 1e-12 || tau > hi + 1e-12) {
        throw RangeError("interior tau " + std::to_string(tau) + " outside [0, alpha]");
    }
    return *g;
}

void check_cut(const CircuitSpec &c, const Cut &cut) {
    if (cut.interior) {
        interior_gate(c, cut);
    } else if (cut.moment > c.moments.size()) {
        throw RangeError("cut moment " + std::to_string(cut.moment) + " past the end of the circuit");
    }
}

void apply_gate(StateVector &psi, const GateOp &g, bool inverse) {
    std::visit(
        overloaded{
            [&](const RotationGate &r) {
                Eigen::Matrix2cd u = rotation_matrix(r.axis, r.angle, r.phase);
                psi.apply_single_in_place(inverse ? Eigen::Matrix2cd(u.adjoint()) : u, r.wire);
            },
            [&](const SwapAlphaGate &s) {
                psi.apply_pair_in_place(swap_alpha_matrix(inverse ? -s.alpha : s.alpha), s.wire_a, s.wire_b);
            },
        },
        g);
}

}  // namespace

const GateOp &CircuitSpec::gate(GateId id) const {
    if (id.moment >= moments.size() || id.index >= moments[id.moment].size()) {
        throw RangeError("gate id (" + std::to_string(id.moment) + ", " + std::to_string(id.index) + ") out of range");
    }
    return moments[id.moment][id.index];
}

std::vector<std::size_t> gate_wires(const GateOp &g) {
    return std::visit(
        overloaded{
            [](const RotationGate &r) { return std::vector<std::size_t>{r.wire}; },
            [](const SwapAlphaGate &s) { return std::vector<std::size_t>{s.wire_a, s.wire_b}; },
        },
        g);
}

void validate(const CircuitSpec &c, std::size_t max_qubits) {
    if (c.n_qubits == 0) {
        throw UsageError("circuit needs at least one qubit");
    }
    if (c.n_qubits > max_qubits) {
        throw UsageError(
            "circuit has " + std::to_string(c.n_qubits) + " qubits; limit is " + std::to_string(max_qubits));
    }
    std::visit(
        overloaded{
            [&](const std::vector<BlochVector> &p) {
                if (p.size() != c.n_qubits) {
                    throw UsageError("preparation lists " + std::to_string(p.size()) + " wires, circuit has " +
                                     std::to_string(c.n_qubits));
                }
                for (const auto &b : p) {
                    require_unit(b, "preparation Bloch vector");
                }
            },
            [&](const StateVector &s) { require_state(s, c.n_qubits, "preparation state"); },
        },
        c.prep);
    std::visit(
        overloaded{
            [&](const std::vector<MeasuredWire> &m) {
                if (m.size() != c.n_qubits) {
                    throw UsageError("measurement lists " + std::to_string(m.size()) + " wires, circuit has " +
                                     std::to_string(c.n_qubits));
                }
                for (const auto &w : m) {
                    require_unit(w.axis, "measurement axis");
                    if (w.outcome != 1 && w.outcome != -1) {
                        throw UsageError("measurement outcome must be +1 or -1");
                    }
                }
            },
            [&](const StateVector &s) { require_state(s, c.n_qubits, "measured final state"); },
        },
        c.meas);
    for (std::size_t k = 0; k < c.moments.size(); ++k) {
        std::vector<bool> used(c.n_qubits, false);
        for (const auto &g : c.moments[k]) {
            for (std::size_t w : gate_wires(g)) {
                if (w >= c.n_qubits) {
                    throw RangeError("gate in moment " + std::to_string(k) + " targets missing wire " + std::to_string(w));
                }
                if (used[w]) {
                    throw UsageError("moment " + std::to_string(k) + " uses wire " + std::to_string(w) + " twice");
                }
                used[w] = true;
            }
            std::visit(overloaded{
                           [](const RotationGate &r) {
                               require_unit(r.axis, "rotation axis");
                               if (!std::isfinite(r.angle) || !std::isfinite(r.phase)) {
                                   throw UsageError("rotation angle and phase must be finite");
                               }
                           },
                           [](const SwapAlphaGate &s) {
                               if (!std::isfinite(s.alpha)) {
                                   throw UsageError("SwapAlpha alpha must be finite");
                               }
                           },
                       },
                       g);
        }
    }
}

Eigen::Matrix2cd rotation_matrix(const BlochVector &axis, double angle, double phase) {
    require_unit(axis, "rotation axis");
    const Complex i(0, 1);
    Eigen::Matrix2cd n_sigma = axis.x * pauli_x() + axis.y * pauli_y() + axis.z * pauli_z();
    Eigen::Matrix2cd u = std::cos(angle / 2) * Eigen::Matrix2cd::Identity() - i * std::sin(angle / 2) * n_sigma;
    return std::exp(i * phase) * u;
}

Eigen::Matrix4cd swap_alpha_matrix(double alpha) {
    const Complex e = std::exp(Complex(0, std::numbers::pi * alpha));
    const Complex p = (1.0 + e) / 2.0;
    const Complex q = (1.0 - e) / 2.0;
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1;
    u(1, 1) = p;
    u(1, 2) = q;
    u(2, 1) = q;
    u(2, 2) = p;
    u(3, 3) = 1;
    return u;
}

Operator gate_unitary(const GateOp &g, std::size_t n_qubits) {
    if (const auto *r = std::get_if<RotationGate>(&g)) {
        return embed_single(rotation_matrix(r->axis, r->angle, r->phase), r->wire, n_qubits);
    }
    const auto &s = std::get<SwapAlphaGate>(g);
    if (s.wire_a == s.wire_b || s.wire_a >= n_qubits || s.wire_b >= n_qubits) {
        throw RangeError("SwapAlpha wires invalid for this qubit count");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    Operator u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const Eigen::Matrix4cd local = swap_alpha_matrix(s.alpha);
    for (std::size_t k = 0; k < dim; ++k) {
        StateVector e = StateVector::basis(n_qubits, k);
        e.apply_pair_in_place(local, s.wire_a, s.wire_b);
        u.col(static_cast<Eigen::Index>(k)) = e.amps();
    }
    return u;
}

StateVector prepared_state(const CircuitSpec &c) {
    if (const auto *s = std::get_if<StateVector>(&c.prep)) {
        return *s;
    }
    std::vector<StateVector> factors;
    for (const auto &b : std::get<std::vector<BlochVector>>(c.prep)) {
        factors.push_back(bloch_to_state(b));
    }
    return product_state(factors);
}

StateVector final_state(const CircuitSpec &c) {
    if (const auto *s = std::get_if<StateVector>(&c.meas)) {
        return *s;
    }
    std::vector<StateVector> factors;
    for (const auto &m : std::get<std::vector<MeasuredWire>>(c.meas)) {
        factors.push_back(bloch_to_state(m.direction()));
    }
    return product_state(factors);
}

StateVector evolve_forward(const CircuitSpec &c, const Cut &cut) {
    validate(c);
    check_cut(c, cut);
    StateVector psi = prepared_state(c);
    for (std::size_t k = 0; k < cut.moment; ++k) {
        for (const auto &g : c.moments[k]) {
            apply_gate(psi, g, false);
        }
    }
    if (cut.interior) {
        const auto &moment = c.moments[cut.moment];
        for (std::size_t j = 0; j < moment.size(); ++j) {
            if (j != cut.interior->gate_index) {
                apply_gate(psi, moment[j], false);
            }
        }
        const SwapAlphaGate &s = interior_gate(c, cut);
        psi.apply_pair_in_place(swap_alpha_matrix(cut.interior->tau), s.wire_a, s.wire_b);
    }
    return psi;
}

StateVector evolve_retro(const CircuitSpec &c, const Cut &cut) {
    validate(c);
    check_cut(c, cut);
    StateVector phi = final_state(c);
    const std::size_t first_full = cut.interior ? cut.moment + 1 : cut.moment;
    for (std::size_t k = c.moments.size(); k > first_full; --k) {
        for (const auto &g : c.moments[k - 1]) {
            apply_gate(phi, g, true);
        }
    }
    if (cut.interior) {
        const SwapAlphaGate &s = interior_gate(c, cut);
        phi.apply_pair_in_place(swap_alpha_matrix(-(s.alpha - cut.interior->tau)), s.wire_a, s.wire_b);
    }
    return phi;
}

Complex transition_amplitude(const CircuitSpec &c) {
    StateVector out = evolve_forward(c, Cut::before(c.moments.size()));
    return final_state(c).inner(out);
}

double born_probability(const CircuitSpec &c) {
    return std::norm(transition_amplitude(c));
}

CircuitSpec with_measurement(const CircuitSpec &c, MeasSpec meas) {
    CircuitSpec out = c;
    out.meas = std::move(meas);
    return out;
}

std::vector<CircuitSpec> all_product_outcomes(const CircuitSpec &c) {
    const auto *m = std::get_if<std::vector<MeasuredWire>>(&c.meas);
    if (m == nullptr) {
        throw UsageError("outcome enumeration needs a per-wire measurement");
    }
    std::vector<CircuitSpec> out;
    const std::size_t n = m->size();
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        std::vector<MeasuredWire> meas = *m;
        for (std::size_t w = 0; w < n; ++w) {
            meas[w].outcome = (bits >> (n - 1 - w)) & 1 ? -1 : +1;
        }
        out.push_back(with_measurement(c, meas));
    }
    return out;
}

const char *outcome_label(SqrtSwapOutcome o) {
    switch (o) {
        case SqrtSwapOutcome::k00:
            return "00";
        case SqrtSwapOutcome::k01:
            return "01";
        case SqrtSwapOutcome::k10:
            return "10";
        case SqrtSwapOutcome::k11:
            return "11";
    }
    return "??";
}

CircuitSpec sqrt_swap_example(SqrtSwapOutcome outcome) {
    int sa = (outcome == SqrtSwapOutcome::k10 || outcome == SqrtSwapOutcome::k11) ? -1 : +1;
    int sb = (outcome == SqrtSwapOutcome::k01 || outcome == SqrtSwapOutcome::k11) ? -1 : +1;
    CircuitSpec c;
    c.n_qubits = 2;
    c.prep = std::vector<BlochVector>{{1, 0, 0}, {0, 1, 0}};
    c.moments = {Moment{SwapAlphaGate{0, 1, 0.5}}};
    c.meas = std::vector<MeasuredWire>{{{0, 0, 1}, sa}, {{0, 0, 1}, sb}};
    return c;
}

CircuitSpec single_qubit_example(double theta0, int outcome) {
    CircuitSpec c;
    c.n_qubits = 1;
    c.prep = std::vector<BlochVector>{{0, 0, 1}};
    c.meas = std::vector<MeasuredWire>{{{std::sin(theta0), 0, std::cos(theta0)}, outcome}};
    return c;
}

}  // namespace weakwire
