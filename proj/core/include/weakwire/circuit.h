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

#ifndef WEAKWIRE_CIRCUIT_H
#define WEAKWIRE_CIRCUIT_H

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "weakwire/qstate.h"

namespace weakwire {

/// exp(i*phase) * exp(-i*angle/2 * axis.sigma) on one wire. Treated as instantaneous.
struct RotationGate {
    std::size_t wire = 0;
    BlochVector axis{0, 0, 1};
    double angle = 0;
    double phase = 0;
};

/// Exchange interaction run for a duration `alpha`; alpha = 1 is a full SWAP, 0.5 is sqrt(SWAP).
struct SwapAlphaGate {
    std::size_t wire_a = 0;
    std::size_t wire_b = 1;
    double alpha = 0.5;
};

using GateOp = std::variant<RotationGate, SwapAlphaGate>;
using Moment = std::vector<GateOp>;

/// Gate position: moment index and position inside the moment.
struct GateId {
    std::size_t moment = 0;
    std::size_t index = 0;
    bool operator==(const GateId &) const = default;
};

/// A location in the circuit where weak values are evaluated.
///
/// A plain cut sits before moment `moment` (moment == number of moments is the final cut).
/// An interior cut sits at time `tau` inside a SwapAlpha gate of that moment; every other
/// gate in the same moment counts as already applied.
struct Cut {
    struct Interior {
        std::size_t gate_index = 0;
        double tau = 0;
    };
    std::size_t moment = 0;
    std::optional<Interior> interior;

    static Cut before(std::size_t moment) {
        return Cut{moment, std::nullopt};
    }
    static Cut inside(GateId gate, double tau) {
        return Cut{gate.moment, Interior{gate.index, tau}};
    }
};

/// Measurement of one wire along `axis`; outcome +1 projects onto +axis, -1 onto -axis.
struct MeasuredWire {
    BlochVector axis{0, 0, 1};
    int outcome = +1;

    BlochVector direction() const {
        return axis * static_cast<double>(outcome);
    }
};

using PrepSpec = std::variant<std::vector<BlochVector>, StateVector>;
using MeasSpec = std::variant<std::vector<MeasuredWire>, StateVector>;

/// Complete circuit: preparation, gate moments, post-selected measurement.
struct CircuitSpec {
    std::size_t n_qubits = 1;
    PrepSpec prep = std::vector<BlochVector>{};
    std::vector<Moment> moments;
    MeasSpec meas = std::vector<MeasuredWire>{};

    const GateOp &gate(GateId id) const;
    std::size_t num_moments() const {
        return moments.size();
    }
};

/// Throws UsageError / RangeError when the circuit breaks an invariant: dimension mismatch,
/// unnormalized explicit state, non-unit axis, overlapping wires inside a moment, non-finite parameters.
void validate(const CircuitSpec &c, std::size_t max_qubits = kDefaultMaxQubits);

/// Wires a gate acts on.
std::vector<std::size_t> gate_wires(const GateOp &g);

Eigen::Matrix2cd rotation_matrix(const BlochVector &axis, double angle, double phase = 0);

/// Closed-form exchange unitary in the |00>,|01>,|10>,|11> basis.
Eigen::Matrix4cd swap_alpha_matrix(double alpha);

/// Gate embedded in the full 2^n_qubits space.
Operator gate_unitary(const GateOp &g, std::size_t n_qubits);

/// |i>, built from the per-wire Bloch vectors or taken as given.
StateVector prepared_state(const CircuitSpec &c);
/// The post-selected |f>, not U|i>.
StateVector final_state(const CircuitSpec &c);

/// U[t - t_i]|i>.
StateVector evolve_forward(const CircuitSpec &c, const Cut &cut);

/// U^{-1}[t_f - t]|f>.
StateVector evolve_retro(const CircuitSpec &c, const Cut &cut);

/// <f|U[t_f - t_i]|i>.
Complex transition_amplitude(const CircuitSpec &c);

double born_probability(const CircuitSpec &c);

/// Copy of `c` with a different post-selected final state.
CircuitSpec with_measurement(const CircuitSpec &c, MeasSpec meas);

/// Every product outcome of a per-wire measurement, in binary order (wire 0 most significant,
/// bit value 1 meaning outcome -1).
std::vector<CircuitSpec> all_product_outcomes(const CircuitSpec &c);

/// Outcome labels of the two-wire sqrt(SWAP) example: first symbol is wire a.
enum class SqrtSwapOutcome { k00, k01, k10, k11 };

const char *outcome_label(SqrtSwapOutcome o);

/// Wire a prepared along +x, wire b along +y, one SwapAlpha(0.5), both measured along z.
CircuitSpec sqrt_swap_example(SqrtSwapOutcome outcome);

/// One wire prepared along +z, measured along (sin theta0, 0, cos theta0) with the given sign.
CircuitSpec single_qubit_example(double theta0, int outcome);

}  // namespace weakwire

#endif
