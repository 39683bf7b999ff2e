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

#ifndef WEAKWIRE_WEAKVALUES_H
#define WEAKWIRE_WEAKVALUES_H

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "weakwire/circuit.h"
#include "weakwire/vec3.h"

namespace weakwire {

/// (W[sigma_x], W[sigma_y], W[sigma_z]) for one wire at one cut.
using WeakVector = CVec3;

/// Transition amplitudes with modulus at or below this are treated as forbidden outcomes.
inline constexpr double kDefaultAmplitudeEpsilon = 1e-10;

/// Forward and retro-evolved states at a cut, plus the transition amplitude <f|U|i>.
struct CutStates {
    StateVector forward;
    StateVector retro;
    Complex amplitude;
};

/// Throws ForbiddenOutcomeError when |<f|U|i>| <= eps_amp.
CutStates cut_states(const CircuitSpec &c, const Cut &cut, double eps_amp = kDefaultAmplitudeEpsilon);

/// <retro| A |forward> / amplitude for a full-space operator A.
Complex weak_value(const CircuitSpec &c, const Cut &cut, const Operator &a, double eps_amp = kDefaultAmplitudeEpsilon);

/// Local weak-value vector of one wire, evaluated from precomputed cut states.
WeakVector weak_vector(const CutStates &states, std::size_t wire);

WeakVector weak_vector(
    const CircuitSpec &c, const Cut &cut, std::size_t wire, double eps_amp = kDefaultAmplitudeEpsilon);

/// Weak-value vectors of every wire at one cut, sharing a single pair of evolutions.
std::vector<WeakVector> weak_vectors(const CircuitSpec &c, const Cut &cut, double eps_amp = kDefaultAmplitudeEpsilon);

/// Weak-value trajectories of both wires of a SwapAlpha gate.
struct SweepSeries {
    GateId gate;
    std::vector<double> tau;
    std::vector<WeakVector> w_a;
    std::vector<WeakVector> w_b;

    std::size_t size() const {
        return tau.size();
    }
};

/// `intervals + 1` evenly spaced points covering [0, alpha], where intervals = ceil(alpha / step).
/// The effective spacing is alpha / intervals <= step.
std::vector<double> uniform_tau_grid(double alpha, double step);

/// Throws GateKindError if `gate` is not a SwapAlpha gate, UsageError for a non-ascending grid.
SweepSeries swap_sweep(
    const CircuitSpec &c, GateId gate, std::span<const double> tau_grid, double eps_amp = kDefaultAmplitudeEpsilon);

/// Closed-form weak vector of the single-qubit example (prepared along +z, measured along
/// (sin theta0, 0, cos theta0)) for outcome +1 or -1.
WeakVector single_qubit_closed_form(double theta0, int outcome);

/// Closed-form (w_a, w_b) inside the sqrt(SWAP) example at 0 <= tau <= 0.5.
std::pair<WeakVector, WeakVector> sqrt_swap_closed_form(SqrtSwapOutcome outcome, double tau);

/// Outcome probabilities proportional to 1 / |Re(w)|^2, normalized to sum to one.
std::vector<double> single_qubit_probability_rule(std::span<const WeakVector> ws);

}  // namespace weakwire

#endif
