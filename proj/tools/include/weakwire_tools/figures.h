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

#ifndef WEAKWIRE_TOOLS_FIGURES_H
#define WEAKWIRE_TOOLS_FIGURES_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weakwire/circuit.h"
#include "weakwire/hvmodel.h"

namespace weakwire::tools {

/// a(t) = offset + c cos(omega t) + s sin(omega t), b(t) = offset - c cos(omega t) - s sin(omega t).
struct ExchangeFit {
    double offset = 0;
    double cos_amp = 0;
    double sin_amp = 0;
    double omega = 0;
    double max_residual = 0;

    double eval(double t, int sign) const;
};

/// Least-squares fit of two series oscillating in antiphase around a shared mean. The frequency
/// is found by a scan over [omega_lo, omega_hi] and golden-section refinement; the other three
/// parameters are linear.
ExchangeFit fit_exchange_pair(std::span<const double> t, std::span<const double> a, std::span<const double> b,
                              double omega_lo = 0.5, double omega_hi = 8.0);

/// Two-qubit circuit with random (generally entangled) initial and final states around a
/// SwapAlpha(alpha) gate.
CircuitSpec random_exchange_circuit(std::uint64_t seed, double alpha);

struct Fig3Data {
    std::uint64_t seed = 0;
    std::string component;
    std::vector<double> alpha;
    std::vector<double> a;
    std::vector<double> b;
    ExchangeFit fit;
};

inline constexpr std::uint64_t kFig3Seed = 7;
inline constexpr double kFig3Alpha = 2.3;

/// Re of the x component of both weak vectors across a SwapAlpha(2.3) gate, with its fit.
Fig3Data reproduce_fig3(std::uint64_t seed = kFig3Seed, double step = 0.01);

std::string fig3_csv(const Fig3Data &d);
nlohmann::json fig3_fit_json(const Fig3Data &d);

/// Weak vectors at tau = 0 and 0.5 for the three allowed sqrt(SWAP) outcomes.
nlohmann::json reproduce_fig5();

/// Stable-count solves for all four sqrt(SWAP) outcomes, with Born probabilities alongside.
nlohmann::json reproduce_fig6(const SolverOptions &options, ConstraintMode mode = ConstraintMode::kFull,
                              std::size_t max_seeds = 6400);

}  // namespace weakwire::tools

#endif
