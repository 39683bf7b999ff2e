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

#ifndef WEAKWIRE_LOCALITY_CHECKS_H
#define WEAKWIRE_LOCALITY_CHECKS_H

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakwire/circuit.h"
#include "weakwire/weakvalues.h"

namespace weakwire {

enum class CheckStatus { kPass, kFail, kSkipped };

const char *status_name(CheckStatus s);

/// Where the worst residual of a check was found.
struct Witness {
    std::optional<std::size_t> moment;
    std::optional<std::size_t> wire;
    std::optional<double> tau;
};

/// Outcome of one numerical check.
///
/// kPass and kFail are decided by max_residual <= tolerance. kSkipped means the identity
/// being checked is only claimed under a condition that does not hold here; max_residual
/// is still reported but nothing is asserted.
struct CheckReport {
    std::string check;
    CheckStatus status = CheckStatus::kFail;
    double max_residual = 0;
    double tolerance = 0;
    std::optional<Witness> witness;
    std::string note;

    bool passed() const {
        return status == CheckStatus::kPass;
    }
    bool failed() const {
        return status == CheckStatus::kFail;
    }
};

inline constexpr double kDefaultCheckTolerance = 1e-10;

/// Purity threshold above which a wire counts as separable.
inline constexpr double kSeparablePurity = 1 - 1e-9;

/// The wire's weak vector is the same at every cut. The wire must be idle between the cuts.
CheckReport check_wire_constancy(
    const CircuitSpec &c, std::size_t wire, std::span<const Cut> cuts, double tolerance = kDefaultCheckTolerance);

/// 3x3 real rotation R_jk = Tr(sigma_j U sigma_k U^dagger) / 2 induced by a single-qubit unitary.
Eigen::Matrix3d bloch_rotation(const Eigen::Matrix2cd &u);

/// The weak vector after a rotation gate equals R times the weak vector before it.
CheckReport check_gate_rotation(const CircuitSpec &c, GateId gate, double tolerance = kDefaultCheckTolerance);

/// w . f_hat = 1 at the final cut for a wire measured along f_hat.
CheckReport check_measurement_anchor(const CircuitSpec &c, std::size_t wire, double tolerance = kDefaultCheckTolerance);

/// w = i_hat + i (i_hat x w) at preparation and w = f_hat + i (w x f_hat) at measurement, for
/// gate-free circuits with per-wire preparation and measurement.
CheckReport check_prep_relations(const CircuitSpec &c, std::size_t wire, double tolerance = kDefaultCheckTolerance);

/// Worst |central second difference - (pi^2/2)(other - self)| over interior points, both wires.
std::vector<double> swap_ode_residuals(const SweepSeries &s);

/// C * h^2 with C = 10 * pi^4 / 4 * max|w|, the default tolerance of check_swap_ode.
double swap_ode_tolerance(const SweepSeries &s);

/// Second-order exchange equation, checked by finite differences on a uniform grid.
CheckReport check_swap_ode(const SweepSeries &s, std::optional<double> tolerance = std::nullopt);

struct OdeConvergence {
    CheckReport coarse;
    double coarse_residual = 0;
    double fine_residual = 0;
    /// coarse / fine residual at the shared grid points; about 4 for O(h^2) truncation error.
    double ratio = 0;
    bool ratio_ok = false;
};

/// Runs the ODE check at step h and h/2 and compares residuals at the shared points.
OdeConvergence swap_ode_convergence(const CircuitSpec &c, GateId gate, double step, double ratio_band = 0.5);

/// Per-point |dw_a/dtau - (pi/2) w_b x w_a| (worst with the mirrored wire b term). Central
/// differences inside, second-order one-sided differences at the two ends.
std::vector<double> cross_product_residuals(const SweepSeries &s);

/// C * h^2 with C = 10 * pi^3 / 6 * max|w|.
double cross_product_tolerance(const SweepSeries &s);

/// Per-point flag: forward and retro states are both product states on the gate's two wires.
std::vector<bool> boundary_separable(const CircuitSpec &c, const SweepSeries &s);

/// First-order complex cross-product law. Passes when every residual is within tolerance;
/// a large residual fails only at points where both states are separable, and is otherwise
/// reported as skipped.
CheckReport check_cross_product(
    const CircuitSpec &c, const SweepSeries &s, std::optional<double> tolerance = std::nullopt);

/// w . w = 1 for a wire that is separable in the forward or the retro state at the cut.
CheckReport check_hyperbolic_norm(
    const CircuitSpec &c, const Cut &cut, std::size_t wire, double tolerance = kDefaultCheckTolerance);

/// (w_a + w_b) / 2 is constant across the sweep.
CheckReport check_average_conservation(const SweepSeries &s, double tolerance = kDefaultCheckTolerance);

/// w_a . w_b = 1 at every sweep point.
CheckReport check_pair_dot(const SweepSeries &s, double tolerance = kDefaultCheckTolerance);

struct SuiteOptions {
    double tolerance = kDefaultCheckTolerance;
    double tau_step = 1e-3;
};

/// Every applicable check for one circuit: constancy of idle wires, each rotation gate, each
/// measurement anchor, preparation relations for gate-free circuits, the exchange checks for
/// each SwapAlpha gate, and the hyperbolic norm on every wire at every plain cut.
std::vector<CheckReport> run_check_suite(const CircuitSpec &c, const SuiteOptions &options = {});

}  // namespace weakwire

#endif
