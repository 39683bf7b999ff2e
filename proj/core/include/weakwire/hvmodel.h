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

#ifndef WEAKWIRE_HVMODEL_H
#define WEAKWIRE_HVMODEL_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "weakwire/circuit.h"
#include "weakwire/vec3.h"

namespace weakwire {

enum class ConstraintMode { kFull, kRelaxed };

const char *mode_name(ConstraintMode m);
ConstraintMode parse_mode(const std::string &name);

/// Two-qubit boundary problem around a single SwapAlpha gate.
///
/// The final vectors must satisfy (sign * meas) . s = 1, so meas is the measured axis and
/// sign the observed outcome.
struct HvProblem {
    double alpha = 0.5;
    BlochVector prep_a{1, 0, 0};
    BlochVector prep_b{0, 1, 0};
    BlochVector meas_a{0, 0, 1};
    BlochVector meas_b{0, 0, 1};
    int sign_a = +1;
    int sign_b = +1;
    ConstraintMode mode = ConstraintMode::kFull;
};

/// The sqrt-SWAP problem with x/y preparation and z measurement on both qubits.
HvProblem sqrt_swap_problem(SqrtSwapOutcome outcome, ConstraintMode mode = ConstraintMode::kFull);

/// Reads the problem from a two-qubit circuit holding exactly one SwapAlpha gate, per-wire
/// preparation and per-wire measurement. s_a belongs to the gate's first wire.
HvProblem hv_problem_from_circuit(const CircuitSpec &c, ConstraintMode mode = ConstraintMode::kFull);

/// 12 reals: Re s_a, Im s_a, Re s_b, Im s_b.
using HvParams = Eigen::Matrix<double, 12, 1>;

HvParams pack_params(const CVec3 &s_a, const CVec3 &s_b);
std::pair<CVec3, CVec3> unpack_params(const HvParams &p);

struct Trajectory {
    std::vector<double> tau;
    std::vector<CVec3> s_a;
    std::vector<CVec3> s_b;

    std::size_t size() const {
        return tau.size();
    }
};

inline constexpr double kDefaultHvStep = 1e-3;

/// Fixed-step RK4 for ds_a/dtau = (pi/2) s_b x s_a, ds_b/dtau = (pi/2) s_a x s_b on [0, alpha].
/// The step is shrunk to alpha / ceil(alpha / step) so the grid ends exactly at alpha.
Trajectory integrate_s(const CVec3 &s_a0, const CVec3 &s_b0, double alpha, double step = kDefaultHvStep);

/// The same flow sampled at an ascending grid of tau >= 0, integrating between neighbours
/// with steps no longer than `step`.
Trajectory sample_s(const CVec3 &s_a0, const CVec3 &s_b0, std::span<const double> tau_grid, double step = kDefaultHvStep);

/// Final pair only.
std::pair<CVec3, CVec3> propagate_s(const CVec3 &s_a0, const CVec3 &s_b0, double alpha, double step = kDefaultHvStep);

/// Real constraint violations: 6 from s_a.s_a, s_b.s_b, s_a.s_b = 1 at tau = 0, then the boundary
/// terms. Full mode gives 8 more (Re - 1 and Im of n.s at both preparations and both
/// measurements); relaxed mode 4 (n.Re s - 1 only).
Eigen::VectorXd constraint_residuals(const HvParams &params, const HvProblem &p, double step = kDefaultHvStep);

/// Sum of squares of constraint_residuals.
double constraint_residual(const HvParams &params, const HvProblem &p, double step = kDefaultHvStep);

struct HiddenPair {
    CVec3 s_a0;
    CVec3 s_b0;
    /// Samples at the solver's integration grid.
    Trajectory trajectory;
    /// Largest change of the final pair when the step is halved.
    double richardson_gap = 0;

    HvParams params() const {
        return pack_params(s_a0, s_b0);
    }
};

struct SolverOptions {
    std::size_t n_seeds = 400;
    std::uint64_t rng_seed = 20260101;
    /// Initial reals are drawn uniformly from [-seed_range, seed_range].
    double seed_range = 2.0;
    double tol_solve = 1e-10;
    double dedup_tol = 1e-4;
    double step = kDefaultHvStep;
    /// Coarser RK4 step used while searching; each candidate is then refined at `step`.
    double explore_step = 1e-2;
    std::size_t max_iterations = 300;
    /// 0 reads WEAKWIRE_THREADS, falling back to the hardware concurrency.
    std::size_t threads = 0;
};

struct SolutionSet {
    HvProblem problem;
    std::vector<HiddenPair> solutions;
    std::vector<double> residuals;
    double dedup_tol = 1e-4;
    double step = kDefaultHvStep;
    std::size_t seeds_used = 0;
    double seed_range = 2.0;

    std::size_t size() const {
        return solutions.size();
    }
};

/// Starting point of seed k. Depends only on (rng_seed, k, range).
HvParams seed_params(std::uint64_t rng_seed, std::size_t k, double range);

/// Multistart Levenberg-Marquardt on the constraint residuals. Deterministic for fixed options
/// regardless of thread count.
SolutionSet solve(const HvProblem &p, const SolverOptions &options = {});

struct StableSolve {
    SolutionSet set;
    /// Counts at each seed budget that was tried.
    std::vector<std::pair<std::size_t, std::size_t>> history;
    bool stable = false;
};

/// Doubles n_seeds from options.n_seeds until the count is unchanged across two successive
/// doublings, up to max_seeds. Without a plateau the seed range is doubled once and the
/// search repeated.
StableSolve solve_until_stable(const HvProblem &p, const SolverOptions &options, std::size_t max_seeds = 6400);

/// Greedy clustering in seed order; each cluster keeps its lowest-residual member. The
/// result is sorted lexicographically by parameters.
SolutionSet dedupe(const SolutionSet &set, double dedup_tol);

/// P(outcome) = count / total.
std::map<std::string, double> count_probability(const std::map<std::string, std::size_t> &counts);

struct AveragedSeries {
    std::vector<double> tau;
    std::vector<Eigen::Vector3d> a;
    std::vector<Eigen::Vector3d> b;
};

AveragedSeries average_re_s(const SolutionSet &set, std::span<const double> tau_grid);

enum class ImHalf { kAll, kFirstHalf };

/// Which member of each conjugate pair survives in first-half mode.
enum class PairMember {
    /// The member closest to satisfying the preparation relation s = n + i (n x s) on both
    /// qubits.
    kPrepRelation,
    /// The lexicographically smaller parameter vector.
    kLexicographic,
};

AveragedSeries average_im_s(const SolutionSet &set, std::span<const double> tau_grid, ImHalf half,
                            PairMember member = PairMember::kPrepRelation);

/// Index pairs (i, j), i < j, with solution j the componentwise conjugate of solution i.
/// Throws PairingError if some solution has no distinct partner within tol.
std::vector<std::pair<std::size_t, std::size_t>> conjugate_pairs(const SolutionSet &set, double tol);

/// Sum over both qubits of |s - n - i (n x s)| at tau = 0.
double prep_relation_residual(const HiddenPair &s, const HvProblem &p);

}  // namespace weakwire

#endif
