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

#include "weakwire/hvmodel.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "weakwire/errors.h"

namespace weakwire {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

struct Deriv {
    CVec3 a;
    CVec3 b;
};

inline Deriv flow(const CVec3 &s_a, const CVec3 &s_b) {
    CVec3 c = kHalfPi * complex_cross(s_b, s_a);
    return {c, -c};
}

inline void rk4_step(CVec3 &s_a, CVec3 &s_b, double h) {
    Deriv k1 = flow(s_a, s_b);
    Deriv k2 = flow(s_a + (h / 2) * k1.a, s_b + (h / 2) * k1.b);
    Deriv k3 = flow(s_a + (h / 2) * k2.a, s_b + (h / 2) * k2.b);
    Deriv k4 = flow(s_a + h * k3.a, s_b + h * k3.b);
    s_a += (h / 6) * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
    s_b += (h / 6) * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
}

bool finite(const CVec3 &v) {
    return v.allFinite();
}

std::size_t intervals_for(double span, double step) {
    if (!(step > 0) || !std::isfinite(step)) {
        throw DomainError("integration step must be positive");
    }
    if (!(span >= 0) || !std::isfinite(span)) {
        throw DomainError("integration interval must be finite and non-negative");
    }
    return static_cast<std::size_t>(std::ceil(span / step - 1e-9));
}

// Returns false instead of throwing; used inside the optimizer.
bool advance(CVec3 &s_a, CVec3 &s_b, double span, double step) {
    std::size_t n = intervals_for(span, step);
    if (n == 0) {
        return true;
    }
    const double h = span / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        rk4_step(s_a, s_b, h);
    }
    return finite(s_a) && finite(s_b);
}

CVec3 bloch(const BlochVector &v) {
    return v.to_complex();
}

Eigen::VectorXd residuals_at(const HvParams &x, const HvProblem &p, double step) {
    const bool full = p.mode == ConstraintMode::kFull;
    Eigen::VectorXd r(full ? 14 : 10);
    auto [s_a, s_b] = unpack_params(x);
    const Complex dots[3] = {hyperbolic_dot(s_a, s_a), hyperbolic_dot(s_b, s_b), hyperbolic_dot(s_a, s_b)};
    for (int k = 0; k < 3; ++k) {
        r[2 * k] = dots[k].real() - 1;
        r[2 * k + 1] = dots[k].imag();
    }
    CVec3 f_a = s_a;
    CVec3 f_b = s_b;
    if (!advance(f_a, f_b, p.alpha, step)) {
        r.setConstant(std::numeric_limits<double>::infinity());
        return r;
    }
    const Complex bounds[4] = {
        hyperbolic_dot(bloch(p.prep_a), s_a),
        hyperbolic_dot(bloch(p.prep_b), s_b),
        static_cast<double>(p.sign_a) * hyperbolic_dot(bloch(p.meas_a), f_a),
        static_cast<double>(p.sign_b) * hyperbolic_dot(bloch(p.meas_b), f_b),
    };
    for (int k = 0; k < 4; ++k) {
        if (full) {
            r[6 + 2 * k] = bounds[k].real() - 1;
            r[7 + 2 * k] = bounds[k].imag();
        } else {
            r[6 + k] = bounds[k].real() - 1;
        }
    }
    return r;
}

double cost_of(const Eigen::VectorXd &r) {
    double c = r.squaredNorm();
    return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
}

struct LmResult {
    HvParams x;
    double cost;
};

LmResult levenberg_marquardt(HvParams x, const HvProblem &p, double step, std::size_t max_iterations, double target) {
    Eigen::VectorXd r = residuals_at(x, p, step);
    double cost = cost_of(r);
    if (!std::isfinite(cost)) {
        return {x, cost};
    }
    const auto m = r.size();
    Eigen::MatrixXd jac(m, 12);
    double lambda = 1e-3;
    std::size_t stalled = 0;
    for (std::size_t it = 0; it < max_iterations && cost > target; ++it) {
        for (int i = 0; i < 12; ++i) {
            const double d = 1e-7 * std::max(1.0, std::abs(x[i]));
            HvParams xi = x;
            xi[i] += d;
            jac.col(i) = (residuals_at(xi, p, step) - r) / d;
        }
        if (!jac.allFinite()) {
            break;
        }
        const Eigen::Matrix<double, 12, 12> a = jac.transpose() * jac;
        const HvParams g = jac.transpose() * r;
        bool improved = false;
        while (lambda < 1e12) {
            Eigen::Matrix<double, 12, 12> damped = a;
            for (int i = 0; i < 12; ++i) {
                damped(i, i) += lambda * std::max(a(i, i), 1e-12);
            }
            const HvParams dx = damped.ldlt().solve(-g);
            const HvParams xn = x + dx;
            Eigen::VectorXd rn = residuals_at(xn, p, step);
            const double cn = cost_of(rn);
            if (cn < cost) {
                stalled = (cost - cn) < 1e-9 * cost ? stalled + 1 : 0;
                x = xn;
                r = std::move(rn);
                cost = cn;
                lambda = std::max(lambda / 3, 1e-15);
                improved = true;
                break;
            }
            lambda *= 4;
        }
        if (!improved || stalled >= 10) {
            break;
        }
    }
    return {x, cost};
}

std::size_t worker_count(std::size_t requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("WEAKWIRE_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Candidate {
    HvParams x;
    double cost = std::numeric_limits<double>::infinity();
    bool accepted = false;
};

Candidate run_seed(const HvProblem &p, const SolverOptions &o, std::size_t k, double range) {
    Candidate out;
    LmResult coarse = levenberg_marquardt(seed_params(o.rng_seed, k, range), p, o.explore_step, o.max_iterations, 1e-24);
    if (!(coarse.cost < 1e-8)) {
        out.x = coarse.x;
        out.cost = coarse.cost;
        return out;
    }
    LmResult fine = levenberg_marquardt(coarse.x, p, o.step, 60, 1e-26);
    out.x = fine.x;
    out.cost = fine.cost;
    out.accepted = fine.cost <= o.tol_solve;
    return out;
}

// Evaluates seeds [begin, end) into slots of `out`, optionally across threads.
void run_seeds(const HvProblem &p, const SolverOptions &o, double range, std::size_t begin, std::size_t end,
               std::vector<Candidate> &out) {
    out.resize(end);
    const std::size_t workers = std::min(worker_count(o.threads), std::max<std::size_t>(1, end - begin));
    if (workers <= 1) {
        for (std::size_t k = begin; k < end; ++k) {
            out[k] = run_seed(p, o, k, range);
        }
        return;
    }
    std::atomic<std::size_t> next{begin};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < end; k = next++) {
                out[k] = run_seed(p, o, k, range);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

bool lex_less(const HvParams &a, const HvParams &b) {
    for (int i = 0; i < 12; ++i) {
        if (std::abs(a[i] - b[i]) > 1e-6) {
            return a[i] < b[i];
        }
    }
    return false;
}

HvParams conjugate(const HvParams &x) {
    HvParams c = x;
    c.segment<3>(3) *= -1;
    c.segment<3>(9) *= -1;
    return c;
}

HiddenPair make_pair(const HvParams &x, double alpha, double step) {
    auto [s_a, s_b] = unpack_params(x);
    HiddenPair h{s_a, s_b, integrate_s(s_a, s_b, alpha, step), 0};
    auto half = propagate_s(s_a, s_b, alpha, step / 2);
    h.richardson_gap = std::max((half.first - h.trajectory.s_a.back()).cwiseAbs().maxCoeff(),
                                (half.second - h.trajectory.s_b.back()).cwiseAbs().maxCoeff());
    return h;
}

SolutionSet assemble(const HvProblem &p, const SolverOptions &o, double range, const std::vector<Candidate> &cands,
                     std::size_t n) {
    SolutionSet raw;
    raw.problem = p;
    raw.dedup_tol = o.dedup_tol;
    raw.step = o.step;
    raw.seeds_used = n;
    raw.seed_range = range;
    for (std::size_t k = 0; k < n; ++k) {
        if (cands[k].accepted) {
            auto [s_a, s_b] = unpack_params(cands[k].x);
            raw.solutions.push_back(HiddenPair{s_a, s_b, {}, 0});
            raw.residuals.push_back(cands[k].cost);
        }
    }
    SolutionSet set = dedupe(raw, o.dedup_tol);
    for (auto &s : set.solutions) {
        s = make_pair(s.params(), p.alpha, o.step);
    }
    return set;
}

AveragedSeries average_parts(const std::vector<const HiddenPair *> &members, const SolutionSet &set,
                             std::span<const double> tau_grid, bool imaginary) {
    if (members.empty()) {
        throw DomainError("cannot average an empty solution set");
    }
    AveragedSeries out;
    out.tau.assign(tau_grid.begin(), tau_grid.end());
    out.a.assign(tau_grid.size(), Eigen::Vector3d::Zero());
    out.b.assign(tau_grid.size(), Eigen::Vector3d::Zero());
    const double w = 1.0 / static_cast<double>(members.size());
    for (const HiddenPair *h : members) {
        Trajectory t = sample_s(h->s_a0, h->s_b0, tau_grid, set.step);
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (imaginary) {
                out.a[k] += w * t.s_a[k].imag();
                out.b[k] += w * t.s_b[k].imag();
            } else {
                out.a[k] += w * t.s_a[k].real();
                out.b[k] += w * t.s_b[k].real();
            }
        }
    }
    return out;
}

}  // namespace

const char *mode_name(ConstraintMode m) {
    return m == ConstraintMode::kFull ? "full" : "relaxed";
}

ConstraintMode parse_mode(const std::string &name) {
    if (name == "full") {
        return ConstraintMode::kFull;
    }
    if (name == "relaxed") {
        return ConstraintMode::kRelaxed;
    }
    throw UsageError("unknown constraint mode '" + name + "' (expected full or relaxed)");
}

HvProblem sqrt_swap_problem(SqrtSwapOutcome outcome, ConstraintMode mode) {
    return hv_problem_from_circuit(sqrt_swap_example(outcome), mode);
}

HvProblem hv_problem_from_circuit(const CircuitSpec &c, ConstraintMode mode) {
    validate(c);
    if (c.n_qubits != 2) {
        throw UsageError("the hidden-variable model needs a two-qubit circuit");
    }
    const SwapAlphaGate *gate = nullptr;
    for (const auto &m : c.moments) {
        for (const auto &g : m) {
            const auto *s = std::get_if<SwapAlphaGate>(&g);
            if (s == nullptr || gate != nullptr) {
                throw UsageError("the hidden-variable model needs exactly one SwapAlpha gate and no other gates");
            }
            gate = s;
        }
    }
    if (gate == nullptr) {
        throw UsageError("the hidden-variable model needs exactly one SwapAlpha gate and no other gates");
    }
    const auto *prep = std::get_if<std::vector<BlochVector>>(&c.prep);
    const auto *meas = std::get_if<std::vector<MeasuredWire>>(&c.meas);
    if (prep == nullptr || meas == nullptr) {
        throw UsageError("the hidden-variable model needs per-wire preparation and measurement");
    }
    HvProblem p;
    p.alpha = gate->alpha;
    p.prep_a = (*prep)[gate->wire_a];
    p.prep_b = (*prep)[gate->wire_b];
    p.meas_a = (*meas)[gate->wire_a].axis;
    p.meas_b = (*meas)[gate->wire_b].axis;
    p.sign_a = (*meas)[gate->wire_a].outcome;
    p.sign_b = (*meas)[gate->wire_b].outcome;
    p.mode = mode;
    return p;
}

HvParams pack_params(const CVec3 &s_a, const CVec3 &s_b) {
    HvParams p;
    p << s_a.real(), s_a.imag(), s_b.real(), s_b.imag();
    return p;
}

std::pair<CVec3, CVec3> unpack_params(const HvParams &p) {
    const Complex i(0, 1);
    CVec3 s_a = p.segment<3>(0).cast<Complex>() + i * p.segment<3>(3).cast<Complex>();
    CVec3 s_b = p.segment<3>(6).cast<Complex>() + i * p.segment<3>(9).cast<Complex>();
    return {s_a, s_b};
}

Trajectory integrate_s(const CVec3 &s_a0, const CVec3 &s_b0, double alpha, double step) {
    const std::size_t n = intervals_for(alpha, step);
    Trajectory t;
    t.tau.reserve(n + 1);
    t.s_a.reserve(n + 1);
    t.s_b.reserve(n + 1);
    CVec3 s_a = s_a0;
    CVec3 s_b = s_b0;
    if (!finite(s_a) || !finite(s_b)) {
        throw DivergenceError("non-finite initial values");
    }
    t.tau.push_back(0);
    t.s_a.push_back(s_a);
    t.s_b.push_back(s_b);
    for (std::size_t k = 1; k <= n; ++k) {
        rk4_step(s_a, s_b, alpha / static_cast<double>(n));
        if (!finite(s_a) || !finite(s_b)) {
            throw DivergenceError("integration diverged at step " + std::to_string(k));
        }
        t.tau.push_back(alpha * static_cast<double>(k) / static_cast<double>(n));
        t.s_a.push_back(s_a);
        t.s_b.push_back(s_b);
    }
    return t;
}

Trajectory sample_s(const CVec3 &s_a0, const CVec3 &s_b0, std::span<const double> tau_grid, double step) {
    Trajectory t;
    CVec3 s_a = s_a0;
    CVec3 s_b = s_b0;
    double at = 0;
    for (double tau : tau_grid) {
        if (tau < at) {
            throw UsageError("tau grid must be ascending and non-negative");
        }
        if (!advance(s_a, s_b, tau - at, step)) {
            throw DivergenceError("integration diverged before tau = " + std::to_string(tau));
        }
        at = tau;
        t.tau.push_back(tau);
        t.s_a.push_back(s_a);
        t.s_b.push_back(s_b);
    }
    return t;
}

std::pair<CVec3, CVec3> propagate_s(const CVec3 &s_a0, const CVec3 &s_b0, double alpha, double step) {
    CVec3 s_a = s_a0;
    CVec3 s_b = s_b0;
    if (!advance(s_a, s_b, alpha, step)) {
        throw DivergenceError("integration diverged");
    }
    return {s_a, s_b};
}

Eigen::VectorXd constraint_residuals(const HvParams &params, const HvProblem &p, double step) {
    intervals_for(p.alpha, step);
    return residuals_at(params, p, step);
}

double constraint_residual(const HvParams &params, const HvProblem &p, double step) {
    return cost_of(constraint_residuals(params, p, step));
}

HvParams seed_params(std::uint64_t rng_seed, std::size_t k, double range) {
    std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(static_cast<std::uint64_t>(k) >> 32)};
    std::mt19937_64 gen(seq);
    HvParams x;
    for (int i = 0; i < 12; ++i) {
        // Explicit 53-bit mapping keeps seeds identical across standard libraries.
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x[i] = -range + 2 * range * u;
    }
    return x;
}

SolutionSet solve(const HvProblem &p, const SolverOptions &options) {
    if (options.n_seeds == 0) {
        throw UsageError("n_seeds must be at least 1");
    }
    std::vector<Candidate> cands;
    run_seeds(p, options, options.seed_range, 0, options.n_seeds, cands);
    return assemble(p, options, options.seed_range, cands, options.n_seeds);
}

StableSolve solve_until_stable(const HvProblem &p, const SolverOptions &options, std::size_t max_seeds) {
    if (options.n_seeds == 0) {
        throw UsageError("n_seeds must be at least 1");
    }
    StableSolve out;
    double range = options.seed_range;
    for (int attempt = 0; attempt < 2; ++attempt, range *= 2) {
        out.history.clear();
        std::vector<Candidate> cands;
        std::size_t done = 0;
        for (std::size_t n = options.n_seeds; n <= std::max(max_seeds, options.n_seeds); n *= 2) {
            run_seeds(p, options, range, done, n, cands);
            done = n;
            out.set = assemble(p, options, range, cands, n);
            out.history.emplace_back(n, out.set.size());
            const std::size_t h = out.history.size();
            if (h >= 3 && out.history[h - 1].second == out.history[h - 2].second &&
                out.history[h - 2].second == out.history[h - 3].second) {
                out.stable = true;
                return out;
            }
        }
    }
    return out;
}

SolutionSet dedupe(const SolutionSet &set, double dedup_tol) {
    if (!(dedup_tol > 0)) {
        throw DomainError("dedup_tol must be positive");
    }
    std::vector<std::size_t> order(set.solutions.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    auto residual = [&](std::size_t i) {
        return i < set.residuals.size() ? set.residuals[i] : 0.0;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return residual(a) < residual(b);
    });
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
        const HvParams x = set.solutions[i].params();
        bool dup = std::any_of(kept.begin(), kept.end(), [&](std::size_t j) {
            return (set.solutions[j].params() - x).norm() <= dedup_tol;
        });
        if (!dup) {
            kept.push_back(i);
        }
    }
    std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(set.solutions[a].params(), set.solutions[b].params());
    });
    SolutionSet out = set;
    out.dedup_tol = dedup_tol;
    out.solutions.clear();
    out.residuals.clear();
    for (std::size_t i : kept) {
        out.solutions.push_back(set.solutions[i]);
        out.residuals.push_back(residual(i));
    }
    return out;
}

std::map<std::string, double> count_probability(const std::map<std::string, std::size_t> &counts) {
    std::size_t total = 0;
    for (const auto &[k, n] : counts) {
        total += n;
    }
    if (total == 0) {
        throw DomainError("no solutions for any outcome");
    }
    std::map<std::string, double> out;
    for (const auto &[k, n] : counts) {
        out[k] = static_cast<double>(n) / static_cast<double>(total);
    }
    return out;
}

AveragedSeries average_re_s(const SolutionSet &set, std::span<const double> tau_grid) {
    std::vector<const HiddenPair *> all;
    for (const auto &s : set.solutions) {
        all.push_back(&s);
    }
    return average_parts(all, set, tau_grid, false);
}

std::vector<std::pair<std::size_t, std::size_t>> conjugate_pairs(const SolutionSet &set, double tol) {
    const std::size_t n = set.solutions.size();
    if (n % 2 != 0) {
        throw PairingError("an odd number of solutions cannot be split into conjugate pairs");
    }
    std::vector<std::size_t> partner(n);
    for (std::size_t i = 0; i < n; ++i) {
        const HvParams target = conjugate(set.solutions[i].params());
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            double d = (set.solutions[j].params() - target).norm();
            if (d < best) {
                best = d;
                partner[i] = j;
            }
        }
        if (!(best <= tol)) {
            throw PairingError("solution " + std::to_string(i) + " has no conjugate partner");
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        if (partner[partner[i]] != i) {
            throw PairingError("conjugate matching is not one-to-one");
        }
        if (i < partner[i]) {
            pairs.emplace_back(i, partner[i]);
        }
    }
    return pairs;
}

double prep_relation_residual(const HiddenPair &s, const HvProblem &p) {
    const Complex i(0, 1);
    auto term = [&](const CVec3 &v, const BlochVector &n) {
        const CVec3 nn = bloch(n);
        return (v - nn - i * complex_cross(nn, v)).norm();
    };
    return term(s.s_a0, p.prep_a) + term(s.s_b0, p.prep_b);
}

AveragedSeries average_im_s(const SolutionSet &set, std::span<const double> tau_grid, ImHalf half, PairMember member) {
    std::vector<const HiddenPair *> chosen;
    if (half == ImHalf::kAll) {
        for (const auto &s : set.solutions) {
            chosen.push_back(&s);
        }
        return average_parts(chosen, set, tau_grid, true);
    }
    if (set.solutions.empty()) {
        throw DomainError("cannot average an empty solution set");
    }
    for (auto [i, j] : conjugate_pairs(set, set.dedup_tol)) {
        const HiddenPair &x = set.solutions[i];
        const HiddenPair &y = set.solutions[j];
        bool take_x = lex_less(x.params(), y.params()) || !lex_less(y.params(), x.params());
        if (member == PairMember::kPrepRelation) {
            const double rx = prep_relation_residual(x, set.problem);
            const double ry = prep_relation_residual(y, set.problem);
            if (std::abs(rx - ry) > 1e-9) {
                take_x = rx < ry;
            }
        }
        chosen.push_back(take_x ? &x : &y);
    }
    return average_parts(chosen, set, tau_grid, true);
}

}  // namespace weakwire
