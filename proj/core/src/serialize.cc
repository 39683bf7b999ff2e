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

#include "weakwire/serialize.h"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "weakwire/errors.h"

namespace weakwire {

namespace {

void write_row(std::ostream &out, double tau, const CVec3 &a, const CVec3 &b) {
    out << format_double(tau);
    for (const CVec3 *v : {&a, &b}) {
        for (int k = 0; k < 3; ++k) {
            out << ',' << format_double((*v)[k].real()) << ',' << format_double((*v)[k].imag());
        }
    }
    out << '\n';
}

void write_header(std::ostream &out, char symbol) {
    auto cols = series_columns(symbol);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

double parse_cell(const std::string &cell) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != cell.size()) {
        throw UsageError("malformed number '" + cell + "' in series CSV");
    }
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> series_columns(char symbol) {
    std::vector<std::string> cols{"tau"};
    for (char wire : {'a', 'b'}) {
        for (char axis : {'x', 'y', 'z'}) {
            for (const char *part : {"re_", "im_"}) {
                cols.push_back(std::string(part) + symbol + wire + axis);
            }
        }
    }
    return cols;
}

void write_sweep_csv(std::ostream &out, const SweepSeries &s) {
    write_header(out, 'w');
    for (std::size_t k = 0; k < s.size(); ++k) {
        write_row(out, s.tau[k], s.w_a[k], s.w_b[k]);
    }
}

void write_trajectory_csv(std::ostream &out, const Trajectory &t) {
    write_header(out, 's');
    for (std::size_t k = 0; k < t.size(); ++k) {
        write_row(out, t.tau[k], t.s_a[k], t.s_b[k]);
    }
}

SeriesTable read_series_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw UsageError("empty series CSV");
    }
    SeriesTable t;
    auto header = split(line);
    if (header.size() != 13 || header[1].size() < 4) {
        throw UsageError("unexpected series CSV header");
    }
    t.symbol = header[1][3];
    if (header != series_columns(t.symbol)) {
        throw UsageError("unexpected series CSV header");
    }
    const Complex i(0, 1);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split(line);
        if (cells.size() != 13) {
            throw UsageError("series CSV row has " + std::to_string(cells.size()) + " fields, expected 13");
        }
        t.tau.push_back(parse_cell(cells[0]));
        CVec3 a, b;
        for (int k = 0; k < 3; ++k) {
            a[k] = parse_cell(cells[1 + 2 * k]) + i * parse_cell(cells[2 + 2 * k]);
            b[k] = parse_cell(cells[7 + 2 * k]) + i * parse_cell(cells[8 + 2 * k]);
        }
        t.a.push_back(a);
        t.b.push_back(b);
    }
    return t;
}

nlohmann::json to_json(const CVec3 &v) {
    nlohmann::json j = nlohmann::json::array();
    for (int k = 0; k < 3; ++k) {
        j.push_back({v[k].real(), v[k].imag()});
    }
    return j;
}

CVec3 cvec3_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 3) {
        throw UsageError("complex 3-vector must be an array of three [re, im] pairs");
    }
    CVec3 v;
    for (int k = 0; k < 3; ++k) {
        const auto &c = j[static_cast<std::size_t>(k)];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
            throw UsageError("complex entry must be [re, im]");
        }
        v[k] = Complex(c[0].get<double>(), c[1].get<double>());
    }
    return v;
}

nlohmann::json to_json(const CheckReport &r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["status"] = status_name(r.status);
    j["pass"] = r.passed();
    j["max_residual"] = r.max_residual;
    j["tolerance"] = r.tolerance;
    if (r.witness) {
        nlohmann::json w = nlohmann::json::object();
        if (r.witness->moment) {
            w["moment"] = *r.witness->moment;
        }
        if (r.witness->wire) {
            w["wire"] = *r.witness->wire;
        }
        if (r.witness->tau) {
            w["tau"] = *r.witness->tau;
        }
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["note"] = r.note;
    return j;
}

nlohmann::json to_json(const HvProblem &p) {
    auto vec = [](const BlochVector &v) {
        return nlohmann::json::array({v.x, v.y, v.z});
    };
    return {
        {"alpha", p.alpha},
        {"prep_a", vec(p.prep_a)},
        {"prep_b", vec(p.prep_b)},
        {"meas_a", vec(p.meas_a)},
        {"meas_b", vec(p.meas_b)},
    };
}

nlohmann::json solver_report_json(const std::map<std::string, SolutionSet> &sets, const SolverOptions &options) {
    nlohmann::json j;
    std::map<std::string, std::size_t> counts;
    nlohmann::json solutions = nlohmann::json::array();
    nlohmann::json outcomes = nlohmann::json::object();
    std::size_t seeds = options.n_seeds;
    for (const auto &[label, set] : sets) {
        if (j.find("problem") == j.end()) {
            j["problem"] = to_json(set.problem);
            j["mode"] = mode_name(set.problem.mode);
        }
        counts[label] = set.size();
        seeds = std::max(seeds, set.seeds_used);
        outcomes[label] = {{"signs", {set.problem.sign_a, set.problem.sign_b}}, {"seeds_used", set.seeds_used}};
        for (std::size_t k = 0; k < set.size(); ++k) {
            solutions.push_back({
                {"outcome", label},
                {"s_a0", to_json(set.solutions[k].s_a0)},
                {"s_b0", to_json(set.solutions[k].s_b0)},
                {"residual", set.residuals[k]},
            });
        }
    }
    j["n_seeds"] = seeds;
    j["rng_seed"] = options.rng_seed;
    j["outcomes"] = outcomes;
    j["solutions"] = solutions;
    j["counts"] = counts;
    std::size_t total = 0;
    for (const auto &[k, n] : counts) {
        total += n;
    }
    j["probabilities"] = total ? nlohmann::json(count_probability(counts)) : nlohmann::json(nullptr);
    return j;
}

}  // namespace weakwire
