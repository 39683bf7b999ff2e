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

#ifndef WEAKWIRE_SERIALIZE_H
#define WEAKWIRE_SERIALIZE_H

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weakwire/hvmodel.h"
#include "weakwire/locality_checks.h"
#include "weakwire/weakvalues.h"

namespace weakwire {

/// 17 significant digits, "%.17g".
std::string format_double(double x);

/// Column names: tau, then re/im of x, y, z for wire a and wire b, e.g. re_wax, im_wax, ...
std::vector<std::string> series_columns(char symbol);

void write_sweep_csv(std::ostream &out, const SweepSeries &s);
void write_trajectory_csv(std::ostream &out, const Trajectory &t);

/// Parsed form of either CSV; `symbol` is 'w' or 's'.
struct SeriesTable {
    char symbol = 'w';
    std::vector<double> tau;
    std::vector<CVec3> a;
    std::vector<CVec3> b;
};

/// Throws UsageError on a header or row that does not follow series_columns.
SeriesTable read_series_csv(std::istream &in);

/// [[re, im], [re, im], [re, im]]
nlohmann::json to_json(const CVec3 &v);
CVec3 cvec3_from_json(const nlohmann::json &j);

nlohmann::json to_json(const CheckReport &r);
nlohmann::json to_json(const HvProblem &p);

/// {problem, mode, n_seeds, rng_seed, solutions: [{outcome, s_a0, s_b0, residual}], counts,
/// probabilities} for a family of outcomes of one problem. Probabilities are omitted when
/// every count is zero.
nlohmann::json solver_report_json(const std::map<std::string, SolutionSet> &sets, const SolverOptions &options);

}  // namespace weakwire

#endif
