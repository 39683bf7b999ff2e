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

#ifndef WEAKWIRE_CIRCUIT_JSON_H
#define WEAKWIRE_CIRCUIT_JSON_H

#include <string_view>

#include <nlohmann/json.hpp>

#include "weakwire/circuit.h"

namespace weakwire {

/// Reads the circuit schema:
///
///   {"n_qubits": N,
///    "prep":    [{"wire": w, "bloch": [x, y, z]}, ...]  |  {"state": [[re, im], ...]},
///    "moments": [[{"type": "rot", "wire": w, "axis": [x, y, z], "angle": a, "phase": p},
///                 {"type": "swap_alpha", "wires": [a, b], "alpha": t}, ...], ...],
///    "meas":    [{"wire": w, "bloch": [x, y, z], "outcome": +1|-1}, ...]  |  {"state": [...]}}
///
/// "phase" is optional (default 0). Throws UsageError on any schema violation and validates the result.
CircuitSpec circuit_from_json(const nlohmann::json &j);
CircuitSpec parse_circuit_json(std::string_view text);

nlohmann::json circuit_to_json(const CircuitSpec &c);

}  // namespace weakwire

#endif
