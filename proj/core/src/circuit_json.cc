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

#include "weakwire/circuit_json.h"

#include <optional>
#include <string>

#include "weakwire/errors.h"

namespace weakwire {

namespace {

using nlohmann::json;

const json &field(const json &obj, const char *key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw UsageError(std::string("missing field \"") + key + "\"");
    }
    return obj.at(key);
}

double number(const json &v, const char *what) {
    if (!v.is_number()) {
        throw UsageError(std::string(what) + " must be a number");
    }
    return v.get<double>();
}

std::size_t index(const json &v, const char *what) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw UsageError(std::string(what) + " must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

BlochVector bloch(const json &v, const char *what) {
    if (!v.is_array() || v.size() != 3) {
        throw UsageError(std::string(what) + " must be a 3-element array");
    }
    return {number(v[0], what), number(v[1], what), number(v[2], what)};
}

StateVector state(const json &v, std::size_t n_qubits) {
    if (!v.is_array()) {
        throw UsageError("\"state\" must be an array of [re, im] pairs");
    }
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const json &a = v[i];
        if (!a.is_array() || a.size() != 2) {
            throw UsageError("state amplitudes must be [re, im] pairs");
        }
        amps(static_cast<Eigen::Index>(i)) = Complex(number(a[0], "amplitude"), number(a[1], "amplitude"));
    }
    return StateVector(n_qubits, std::move(amps));
}

// Per-wire lists may appear in any wire order; every wire must appear exactly once.
template <class T, class F>
std::vector<T> per_wire(const json &list, std::size_t n_qubits, const char *what, F &&parse) {
    std::vector<std::optional<T>> slots(n_qubits);
    for (const json &entry : list) {
        std::size_t w = index(field(entry, "wire"), "wire");
        if (w >= n_qubits) {
            throw UsageError(std::string(what) + " references missing wire " + std::to_string(w));
        }
        if (slots[w]) {
            throw UsageError(std::string(what) + " lists wire " + std::to_string(w) + " twice");
        }
        slots[w] = parse(entry);
    }
    std::vector<T> out;
    for (std::size_t w = 0; w < n_qubits; ++w) {
        if (!slots[w]) {
            throw UsageError(std::string(what) + " is missing wire " + std::to_string(w));
        }
        out.push_back(*slots[w]);
    }
    return out;
}

GateOp gate(const json &g) {
    const json &type = field(g, "type");
    if (type == "rot") {
        RotationGate r;
        r.wire = index(field(g, "wire"), "wire");
        r.axis = bloch(field(g, "axis"), "axis");
        r.angle = number(field(g, "angle"), "angle");
        r.phase = g.contains("phase") ? number(g.at("phase"), "phase") : 0.0;
        return r;
    }
    if (type == "swap_alpha") {
        const json &wires = field(g, "wires");
        if (!wires.is_array() || wires.size() != 2) {
            throw UsageError("swap_alpha \"wires\" must have two entries");
        }
        SwapAlphaGate s;
        s.wire_a = index(wires[0], "wire");
        s.wire_b = index(wires[1], "wire");
        s.alpha = number(field(g, "alpha"), "alpha");
        return s;
    }
    throw UsageError("unknown gate type " + type.dump());
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json state_json(const StateVector &s) {
    json amps = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        amps.push_back(complex_json(s[i]));
    }
    return json{{"state", amps}};
}

json bloch_json(const BlochVector &b) {
    return json::array({b.x, b.y, b.z});
}

}  // namespace

CircuitSpec circuit_from_json(const json &j) {
    if (!j.is_object()) {
        throw UsageError("circuit JSON must be an object");
    }
    CircuitSpec c;
    c.n_qubits = index(field(j, "n_qubits"), "n_qubits");
    if (c.n_qubits == 0 || c.n_qubits > kDefaultMaxQubits) {
        throw UsageError("n_qubits must be between 1 and " + std::to_string(kDefaultMaxQubits));
    }

    const json &prep = field(j, "prep");
    if (prep.is_object()) {
        c.prep = state(field(prep, "state"), c.n_qubits);
    } else if (prep.is_array()) {
        c.prep = per_wire<BlochVector>(prep, c.n_qubits, "prep",
                                       [](const json &e) { return bloch(field(e, "bloch"), "bloch"); });
    } else {
        throw UsageError("\"prep\" must be a list or a {\"state\": ...} object");
    }

    if (j.contains("moments")) {
        const json &moments = j.at("moments");
        if (!moments.is_array()) {
            throw UsageError("\"moments\" must be a list of lists");
        }
        for (const json &m : moments) {
            if (!m.is_array()) {
                throw UsageError("each moment must be a list of gates");
            }
            Moment moment;
            for (const json &g : m) {
                moment.push_back(gate(g));
            }
            c.moments.push_back(std::move(moment));
        }
    }

    const json &meas = field(j, "meas");
    if (meas.is_object()) {
        c.meas = state(field(meas, "state"), c.n_qubits);
    } else if (meas.is_array()) {
        c.meas = per_wire<MeasuredWire>(meas, c.n_qubits, "meas", [](const json &e) {
            const json &o = field(e, "outcome");
            if (!o.is_number_integer() || (o.get<int>() != 1 && o.get<int>() != -1)) {
                throw UsageError("\"outcome\" must be +1 or -1");
            }
            return MeasuredWire{bloch(field(e, "bloch"), "bloch"), o.get<int>()};
        });
    } else {
        throw UsageError("\"meas\" must be a list or a {\"state\": ...} object");
    }

    validate(c);
    return c;
}

CircuitSpec parse_circuit_json(std::string_view text) {
    json j = json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded()) {
        throw UsageError("malformed circuit JSON");
    }
    return circuit_from_json(j);
}

json circuit_to_json(const CircuitSpec &c) {
    json j;
    j["n_qubits"] = c.n_qubits;
    if (const auto *s = std::get_if<StateVector>(&c.prep)) {
        j["prep"] = state_json(*s);
    } else {
        json list = json::array();
        const auto &p = std::get<std::vector<BlochVector>>(c.prep);
        for (std::size_t w = 0; w < p.size(); ++w) {
            list.push_back({{"wire", w}, {"bloch", bloch_json(p[w])}});
        }
        j["prep"] = list;
    }
    json moments = json::array();
    for (const auto &m : c.moments) {
        json gates = json::array();
        for (const auto &g : m) {
            if (const auto *r = std::get_if<RotationGate>(&g)) {
                gates.push_back({{"type", "rot"},
                                 {"wire", r->wire},
                                 {"axis", bloch_json(r->axis)},
                                 {"angle", r->angle},
                                 {"phase", r->phase}});
            } else {
                const auto &s = std::get<SwapAlphaGate>(g);
                gates.push_back({{"type", "swap_alpha"}, {"wires", {s.wire_a, s.wire_b}}, {"alpha", s.alpha}});
            }
        }
        moments.push_back(gates);
    }
    j["moments"] = moments;
    if (const auto *s = std::get_if<StateVector>(&c.meas)) {
        j["meas"] = state_json(*s);
    } else {
        json list = json::array();
        const auto &m = std::get<std::vector<MeasuredWire>>(c.meas);
        for (std::size_t w = 0; w < m.size(); ++w) {
            list.push_back({{"wire", w}, {"bloch", bloch_json(m[w].axis)}, {"outcome", m[w].outcome}});
        }
        j["meas"] = list;
    }
    return j;
}

}  // namespace weakwire
