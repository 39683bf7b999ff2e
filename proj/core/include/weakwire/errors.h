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

#ifndef WEAKWIRE_ERRORS_H
#define WEAKWIRE_ERRORS_H

#include <stdexcept>
#include <string>

namespace weakwire {

/// A wire, gate, or cut index outside the circuit.
class RangeError : public std::out_of_range {
   public:
    using std::out_of_range::out_of_range;
};

/// A numeric argument outside the domain of the operation (non-unit Bloch vector, degenerate angle, ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// The post-selected outcome has (numerically) zero transition amplitude, so weak values do not exist.
class ForbiddenOutcomeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An operation was asked to act on the wrong kind of gate.
class GateKindError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input or an unmet precondition of a check.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class DivergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class PairingError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace weakwire

#endif
