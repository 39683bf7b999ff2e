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

#ifndef WEAKWIRE_QSTATE_H
#define WEAKWIRE_QSTATE_H

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "weakwire/vec3.h"

namespace weakwire {

/// Dense complex matrix. Gate operators are unitary; observables are Hermitian.
using Operator = Eigen::MatrixXcd;

/// Upper bound on the qubit count accepted by circuit validation unless overridden.
inline constexpr std::size_t kDefaultMaxQubits = 12;

/// A real point on (or inside) the Bloch sphere.
struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm() const;
    BlochVector operator-() const {
        return {-x, -y, -z};
    }
    BlochVector operator*(double s) const {
        return {x * s, y * s, z * s};
    }
    Eigen::Vector3d to_eigen() const {
        return {x, y, z};
    }
    CVec3 to_complex() const {
        return CVec3(x, y, z);
    }
    bool operator==(const BlochVector &) const = default;
};

/// Pure state of `n_qubits` qubits.
///
/// Amplitude index bit (n_qubits - 1 - w) holds the value of wire w, so wire 0 is the
/// most-significant bit: for two wires the basis order is |00>, |01>, |10>, |11> with
/// the left symbol belonging to wire 0.
class StateVector {
   public:
    StateVector(std::size_t n_qubits, Eigen::VectorXcd amps);

    static StateVector basis(std::size_t n_qubits, std::size_t index);

    std::size_t n_qubits() const {
        return n_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(amps_.size());
    }
    const Eigen::VectorXcd &amps() const {
        return amps_;
    }
    Complex operator[](std::size_t i) const {
        return amps_(static_cast<Eigen::Index>(i));
    }

    double norm() const {
        return amps_.norm();
    }
    StateVector normalized() const;

    /// <this|other>, conjugating this.
    Complex inner(const StateVector &other) const;

    StateVector apply(const Operator &op) const;
    StateVector operator*(Complex phase) const;

    /// Mutating kernels used by circuit evolution; they avoid building 2^N x 2^N matrices.
    void apply_single_in_place(const Eigen::Matrix2cd &op, std::size_t wire);
    void apply_pair_in_place(const Eigen::Matrix4cd &op, std::size_t wire_a, std::size_t wire_b);

   private:
    std::size_t n_qubits_;
    Eigen::VectorXcd amps_;
};

const Eigen::Matrix2cd &pauli_x();
const Eigen::Matrix2cd &pauli_y();
const Eigen::Matrix2cd &pauli_z();
/// Pauli matrix by axis index 0, 1, 2 = x, y, z.
const Eigen::Matrix2cd &pauli(int axis);

Operator identity(std::size_t dim);

/// Kronecker product of the operands, left to right.
Operator tensor(std::span<const Operator> ops);
Operator tensor(const Operator &a, const Operator &b);

/// I (x) ... (x) op (x) ... (x) I with `op` at position `wire`.
Operator embed_single(const Operator &op, std::size_t wire, std::size_t n_qubits);

/// Single-qubit state whose projector is (I + n.sigma)/2, with a real non-negative |0> amplitude.
StateVector bloch_to_state(const BlochVector &n);

/// Expectation values (<sigma_x>, <sigma_y>, <sigma_z>) of the reduced state of `wire`.
BlochVector reduced_bloch(const StateVector &psi, std::size_t wire);

/// Single-wire reduced density operator, tracing out every other wire.
Eigen::Matrix2cd reduced_density(const StateVector &psi, std::size_t wire);

/// Tr(rho_wire^2) of the single-wire reduced density operator.
double reduced_purity(const StateVector &psi, std::size_t wire);

StateVector product_state(std::span<const StateVector> factors);

}  // namespace weakwire

#endif
