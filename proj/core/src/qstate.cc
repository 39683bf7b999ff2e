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

#include "weakwire/qstate.h"

#include <cmath>
#include <string>

#include "weakwire/errors.h"

namespace weakwire {

namespace {

void require_wire(std::size_t wire, std::size_t n_qubits) {
    if (wire >= n_qubits) {
        throw RangeError("wire " + std::to_string(wire) + " out of range for " + std::to_string(n_qubits) + " qubits");
    }
}

// Bit position of a wire inside an amplitude index.
std::size_t wire_shift(std::size_t wire, std::size_t n_qubits) {
    return n_qubits - 1 - wire;
}

}  // namespace

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

StateVector::StateVector(std::size_t n_qubits, Eigen::VectorXcd amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (n_qubits_ == 0 || n_qubits_ >= 8 * sizeof(std::size_t) - 1) {
        throw UsageError("state vector needs at least one qubit");
    }
    if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_qubits_)) {
        throw UsageError(
            "state vector length " + std::to_string(amps_.size()) + " does not match 2^" + std::to_string(n_qubits_));
    }
    if (!amps_.allFinite()) {
        throw DomainError("state vector has non-finite amplitudes");
    }
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_qubits));
    if (index >= static_cast<std::size_t>(amps.size())) {
        throw RangeError("basis index out of range");
    }
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n == 0) {
        throw DomainError("cannot normalize the zero vector");
    }
    return StateVector(n_qubits_, amps_ / n);
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.n_qubits_ != n_qubits_) {
        throw UsageError("inner product of states with different qubit counts");
    }
    return amps_.dot(other.amps_);
}

StateVector StateVector::apply(const Operator &op) const {
    if (static_cast<std::size_t>(op.rows()) != dim() || static_cast<std::size_t>(op.cols()) != dim()) {
        throw UsageError("operator dimension does not match state dimension");
    }
    return StateVector(n_qubits_, op * amps_);
}

StateVector StateVector::operator*(Complex phase) const {
    return StateVector(n_qubits_, amps_ * phase);
}

void StateVector::apply_single_in_place(const Eigen::Matrix2cd &op, std::size_t wire) {
    require_wire(wire, n_qubits_);
    const std::size_t bit = std::size_t{1} << wire_shift(wire, n_qubits_);
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (i & bit) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(i);
        auto i1 = static_cast<Eigen::Index>(i | bit);
        Complex a0 = amps_(i0);
        Complex a1 = amps_(i1);
        amps_(i0) = op(0, 0) * a0 + op(0, 1) * a1;
        amps_(i1) = op(1, 0) * a0 + op(1, 1) * a1;
    }
}

void StateVector::apply_pair_in_place(const Eigen::Matrix4cd &op, std::size_t wire_a, std::size_t wire_b) {
    require_wire(wire_a, n_qubits_);
    require_wire(wire_b, n_qubits_);
    if (wire_a == wire_b) {
        throw UsageError("two-qubit operator needs distinct wires");
    }
    // Local index of op is 2*bit(wire_a) + bit(wire_b).
    const std::size_t bit_a = std::size_t{1} << wire_shift(wire_a, n_qubits_);
    const std::size_t bit_b = std::size_t{1} << wire_shift(wire_b, n_qubits_);
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & bit_a) || (i & bit_b)) {
            continue;
        }
        const Eigen::Index idx[4] = {
            static_cast<Eigen::Index>(i),
            static_cast<Eigen::Index>(i | bit_b),
            static_cast<Eigen::Index>(i | bit_a),
            static_cast<Eigen::Index>(i | bit_a | bit_b),
        };
        Eigen::Vector4cd v(amps_(idx[0]), amps_(idx[1]), amps_(idx[2]), amps_(idx[3]));
        Eigen::Vector4cd r = op * v;
        for (int k = 0; k < 4; ++k) {
            amps_(idx[k]) = r(k);
        }
    }
}

const Eigen::Matrix2cd &pauli_x() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    return m;
}

const Eigen::Matrix2cd &pauli_y() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}

const Eigen::Matrix2cd &pauli_z() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    return m;
}

const Eigen::Matrix2cd &pauli(int axis) {
    switch (axis) {
        case 0:
            return pauli_x();
        case 1:
            return pauli_y();
        case 2:
            return pauli_z();
        default:
            throw RangeError("Pauli axis must be 0, 1 or 2");
    }
}

Operator identity(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return Operator::Identity(d, d);
}

Operator tensor(const Operator &a, const Operator &b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

Operator tensor(std::span<const Operator> ops) {
    Operator out = Operator::Identity(1, 1);
    for (const auto &op : ops) {
        out = tensor(out, op);
    }
    return out;
}

Operator embed_single(const Operator &op, std::size_t wire, std::size_t n_qubits) {
    require_wire(wire, n_qubits);
    if (op.rows() != 2 || op.cols() != 2) {
        throw UsageError("embed_single expects a 2x2 operator");
    }
    Operator left = identity(std::size_t{1} << wire);
    Operator right = identity(std::size_t{1} << (n_qubits - 1 - wire));
    return tensor(tensor(left, op), right);
}

StateVector bloch_to_state(const BlochVector &n) {
    if (!(std::abs(n.norm() - 1.0) <= 1e-9)) {
        throw DomainError("Bloch vector must have unit norm");
    }
    // |psi> = (cos(theta/2), e^{i phi} sin(theta/2)); cos(theta/2) = sqrt((1+z)/2).
    double c = std::sqrt(std::max(0.0, (1.0 + n.z) / 2.0));
    Complex s;
    if (c > 1e-8) {
        s = Complex(n.x, n.y) / (2.0 * c);
    } else {
        // South pole: the |1> amplitude carries the whole state.
        double r = std::hypot(n.x, n.y);
        s = r > 0 ? Complex(n.x, n.y) / r * std::sqrt(std::max(0.0, (1.0 - n.z) / 2.0)) : Complex(1.0, 0.0);
    }
    Eigen::VectorXcd amps(2);
    amps << c, s;
    return StateVector(1, amps).normalized();
}

Eigen::Matrix2cd reduced_density(const StateVector &psi, std::size_t wire) {
    require_wire(wire, psi.n_qubits());
    const std::size_t bit = std::size_t{1} << wire_shift(wire, psi.n_qubits());
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    const auto &a = psi.amps();
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i & bit) {
            continue;
        }
        Complex a0 = a(static_cast<Eigen::Index>(i));
        Complex a1 = a(static_cast<Eigen::Index>(i | bit));
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    return rho;
}

BlochVector reduced_bloch(const StateVector &psi, std::size_t wire) {
    Eigen::Matrix2cd rho = reduced_density(psi, wire);
    double tr = rho.trace().real();
    return {2 * rho(1, 0).real() / tr, 2 * rho(1, 0).imag() / tr, (rho(0, 0).real() - rho(1, 1).real()) / tr};
}

double reduced_purity(const StateVector &psi, std::size_t wire) {
    Eigen::Matrix2cd rho = reduced_density(psi, wire);
    return rho.cwiseAbs2().sum();
}

StateVector product_state(std::span<const StateVector> factors) {
    if (factors.empty()) {
        throw UsageError("product_state needs at least one factor");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Ones(1);
    std::size_t n = 0;
    for (const auto &f : factors) {
        Eigen::VectorXcd next(amps.size() * f.amps().size());
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            next.segment(i * f.amps().size(), f.amps().size()) = amps(i) * f.amps();
        }
        amps = std::move(next);
        n += f.n_qubits();
    }
    return StateVector(n, std::move(amps));
}

}  // namespace weakwire
