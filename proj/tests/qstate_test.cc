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

#include <gtest/gtest.h>

#include "oracles.h"
#include "weakwire/errors.h"

using namespace weakwire;

TEST(pauli, algebra) {
    const Complex i(0, 1);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    for (int a = 0; a < 3; ++a) {
        EXPECT_TRUE(pauli(a).isApprox(oracle::sigma(a)));
        EXPECT_TRUE((pauli(a) * pauli(a)).isApprox(id));
    }
    EXPECT_TRUE((pauli_x() * pauli_y()).isApprox(i * pauli_z()));
    EXPECT_TRUE((pauli_y() * pauli_z()).isApprox(i * pauli_x()));
    EXPECT_THROW(pauli(3), RangeError);
}

TEST(state_vector, construction_checks) {
    EXPECT_THROW(StateVector(2, Eigen::VectorXcd::Zero(3)), UsageError);
    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(2);
    bad[0] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(StateVector(1, bad), DomainError);
    EXPECT_THROW(StateVector::basis(2, 4), RangeError);
    EXPECT_THROW(StateVector(1, Eigen::VectorXcd::Zero(2)).normalized(), DomainError);

    StateVector b = StateVector::basis(3, 5);
    EXPECT_EQ(b.dim(), 8u);
    EXPECT_EQ(b[5], Complex(1));
    EXPECT_NEAR(b.norm(), 1, 1e-15);
}

TEST(state_vector, inner_conjugates_left) {
    oracle::Rng rng(1);
    StateVector a = rng.state(2);
    StateVector b = rng.state(2);
    EXPECT_NEAR(std::abs(a.inner(b) - a.amps().dot(b.amps())), 0, 1e-14);
    EXPECT_NEAR(std::abs(a.inner(a) - 1.0), 0, 1e-14);
}

TEST(state_vector, in_place_kernels_match_dense) {
    oracle::Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        StateVector psi = rng.state(n);
        const std::size_t w = static_cast<std::size_t>(rng.uniform(0, n - 1e-9));
        Eigen::Matrix2cd u = oracle::rotation_expm(rng.unit(), rng.uniform(-3, 3), rng.uniform(-3, 3));
        StateVector single = psi;
        single.apply_single_in_place(u, w);
        EXPECT_LT((single.amps() - oracle::dense_single(u, w, n) * psi.amps()).norm(), 1e-13);

        std::size_t a = static_cast<std::size_t>(rng.uniform(0, n - 1e-9));
        std::size_t b = (a + 1 + static_cast<std::size_t>(rng.uniform(0, n - 1 - 1e-9))) % n;
        Eigen::Matrix4cd g = Eigen::Matrix4cd::Random();
        StateVector pair = psi;
        pair.apply_pair_in_place(g, a, b);
        EXPECT_LT((pair.amps() - oracle::dense_pair(g, a, b, n) * psi.amps()).norm(), 1e-12);
    }
    StateVector psi = rng.state(2);
    EXPECT_THROW(psi.apply_pair_in_place(Eigen::Matrix4cd::Identity(), 1, 1), UsageError);
    EXPECT_THROW(psi.apply_single_in_place(Eigen::Matrix2cd::Identity(), 2), RangeError);
}

TEST(tensor, matches_kron_and_embedding) {
    oracle::Rng rng(3);
    Operator a = Eigen::Matrix2cd::Random();
    Operator b = Eigen::Matrix4cd::Random();
    EXPECT_TRUE(tensor(a, b).isApprox(oracle::kron(a, b)));
    std::vector<Operator> ops{pauli_x(), pauli_y(), pauli_z()};
    EXPECT_TRUE(tensor(ops).isApprox(oracle::kron(oracle::kron(pauli_x(), pauli_y()), pauli_z())));
    for (std::size_t w = 0; w < 3; ++w) {
        EXPECT_TRUE(embed_single(pauli_y(), w, 3).isApprox(oracle::dense_single(pauli_y(), w, 3)));
    }
    EXPECT_THROW(embed_single(identity(4), 0, 3), UsageError);
    EXPECT_EQ(identity(4), Operator(Eigen::Matrix4cd::Identity()));
}

TEST(bloch, state_round_trip) {
    oracle::Rng rng(4);
    for (int k = 0; k < 50; ++k) {
        BlochVector n = rng.unit();
        StateVector s = bloch_to_state(n);
        EXPECT_NEAR(s.norm(), 1, 1e-14);
        EXPECT_GE(s[0].real(), 0);
        EXPECT_NEAR(s[0].imag(), 0, 1e-15);
        BlochVector r = reduced_bloch(s, 0);
        EXPECT_NEAR(r.x, n.x, 1e-12);
        EXPECT_NEAR(r.y, n.y, 1e-12);
        EXPECT_NEAR(r.z, n.z, 1e-12);
        // +1 eigenvector of n.sigma.
        Eigen::Matrix2cd ns = n.x * pauli_x() + n.y * pauli_y() + n.z * pauli_z();
        EXPECT_LT((ns * s.amps() - s.amps()).norm(), 1e-12);
    }
}

TEST(bloch, poles_and_axes) {
    StateVector up = bloch_to_state({0, 0, 1});
    EXPECT_EQ(up[0], Complex(1));
    StateVector down = bloch_to_state({0, 0, -1});
    EXPECT_NEAR(std::abs(down[1]), 1, 1e-15);
    StateVector plus_y = bloch_to_state({0, 1, 0});
    EXPECT_NEAR(std::abs(plus_y[1] - Complex(0, 1) * plus_y[0]), 0, 1e-15);
    EXPECT_THROW(bloch_to_state({1, 1, 0}), DomainError);
    EXPECT_NO_THROW(bloch_to_state({1 + 5e-10, 0, 0}));
}

TEST(reduced, density_matches_partial_trace) {
    oracle::Rng rng(5);
    for (std::size_t n = 1; n <= 4; ++n) {
        StateVector psi = rng.state(n);
        for (std::size_t w = 0; w < n; ++w) {
            Eigen::Matrix2cd rho = reduced_density(psi, w);
            EXPECT_LT((rho - oracle::partial_trace(psi.amps(), w, n)).norm(), 1e-13);
            EXPECT_NEAR(rho.trace().real(), 1, 1e-13);
            EXPECT_NEAR(reduced_purity(psi, w), (rho * rho).trace().real(), 1e-13);
            BlochVector r = reduced_bloch(psi, w);
            EXPECT_NEAR(r.x, (rho * pauli_x()).trace().real(), 1e-13);
            EXPECT_NEAR(r.y, (rho * pauli_y()).trace().real(), 1e-13);
            EXPECT_NEAR(r.z, (rho * pauli_z()).trace().real(), 1e-13);
        }
    }
}

TEST(reduced, product_states_are_pure) {
    oracle::Rng rng(6);
    std::vector<BlochVector> dirs{rng.unit(), rng.unit(), rng.unit()};
    std::vector<StateVector> factors;
    for (const auto &d : dirs) {
        factors.push_back(bloch_to_state(d));
    }
    StateVector psi = product_state(factors);
    for (std::size_t w = 0; w < 3; ++w) {
        EXPECT_NEAR(reduced_purity(psi, w), 1, 1e-13);
        EXPECT_NEAR(reduced_bloch(psi, w).x, dirs[w].x, 1e-12);
    }
    // Bell state: maximally mixed marginals.
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell[0] = bell[3] = 1 / std::sqrt(2.0);
    EXPECT_NEAR(reduced_purity(StateVector(2, bell), 1), 0.5, 1e-14);
    EXPECT_THROW(product_state({}), UsageError);
}
