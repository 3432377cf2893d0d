// Copyright 2026 The qrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrc/bloch.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qrc/reference.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/rng.hpp"

using namespace qrc;

namespace {

ComplexMatrix random_density(int n, uint64_t seed) {
    Rng rng(seed);
    int dim = 1 << n;
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            a(r, c) = Complex(rng.normal(), rng.normal());
        }
    }
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

TEST(Bloch, dimension_and_labels) {
    EXPECT_EQ(bloch_dimension(1), 3u);
    EXPECT_EQ(bloch_dimension(3), 63u);
    EXPECT_EQ(bloch_dimension(4), 255u);
    auto first = pauli_label(2, 1);  // I X
    EXPECT_EQ(first.size(), 1u);
    EXPECT_EQ(first.at(2), Pauli::X);
    auto last = pauli_label(2, 15);  // Z Z
    EXPECT_EQ(last.at(1), Pauli::Z);
    EXPECT_EQ(last.at(2), Pauli::Z);
    EXPECT_EQ(pauli_label(2, 4).at(1), Pauli::X);  // X I
}

TEST(Bloch, mixed_state_is_origin) {
    for (int n = 1; n <= 4; ++n) {
        auto r = bloch_vector(DensityMatrix::maximally_mixed(std::max(n, 1)).matrix());
        for (double v : r) {
            EXPECT_EQ(v, 0.0);
        }
    }
}

TEST(Bloch, ground_state_of_one_qubit) {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 1;
    auto r = bloch_vector(rho);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0], 0.0);
    EXPECT_EQ(r[1], 0.0);
    EXPECT_EQ(r[2], 1.0);
}

TEST(Bloch, purity_identity) {
    for (int n = 1; n <= 3; ++n) {
        ComplexMatrix rho = random_density(n, static_cast<uint64_t>(n));
        auto r = bloch_vector(rho);
        double norm2 = 0;
        for (double v : r) {
            norm2 += v * v;
        }
        double purity = (rho * rho).trace().real();
        EXPECT_NEAR(purity, (1 + norm2) / std::pow(2.0, n), 1e-14);
    }
}

TEST(Bloch, fast_kernel_matches_dense_traces) {
    for (int n = 1; n <= 4; ++n) {
        for (uint64_t seed = 0; seed < 3; ++seed) {
            ComplexMatrix rho = random_density(n, 100 + seed);
            auto fast = bloch_vector(rho);
            auto slow = reference::bloch_vector(rho);
            ASSERT_EQ(fast.size(), slow.size());
            for (size_t i = 0; i < fast.size(); ++i) {
                EXPECT_NEAR(fast[i], slow[i], 1e-14);
            }
        }
    }
}

TEST(Bloch, reconstruction_round_trip) {
    ComplexMatrix rho = random_density(3, 7);
    auto r = bloch_vector(rho);
    ComplexMatrix back = ComplexMatrix::Identity(8, 8);
    for (size_t a = 1; a <= r.size(); ++a) {
        back += r[a - 1] * pauli_string(3, pauli_label(3, a));
    }
    back /= 8.0;
    EXPECT_LT((back - rho).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Bloch, embed_keeps_order) {
    std::vector<DensityMatrix> states;
    for (uint64_t s = 0; s < 40; ++s) {
        states.push_back(DensityMatrix::from_matrix(random_density(2, s)));
    }
    auto traj = bloch_embed(states);
    ASSERT_EQ(traj.size(), 40u);
    ASSERT_EQ(traj.dim(), 15u);
    for (size_t i = 0; i < states.size(); ++i) {
        auto r = bloch_vector(states[i].matrix());
        for (size_t a = 0; a < r.size(); ++a) {
            EXPECT_EQ(traj.point(i)[a], r[a]);
        }
    }
}

TEST(Bloch, trajectory_entries_bounded) {
    ReservoirConfig cfg;
    cfg.j0 = 0.4;
    RunOptions opt;
    opt.record_states = true;
    opt.record_from_step = 20;
    auto res = run_sequence(cfg, uniform_inputs(1, 40), opt);
    ASSERT_TRUE(res.states.has_value());
    EXPECT_EQ(res.states->size(), 20u * 10u);
    for (double v : res.states->values()) {
        EXPECT_LE(std::abs(v), 1.0 + 1e-12);
    }
}
