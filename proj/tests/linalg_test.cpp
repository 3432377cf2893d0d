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

#include "qrc/linalg.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qrc/error.hpp"
#include "qrc/rng.hpp"

using namespace qrc;

namespace {

ComplexMatrix random_hermitian(int dim, uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            a(r, c) = Complex(rng.normal(), rng.normal());
        }
    }
    return (a + a.adjoint()) / 2.0;
}

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

ComplexMatrix bell() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1 / std::sqrt(2.0);
    return psi * psi.adjoint();
}

}  // namespace

TEST(QubitSet, bits_and_masks) {
    QubitSet s{1, 3};
    EXPECT_EQ(s.size(), 2);
    EXPECT_TRUE(s.contains(1));
    EXPECT_FALSE(s.contains(2));
    // qubit 1 is the most significant of 3 index bits
    EXPECT_EQ(s.index_mask(3), 0b101u);
    EXPECT_EQ(QubitSet{1}.index_mask(3), 0b100u);
    EXPECT_EQ(s.complement(3), QubitSet{2});
    EXPECT_EQ(QubitSet::from_bits(0b110), (QubitSet{2, 3}));
}

TEST(Linalg, kron_of_paulis) {
    ComplexMatrix xz = kron(pauli_matrix(Pauli::X), pauli_matrix(Pauli::Z));
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 2) = 1;
    expect(1, 3) = -1;
    expect(2, 0) = 1;
    expect(3, 1) = -1;
    EXPECT_LT((xz - expect).norm(), 1e-15);
}

TEST(Linalg, pauli_string_places_qubit_one_first) {
    ComplexMatrix p = pauli_string(3, {{1, Pauli::Z}, {3, Pauli::X}});
    ComplexMatrix expect = kron(kron(pauli_matrix(Pauli::Z), pauli_matrix(Pauli::I)), pauli_matrix(Pauli::X));
    EXPECT_LT((p - expect).norm(), 1e-15);
    EXPECT_THROW(pauli_string(2, {{3, Pauli::X}}), Error);
}

TEST(Linalg, pauli_algebra) {
    ComplexMatrix x = pauli_matrix(Pauli::X), y = pauli_matrix(Pauli::Y), z = pauli_matrix(Pauli::Z);
    EXPECT_LT((x * y - Complex(0, 1) * z).norm(), 1e-15);
    EXPECT_LT((x * x - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(Linalg, hermitian_eig_reconstructs) {
    ComplexMatrix h = random_hermitian(16, 3);
    auto e = hermitian_eig(h);
    ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT((back - h).cwiseAbs().maxCoeff(), 1e-12);
    for (Eigen::Index i = 1; i < e.values.size(); ++i) {
        EXPECT_LE(e.values[i - 1], e.values[i]);
    }
}

TEST(Linalg, eig_rejects_non_hermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1;
    try {
        hermitian_eig(m);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(Linalg, propagator_is_unitary_and_composes) {
    ComplexMatrix h = random_hermitian(8, 11);
    SpectralPropagator prop(h);
    ComplexMatrix u1 = prop.at(0.3), u2 = prop.at(0.7), u = prop.at(1.0);
    EXPECT_LT((u1.adjoint() * u1 - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((u2 * u1 - u).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((prop.at(0.0) - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Linalg, propagator_matches_series_for_small_t) {
    ComplexMatrix h = random_hermitian(4, 5);
    double t = 1e-3;
    ComplexMatrix ih = Complex(0, -t) * h;
    ComplexMatrix series = ComplexMatrix::Identity(4, 4);
    ComplexMatrix term = ComplexMatrix::Identity(4, 4);
    for (int k = 1; k < 12; ++k) {
        term = term * ih / static_cast<double>(k);
        series += term;
    }
    EXPECT_LT((unitary_propagator(h, t) - series).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Linalg, partial_trace_of_bell_is_mixed) {
    ComplexMatrix r = partial_trace(bell(), QubitSet{1});
    EXPECT_LT((r - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(Linalg, partial_trace_of_product_recovers_factor) {
    ComplexMatrix a = random_density(1, 1), b = random_density(2, 2);
    ComplexMatrix ab = kron(a, b);
    EXPECT_LT((partial_trace(ab, QubitSet{1}) - a).norm(), 1e-14);
    EXPECT_LT((partial_trace(ab, QubitSet{2, 3}) - b).norm(), 1e-14);
    // keeping qubit 2 only traces both ends
    EXPECT_LT((partial_trace(ab, QubitSet{2}) - partial_trace(b, QubitSet{1})).norm(), 1e-14);
}

TEST(Linalg, partial_trace_subset_errors) {
    ComplexMatrix rho = random_density(2, 1);
    EXPECT_THROW(partial_trace(rho, QubitSet{3}), Error);
    try {
        partial_trace(rho, QubitSet{});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadSubset);
    }
}

TEST(Linalg, partial_transpose_of_product_is_local_transpose) {
    ComplexMatrix a = random_density(1, 4), b = random_density(1, 5);
    ComplexMatrix pt = partial_transpose(kron(a, b), QubitSet{1});
    EXPECT_LT((pt - kron(a.transpose(), b)).norm(), 1e-15);
    ComplexMatrix full = partial_transpose(partial_transpose(kron(a, b), QubitSet{1}), QubitSet{2});
    EXPECT_LT((full - kron(a, b).transpose()).norm(), 1e-15);
}

TEST(Linalg, bell_partial_transpose_spectrum) {
    RealVector ev = hermitian_eigenvalues(partial_transpose(bell(), QubitSet{2}));
    EXPECT_NEAR(ev[0], -0.5, 1e-14);
    for (int i = 1; i < 4; ++i) {
        EXPECT_NEAR(ev[i], 0.5, 1e-14);
    }
    EXPECT_NEAR(trace_norm(partial_transpose(bell(), QubitSet{1})), 2.0, 1e-13);
}

TEST(Linalg, trace_norm_general_matrix) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 3;  // singular values 3 and 0
    EXPECT_NEAR(trace_norm(m), 3.0, 1e-14);
    EXPECT_NEAR(trace_norm(random_density(3, 9)), 1.0, 1e-13);
}

TEST(Linalg, qubit_count_rejects_bad_shapes) {
    EXPECT_EQ(qubit_count(ComplexMatrix::Identity(8, 8)), 3);
    EXPECT_THROW(qubit_count(ComplexMatrix::Identity(6, 6)), Error);
    EXPECT_THROW(qubit_count(ComplexMatrix::Zero(4, 2)), Error);
}

TEST(Linalg, kron_convention_and_associativity) {
    ComplexMatrix zi = kron(pauli_matrix(Pauli::Z), ComplexMatrix::Identity(2, 2));
    EXPECT_EQ(zi.diagonal().real(), Eigen::Vector4d(1, 1, -1, -1));
    Eigen::VectorXcd ket00 = Eigen::VectorXcd::Zero(4);
    ket00(0) = 1;
    Eigen::VectorXcd out = kron(pauli_matrix(Pauli::X), pauli_matrix(Pauli::X)) * ket00;
    EXPECT_EQ(out(3), Complex(1, 0));
    ComplexMatrix a = random_density(1, 1), b = random_density(1, 2), c = random_density(1, 3);
    EXPECT_LT((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Linalg, sigma_x_eigenvectors) {
    auto e = hermitian_eig(pauli_matrix(Pauli::X));
    EXPECT_NEAR(e.values[0], -1, 1e-15);
    EXPECT_NEAR(e.values[1], 1, 1e-15);
    // |v_minus> is proportional to (|0> - |1>)/sqrt 2
    EXPECT_NEAR(std::abs(e.vectors(0, 0) + e.vectors(1, 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(e.vectors(0, 1) - e.vectors(1, 1)), 0, 1e-15);
}

TEST(Linalg, sigma_z_propagator_is_diagonal_phase) {
    ComplexMatrix u = unitary_propagator(pauli_matrix(Pauli::Z), 0.7);
    EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, -0.7)), 1e-15);
    EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, 0.7)), 1e-15);
    EXPECT_LT(std::abs(u(0, 1)), 1e-15);
    ComplexMatrix big = unitary_propagator(random_hermitian(8, 2), 5.0);
    EXPECT_LT((big * big.adjoint() - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Linalg, ppt_lower_bound_and_exact_involution) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        ComplexMatrix rho = random_density(3, seed);
        QubitSet a = QubitSet::from_bits(1u + seed % 6);
        ComplexMatrix pt = partial_transpose(rho, a);
        EXPECT_GE(trace_norm(pt), 1.0 - 1e-12);
        EXPECT_EQ(partial_transpose(pt, a), rho);
        EXPECT_NEAR(partial_trace(rho, QubitSet{2}).trace().real(), 1.0, 1e-12);
    }
    EXPECT_EQ(trace_norm(ComplexMatrix::Zero(4, 4)), 0.0);
    EXPECT_EQ(pauli_string(3, {}), ComplexMatrix::Identity(8, 8));
}
