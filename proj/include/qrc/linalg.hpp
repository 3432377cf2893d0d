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

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hard cap on reservoir size; 6 qubits is a 64x64 density matrix.
inline constexpr int kMaxQubits = 6;
inline constexpr double kHermitianTolerance = 1e-10;

/// A set of qubits, numbered 1..n.
///
/// Basis convention used everywhere in this library: qubit 1 is the most
/// significant tensor factor, so for an n-qubit basis index b the state of
/// qubit i is bit (n - i) of b.
class QubitSet {
   public:
    QubitSet() = default;
    QubitSet(std::initializer_list<int> qubits);
    explicit QubitSet(const std::vector<int> &qubits);

    /// Subset whose bits are set in `mask`, bit (i - 1) standing for qubit i.
    static QubitSet from_bits(uint32_t bits);

    bool contains(int qubit) const noexcept {
        return qubit >= 1 && qubit <= 32 && ((bits_ >> (qubit - 1)) & 1u);
    }
    int size() const noexcept;
    bool empty() const noexcept {
        return bits_ == 0;
    }
    std::vector<int> qubits() const;
    uint32_t bits() const noexcept {
        return bits_;
    }

    /// Mask over basis-index bits of an n-qubit register selecting these qubits.
    uint32_t index_mask(int n) const;
    QubitSet complement(int n) const;
    std::string to_string() const;

    bool operator==(const QubitSet &) const = default;

   private:
    uint32_t bits_ = 0;
};

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

struct EigenDecomposition {
    RealVector values;  // ascending
    ComplexMatrix vectors;
};

/// Number of qubits of a 2^n x 2^n operator. Throws InvalidArgument otherwise.
int qubit_count(const ComplexMatrix &m);

/// max_{ij} |m_ij - conj(m_ji)|
double hermiticity_error(const ComplexMatrix &m);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

EigenDecomposition hermitian_eig(const ComplexMatrix &m);
RealVector hermitian_eigenvalues(const ComplexMatrix &m);

/// exp(-i H t) from a single eigendecomposition of H, reusable for any t.
class SpectralPropagator {
   public:
    explicit SpectralPropagator(const ComplexMatrix &hamiltonian);
    ComplexMatrix at(double t) const;
    const EigenDecomposition &spectrum() const {
        return eig_;
    }

   private:
    EigenDecomposition eig_;
};

ComplexMatrix unitary_propagator(const ComplexMatrix &h, double t);

ComplexMatrix partial_trace(const ComplexMatrix &rho, const QubitSet &keep);
ComplexMatrix partial_transpose(const ComplexMatrix &rho, const QubitSet &part_a);

/// Sum of singular values. Hermitian input takes the eigenvalue route.
double trace_norm(const ComplexMatrix &m);

ComplexMatrix pauli_matrix(Pauli p);
ComplexMatrix pauli_string(int n, const std::map<int, Pauli> &spec);

}  // namespace qrc
