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

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qrc/linalg.hpp"

namespace qrc {

class DensityMatrix;

/// 4^n - 1, the number of non-identity n-qubit Pauli strings.
size_t bloch_dimension(int n_qubits);

/// Pauli string number `alpha` (1 .. 4^n - 1) in lexicographic order: base-4
/// digits I,X,Y,Z = 0..3 with qubit 1 as the most significant digit.
std::map<int, Pauli> pauli_label(int n_qubits, size_t alpha);

/// Generalized Bloch vectors r_alpha = Tr(rho P_alpha), stored point-major.
class BlochTrajectory {
   public:
    BlochTrajectory() = default;
    explicit BlochTrajectory(size_t dim) : dim_(dim) {
    }
    static BlochTrajectory for_qubits(int n_qubits) {
        BlochTrajectory t(bloch_dimension(n_qubits));
        t.n_qubits_ = n_qubits;
        return t;
    }

    size_t dim() const {
        return dim_;
    }
    size_t size() const {
        return dim_ == 0 ? 0 : values_.size() / dim_;
    }
    int n_qubits() const {
        return n_qubits_;
    }
    std::span<const double> point(size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }
    std::span<double> point(size_t i) {
        return {values_.data() + i * dim_, dim_};
    }
    const std::vector<double> &sample_times() const {
        return times_;
    }
    const std::vector<double> &values() const {
        return values_;
    }

    /// Appends a zeroed point and returns it for filling.
    std::span<double> append(double time);
    void append(std::span<const double> p, double time);
    void reserve(size_t points) {
        values_.reserve(points * dim_);
        times_.reserve(points);
    }

   private:
    size_t dim_ = 0;
    int n_qubits_ = 0;
    std::vector<double> values_;
    std::vector<double> times_;
};

/// Fills `out` (length 4^n - 1) with the Bloch vector of `rho`.
void bloch_vector(const ComplexMatrix &rho, std::span<double> out);
std::vector<double> bloch_vector(const ComplexMatrix &rho);

/// Embeds a sequence of states; parallel over states.
BlochTrajectory bloch_embed(std::span<const DensityMatrix> states);

}  // namespace qrc
