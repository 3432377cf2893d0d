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

#include <bit>

#include "qrc/error.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

size_t bloch_dimension(int n_qubits) {
    return (size_t{1} << (2 * n_qubits)) - 1;
}

std::map<int, Pauli> pauli_label(int n_qubits, size_t alpha) {
    if (alpha == 0 || alpha > bloch_dimension(n_qubits)) {
        throw Error(ErrorCode::InvalidArgument, "pauli_label: index out of range");
    }
    std::map<int, Pauli> out;
    for (int q = n_qubits; q >= 1; --q) {
        auto digit = static_cast<Pauli>(alpha & 3u);
        if (digit != Pauli::I) {
            out[q] = digit;
        }
        alpha >>= 2;
    }
    return out;
}

std::span<double> BlochTrajectory::append(double time) {
    values_.resize(values_.size() + dim_, 0.0);
    times_.push_back(time);
    return point(size() - 1);
}

void BlochTrajectory::append(std::span<const double> p, double time) {
    if (p.size() != dim_) {
        throw Error(ErrorCode::InvalidArgument, "BlochTrajectory::append: dimension mismatch");
    }
    values_.insert(values_.end(), p.begin(), p.end());
    times_.push_back(time);
}

void bloch_vector(const ComplexMatrix &rho, std::span<double> out) {
    const int n = qubit_count(rho);
    const uint32_t dim = 1u << n;
    if (out.size() != bloch_dimension(n)) {
        throw Error(ErrorCode::InvalidArgument, "bloch_vector: output length mismatch");
    }
    // P = i^{#Y} X^x Z^z, so P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x> and
    // Tr(rho P) = i^{#Y} sum_b (-1)^{|b & z|} rho(b, b ^ x).
    for (size_t alpha = 1; alpha <= out.size(); ++alpha) {
        uint32_t x = 0, z = 0;
        int ny = 0;
        size_t digits = alpha;
        for (int bit = 0; bit < n; ++bit) {
            auto d = static_cast<Pauli>(digits & 3u);
            digits >>= 2;
            if (d == Pauli::X || d == Pauli::Y) {
                x |= 1u << bit;
            }
            if (d == Pauli::Z || d == Pauli::Y) {
                z |= 1u << bit;
            }
            ny += d == Pauli::Y;
        }
        Complex acc = 0;
        for (uint32_t b = 0; b < dim; ++b) {
            Complex term = rho(b, b ^ x);
            acc += (std::popcount(b & z) & 1) ? -term : term;
        }
        // multiply by i^{ny} and keep the real part
        double value;
        switch (ny & 3) {
            case 0:
                value = acc.real();
                break;
            case 1:
                value = -acc.imag();
                break;
            case 2:
                value = -acc.real();
                break;
            default:
                value = acc.imag();
                break;
        }
        out[alpha - 1] = value;
    }
}

std::vector<double> bloch_vector(const ComplexMatrix &rho) {
    std::vector<double> out(bloch_dimension(qubit_count(rho)));
    bloch_vector(rho, out);
    return out;
}

BlochTrajectory bloch_embed(std::span<const DensityMatrix> states) {
    if (states.empty()) {
        return {};
    }
    const int n = states.front().n_qubits();
    for (const auto &s : states) {
        if (s.n_qubits() != n) {
            throw Error(ErrorCode::InvalidArgument, "bloch_embed: states have different qubit counts");
        }
    }
    BlochTrajectory traj = BlochTrajectory::for_qubits(n);
    traj.reserve(states.size());
    for (size_t i = 0; i < states.size(); ++i) {
        traj.append(static_cast<double>(i));
    }
    const auto count = static_cast<long>(states.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        bloch_vector(states[i].matrix(), traj.point(static_cast<size_t>(i)));
    }
    return traj;
}

}  // namespace qrc
