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

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qrc/error.hpp"

namespace qrc {

namespace {

// Scatter the low bits of `compact` onto the set bits of `mask`, lowest first.
uint32_t deposit_bits(uint32_t compact, uint32_t mask) {
    uint32_t out = 0;
    for (uint32_t m = mask; m != 0; m &= m - 1) {
        if (compact & 1u) {
            out |= m & (~m + 1);
        }
        compact >>= 1;
    }
    return out;
}

void check_subset(const QubitSet &s, int n, const char *what) {
    if (s.empty()) {
        throw Error(ErrorCode::BadSubset, std::string(what) + ": empty qubit subset");
    }
    uint32_t all = (n >= 32) ? ~0u : ((1u << n) - 1u);
    if ((s.bits() & ~all) != 0) {
        throw Error(ErrorCode::BadSubset, std::string(what) + ": qubit out of range in " + s.to_string());
    }
    if (s.bits() == all) {
        throw Error(ErrorCode::BadSubset, std::string(what) + ": subset must be proper, got " + s.to_string());
    }
}

}  // namespace

QubitSet::QubitSet(std::initializer_list<int> qubits) : QubitSet(std::vector<int>(qubits)) {
}

QubitSet::QubitSet(const std::vector<int> &qubits) {
    for (int q : qubits) {
        if (q < 1 || q > 32) {
            throw Error(ErrorCode::BadSubset, "qubit index " + std::to_string(q) + " outside 1..32");
        }
        bits_ |= 1u << (q - 1);
    }
}

QubitSet QubitSet::from_bits(uint32_t bits) {
    QubitSet s;
    s.bits_ = bits;
    return s;
}

int QubitSet::size() const noexcept {
    return std::popcount(bits_);
}

std::vector<int> QubitSet::qubits() const {
    std::vector<int> out;
    for (int q = 1; q <= 32; ++q) {
        if (contains(q)) {
            out.push_back(q);
        }
    }
    return out;
}

uint32_t QubitSet::index_mask(int n) const {
    uint32_t mask = 0;
    for (int q : qubits()) {
        if (q > n) {
            throw Error(ErrorCode::BadSubset, "qubit " + std::to_string(q) + " exceeds register size " + std::to_string(n));
        }
        mask |= 1u << (n - q);
    }
    return mask;
}

QubitSet QubitSet::complement(int n) const {
    uint32_t all = (1u << n) - 1u;
    return from_bits(all & ~bits_);
}

std::string QubitSet::to_string() const {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int q : qubits()) {
        if (!first) {
            out << ',';
        }
        out << q;
        first = false;
    }
    out << '}';
    return out.str();
}

int qubit_count(const ComplexMatrix &m) {
    auto dim = static_cast<uint64_t>(m.rows());
    if (m.rows() != m.cols() || dim == 0 || !std::has_single_bit(dim)) {
        throw Error(ErrorCode::InvalidArgument,
                    "expected a square 2^n operator, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    return std::countr_zero(dim);
}

double hermiticity_error(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    double worst = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
    double err = hermiticity_error(m);
    if (!(err <= kHermitianTolerance)) {
        throw Error(ErrorCode::NotHermitian, "max |m - m^dagger| = " + std::to_string(err));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix &m) {
    double err = hermiticity_error(m);
    if (!(err <= kHermitianTolerance)) {
        throw Error(ErrorCode::NotHermitian, "max |m - m^dagger| = " + std::to_string(err));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

SpectralPropagator::SpectralPropagator(const ComplexMatrix &hamiltonian) : eig_(hermitian_eig(hamiltonian)) {
}

ComplexMatrix SpectralPropagator::at(double t) const {
    Eigen::VectorXcd phases(eig_.values.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases[k] = std::polar(1.0, -eig_.values[k] * t);
    }
    ComplexMatrix u = eig_.vectors * phases.asDiagonal() * eig_.vectors.adjoint();
    // The eigenvectors are orthonormal only to ~1e-15; over thousands of
    // sub-steps that bias drifts the trace. Newton-Schulz steps toward the
    // unitary polar factor remove it.
    const auto id = ComplexMatrix::Identity(u.rows(), u.cols());
    for (int it = 0; it < 2; ++it) {
        ComplexMatrix defect = id - u.adjoint() * u;
        u += 0.5 * u * defect;
    }
    return u;
}

ComplexMatrix unitary_propagator(const ComplexMatrix &h, double t) {
    return SpectralPropagator(h).at(t);
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, const QubitSet &keep) {
    int n = qubit_count(rho);
    check_subset(keep, n, "partial_trace");
    uint32_t keep_mask = keep.index_mask(n);
    uint32_t traced_mask = ((1u << n) - 1u) & ~keep_mask;
    uint32_t out_dim = 1u << keep.size();
    uint32_t traced_dim = 1u << (n - keep.size());

    ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
    for (uint32_t t = 0; t < traced_dim; ++t) {
        uint32_t t_bits = deposit_bits(t, traced_mask);
        for (uint32_t c = 0; c < out_dim; ++c) {
            uint32_t full_c = deposit_bits(c, keep_mask) | t_bits;
            for (uint32_t r = 0; r < out_dim; ++r) {
                out(r, c) += rho(deposit_bits(r, keep_mask) | t_bits, full_c);
            }
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix &rho, const QubitSet &part_a) {
    int n = qubit_count(rho);
    check_subset(part_a, n, "partial_transpose");
    uint32_t a = part_a.index_mask(n);
    uint32_t dim = 1u << n;
    ComplexMatrix out(dim, dim);
    for (uint32_t c = 0; c < dim; ++c) {
        for (uint32_t r = 0; r < dim; ++r) {
            uint32_t src_r = (r & ~a) | (c & a);
            uint32_t src_c = (c & ~a) | (r & a);
            out(r, c) = rho(src_r, src_c);
        }
    }
    return out;
}

double trace_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    if (m.rows() == m.cols() && hermiticity_error(m) <= kHermitianTolerance) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().sum();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

ComplexMatrix pauli_matrix(Pauli p) {
    ComplexMatrix m(2, 2);
    const Complex i(0, 1);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -i, i, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

ComplexMatrix pauli_string(int n, const std::map<int, Pauli> &spec) {
    if (n < 1 || n > kMaxQubits) {
        throw Error(ErrorCode::InvalidArgument, "pauli_string: n must be in 1.." + std::to_string(kMaxQubits));
    }
    for (const auto &[q, p] : spec) {
        if (q < 1 || q > n) {
            throw Error(ErrorCode::BadSubset, "pauli_string: qubit " + std::to_string(q) + " outside 1.." + std::to_string(n));
        }
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
        auto it = spec.find(q);
        out = kron(out, pauli_matrix(it == spec.end() ? Pauli::I : it->second));
    }
    return out;
}

}  // namespace qrc
