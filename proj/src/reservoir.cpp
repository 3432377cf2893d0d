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

#include "qrc/reservoir.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qrc/error.hpp"
#include "qrc/rng.hpp"

namespace qrc {

void ReservoirConfig::validate() const {
    auto fail = [](const std::string &msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (n_qubits < 2 || n_qubits > kMaxQubits) {
        fail("n_qubits must be in 2.." + std::to_string(kMaxQubits) + ", got " + std::to_string(n_qubits));
    }
    if (!(j0 > 0) || !std::isfinite(j0)) {
        fail("j0 must be positive");
    }
    if (!(delta_t > 0) || !std::isfinite(delta_t)) {
        fail("delta_t must be positive");
    }
    if (v_multiplex < 1) {
        fail("v_multiplex must be >= 1");
    }
    if (!(gamma >= 0) || !std::isfinite(gamma)) {
        fail("gamma must be >= 0");
    }
    if (!std::isfinite(h)) {
        fail("h must be finite");
    }
}

double ReservoirConfig::dephasing_decay() const {
    return std::exp(-2.0 * gamma * delta_t / v_multiplex);
}

double CouplingMatrix::spectral_radius() const {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(entries, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    const long dim = 1L << n_qubits;
    return {ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), n_qubits};
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd &amplitudes) {
    ComplexMatrix m = amplitudes * amplitudes.adjoint();
    m /= m.trace().real();
    int n = qubit_count(m);
    return {std::move(m), n};
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    int n = qubit_count(m);
    DensityMatrix rho(std::move(m), n);
    auto d = rho.diagnostics();
    if (!(d.trace_error <= kTraceTolerance && d.hermiticity_error <= kHermitianTolerance &&
          d.min_eigenvalue >= -kPositivityTolerance)) {
        std::ostringstream msg;
        msg << "not a density matrix: trace error " << d.trace_error << ", hermiticity error " << d.hermiticity_error
            << ", min eigenvalue " << d.min_eigenvalue;
        throw Error(ErrorCode::StateInvariantViolated, msg.str());
    }
    return rho;
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
    int n = qubit_count(m);
    return {std::move(m), n};
}

double DensityMatrix::trace() const {
    return m_.trace().real();
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho
    return m_.cwiseAbs2().sum();
}

double DensityMatrix::sigma_z(int qubit) const {
    if (qubit < 1 || qubit > n_) {
        throw Error(ErrorCode::BadSubset, "sigma_z: qubit " + std::to_string(qubit) + " out of range");
    }
    const int shift = n_ - qubit;
    double acc = 0;
    for (long b = 0; b < m_.rows(); ++b) {
        acc += ((b >> shift) & 1) ? -m_(b, b).real() : m_(b, b).real();
    }
    return acc;
}

StateDiagnostics DensityMatrix::diagnostics() const {
    StateDiagnostics d;
    d.trace_error = std::abs(m_.trace() - Complex(1.0, 0.0));
    d.hermiticity_error = hermiticity_error(m_);
    ComplexMatrix herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues()[0];
    return d;
}

CouplingMatrix sample_coupling(int n, double j0, uint64_t seed) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidConfig, "sample_coupling: n must be >= 2");
    }
    if (!(j0 > 0)) {
        throw Error(ErrorCode::InvalidConfig, "sample_coupling: j0 must be positive");
    }
    constexpr int kMaxAttempts = 64;
    uint64_t stream = seed;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Rng rng(stream);
        CouplingMatrix j{RealMatrix::Zero(n, n)};
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                double v = rng.uniform(-1.0, 1.0);
                j.entries(a, b) = v;
                j.entries(b, a) = v;
            }
        }
        double radius = j.spectral_radius();
        if (radius >= 1e-12) {
            j.entries *= j0 / radius;
            return j;
        }
        stream = derive_seed(seed, {static_cast<uint64_t>(attempt + 1)});
    }
    throw Error(ErrorCode::DegenerateDraw, "sample_coupling: no nondegenerate draw");
}

ComplexMatrix build_hamiltonian(const ReservoirConfig &cfg, const CouplingMatrix &j) {
    const int n = cfg.n_qubits;
    if (j.n_qubits() != n) {
        throw Error(ErrorCode::InvalidConfig, "build_hamiltonian: coupling size does not match n_qubits");
    }
    const long dim = 1L << n;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (long b = 0; b < dim; ++b) {
        // h * sum_i <b|Z_i|b> = h * (n - 2 popcount(b))
        h(b, b) = cfg.h * (n - 2 * std::popcount(static_cast<uint32_t>(b)));
    }
    // sum over ordered pairs i != j: each unordered pair contributes 2 J_ij X_i X_j
    for (int a = 1; a <= n; ++a) {
        for (int c = a + 1; c <= n; ++c) {
            double coeff = j.entries(a - 1, c - 1) + j.entries(c - 1, a - 1);
            if (coeff == 0) {
                continue;
            }
            long flip = (1L << (n - a)) | (1L << (n - c));
            for (long b = 0; b < dim; ++b) {
                h(b ^ flip, b) += coeff;
            }
        }
    }
    return h;
}

DensityMatrix inject_input(const DensityMatrix &rho, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(ErrorCode::InputOutOfRange, "input " + std::to_string(s) + " outside [0, 1]");
    }
    ComplexMatrix rest = partial_trace(rho.matrix(), QubitSet::from_bits(((1u << rho.n_qubits()) - 1u) & ~1u));
    ComplexMatrix psi(2, 2);
    const double off = std::sqrt(s * (1.0 - s));
    psi << 1.0 - s, off, off, s;
    return DensityMatrix::unchecked(kron(psi, rest));
}

void dephase_qubit(ComplexMatrix &rho, int n_qubits, int qubit, double decay) {
    if (qubit < 1 || qubit > n_qubits) {
        throw Error(ErrorCode::BadSubset, "dephase_qubit: qubit out of range");
    }
    const long bit = 1L << (n_qubits - qubit);
    // p rho + (1 - p) Z rho Z leaves entries with equal qubit bits untouched and
    // scales the others by 2p - 1 = decay.
    for (long c = 0; c < rho.cols(); ++c) {
        for (long r = 0; r < rho.rows(); ++r) {
            if (((r ^ c) & bit) != 0) {
                rho(r, c) *= decay;
            }
        }
    }
}

DensityMatrix dephase_step(const DensityMatrix &rho, const ReservoirConfig &cfg) {
    if (!(cfg.gamma >= 0)) {
        throw Error(ErrorCode::InvalidConfig, "gamma must be >= 0");
    }
    if (cfg.gamma == 0) {
        return rho;
    }
    ComplexMatrix m = rho.matrix();
    const double decay = cfg.dephasing_decay();
    for (int q = 1; q <= rho.n_qubits(); ++q) {
        dephase_qubit(m, rho.n_qubits(), q, decay);
    }
    return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix evolve_substep(const DensityMatrix &rho, const ComplexMatrix &u_sub, const ReservoirConfig &cfg) {
    ComplexMatrix m = u_sub * rho.matrix() * u_sub.adjoint();
    return dephase_step(DensityMatrix::unchecked(std::move(m)), cfg);
}

Reservoir::Reservoir(const ReservoirConfig &cfg)
    : cfg_((cfg.validate(), cfg)),
      coupling_(sample_coupling(cfg.n_qubits, cfg.j0, cfg.coupling_seed)),
      state_(DensityMatrix::maximally_mixed(cfg.n_qubits)) {
    hamiltonian_ = build_hamiltonian(cfg_, coupling_);
    u_sub_ = unitary_propagator(hamiltonian_, cfg_.substep_time());
    u_sub_adj_ = u_sub_.adjoint();
    const long dim = 1L << cfg_.n_qubits;
    scratch_.resize(dim, dim);

    const double decay = cfg_.dephasing_decay();
    dephasing_factors_.resize(dim, dim);
    for (long c = 0; c < dim; ++c) {
        for (long r = 0; r < dim; ++r) {
            dephasing_factors_(r, c) = std::pow(decay, std::popcount(static_cast<uint32_t>(r ^ c)));
        }
    }
    sign_z_.resize(dim, cfg_.n_qubits);
    for (long b = 0; b < dim; ++b) {
        for (int q = 1; q <= cfg_.n_qubits; ++q) {
            sign_z_(b, q - 1) = ((b >> (cfg_.n_qubits - q)) & 1) ? -1.0 : 1.0;
        }
    }
}

void Reservoir::set_state(DensityMatrix rho) {
    if (rho.n_qubits() != cfg_.n_qubits) {
        throw Error(ErrorCode::InvalidArgument, "set_state: qubit count mismatch");
    }
    state_ = std::move(rho);
}

void Reservoir::inject(double s) {
    state_ = inject_input(state_, s);
}

void Reservoir::substep() {
    ComplexMatrix &m = state_.mutable_matrix();
    scratch_.noalias() = u_sub_ * m;
    m.noalias() = scratch_ * u_sub_adj_;
    if (cfg_.gamma > 0) {
        m.array() *= dephasing_factors_.array();
    }
}

void Reservoir::read_sigma_z(std::span<double> out) const {
    const ComplexMatrix &m = state_.matrix();
    for (int q = 0; q < cfg_.n_qubits; ++q) {
        double acc = 0;
        for (long b = 0; b < m.rows(); ++b) {
            acc += sign_z_(b, q) * m(b, b).real();
        }
        out[static_cast<size_t>(q)] = acc;
    }
}

void StateStats::merge(const StateDiagnostics &d) {
    ++states_checked;
    max_trace_error = std::max(max_trace_error, d.trace_error);
    max_hermiticity_error = std::max(max_hermiticity_error, d.hermiticity_error);
    min_eigenvalue = std::min(min_eigenvalue, d.min_eigenvalue);
}

namespace {

void check_state(const DensityMatrix &rho, StateStats &stats, size_t step, int substep) {
    auto d = rho.diagnostics();
    stats.merge(d);
    if (!(d.trace_error <= kTraceTolerance && d.hermiticity_error <= kHermitianTolerance &&
          d.min_eigenvalue >= -kPositivityTolerance)) {
        std::ostringstream msg;
        msg << "state at step " << step << " substep " << substep << ": trace error " << d.trace_error
            << ", hermiticity error " << d.hermiticity_error << ", min eigenvalue " << d.min_eigenvalue;
        throw Error(ErrorCode::StateInvariantViolated, msg.str());
    }
}

}  // namespace

SequenceResult run_sequence(const ReservoirConfig &cfg, std::span<const double> inputs, const RunOptions &options) {
    cfg.validate();
    if (inputs.empty()) {
        throw Error(ErrorCode::InvalidArgument, "run_sequence: empty input sequence");
    }
    for (double s : inputs) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw Error(ErrorCode::InputOutOfRange, "input " + std::to_string(s) + " outside [0, 1]");
        }
    }

    Reservoir reservoir(cfg);
    if (options.initial_state) {
        reservoir.set_state(*options.initial_state);
    }

    const int n = cfg.n_qubits;
    const int v = cfg.v_multiplex;
    const double dt_sub = cfg.substep_time();

    SequenceResult result;
    result.records.reserve(inputs.size());
    if (options.record_states) {
        result.states = BlochTrajectory::for_qubits(n);
        size_t window = inputs.size() > options.record_from_step ? inputs.size() - options.record_from_step : 0;
        window = std::min(window, options.record_steps);
        result.states->reserve(window * static_cast<size_t>(v));
    }

    auto sample = [&](size_t k, int j) {
        if (options.validate_states) {
            check_state(reservoir.state(), result.stats, k, j);
        }
        if (options.observer) {
            options.observer(StateEvent{k, j, static_cast<double>(k) * cfg.delta_t + j * dt_sub, reservoir.state()});
        }
    };

    for (size_t k = 0; k < inputs.size(); ++k) {
        reservoir.inject(inputs[k]);
        sample(k, 0);

        ReadoutRecord rec;
        rec.step_index = k;
        rec.input_value = inputs[k];
        rec.features.resize(static_cast<size_t>(n * v));
        const bool record = options.record_states && k >= options.record_from_step &&
                            k - options.record_from_step < options.record_steps;
        for (int j = 1; j <= v; ++j) {
            reservoir.substep();
            reservoir.read_sigma_z(std::span<double>(rec.features).subspan(static_cast<size_t>((j - 1) * n), n));
            sample(k, j);
            if (record) {
                bloch_vector(reservoir.state().matrix(),
                             result.states->append(static_cast<double>(k) * cfg.delta_t + j * dt_sub));
            }
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

}  // namespace qrc
