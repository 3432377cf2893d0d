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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qrc/bloch.hpp"
#include "qrc/linalg.hpp"

namespace qrc {

/// Physical and protocol parameters of one reservoir realization.
///
/// Units: hbar = 1 and energies are in the units of `h`; the input interval
/// `delta_t` is a time in the same system, so h * delta_t is the dimensionless
/// interval (5 in the reference protocol with h = 1).
struct ReservoirConfig {
    int n_qubits = 3;
    double h = 1.0;
    double j0 = 0.3;
    double delta_t = 5.0;
    int v_multiplex = 10;
    double gamma = 0.0;
    uint64_t coupling_seed = 0;

    void validate() const;
    double substep_time() const {
        return delta_t / v_multiplex;
    }
    /// e^{-2 gamma delta_t / V}, the off-diagonal decay per sub-step and qubit.
    double dephasing_decay() const;
    int feature_count() const {
        return n_qubits * v_multiplex;
    }
};

/// Real symmetric coupling J_ij with zero diagonal.
struct CouplingMatrix {
    RealMatrix entries;

    int n_qubits() const {
        return static_cast<int>(entries.rows());
    }
    double spectral_radius() const;
};

struct StateDiagnostics {
    double trace_error = 0;
    double hermiticity_error = 0;
    double min_eigenvalue = 0;
};

/// Reservoir state. Invariants (checked by `diagnostics`, never repaired):
/// Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
   public:
    static DensityMatrix maximally_mixed(int n_qubits);
    static DensityMatrix pure(const Eigen::VectorXcd &amplitudes);
    /// Validates the invariants and throws StateInvariantViolated on failure.
    static DensityMatrix from_matrix(ComplexMatrix m);
    /// Skips validation; for states produced by CPTP maps inside the library.
    static DensityMatrix unchecked(ComplexMatrix m);

    const ComplexMatrix &matrix() const {
        return m_;
    }
    ComplexMatrix &mutable_matrix() {
        return m_;
    }
    int n_qubits() const {
        return n_;
    }
    long dim() const {
        return m_.rows();
    }

    double trace() const;
    double purity() const;
    /// <sigma_z^{(qubit)}>, qubit in 1..n.
    double sigma_z(int qubit) const;
    StateDiagnostics diagnostics() const;

   private:
    DensityMatrix(ComplexMatrix m, int n) : m_(std::move(m)), n_(n) {
    }
    ComplexMatrix m_;
    int n_ = 0;
};

struct ReadoutRecord {
    size_t step_index = 0;
    /// N * V values of <sigma_z^{(i)}>, sub-step major, qubit minor.
    std::vector<double> features;
    double input_value = 0;
};

CouplingMatrix sample_coupling(int n, double j0, uint64_t seed);
ComplexMatrix build_hamiltonian(const ReservoirConfig &cfg, const CouplingMatrix &j);

/// Resets qubit 1 to sqrt(1-s)|0> + sqrt(s)|1>, keeping the marginal of the rest.
DensityMatrix inject_input(const DensityMatrix &rho, double s);

/// Single-qubit dephasing rho -> p rho + (1-p) Z_q rho Z_q with p = (1 + decay) / 2.
void dephase_qubit(ComplexMatrix &rho, int n_qubits, int qubit, double decay);
/// Dephasing of every qubit, applied in the order 1..N.
DensityMatrix dephase_step(const DensityMatrix &rho, const ReservoirConfig &cfg);
DensityMatrix evolve_substep(const DensityMatrix &rho, const ComplexMatrix &u_sub, const ReservoirConfig &cfg);

/// Where in the protocol a state was sampled: substep 0 is the instant right
/// after injection, substeps 1..V follow each unitary + dephasing sub-step.
struct StateEvent {
    size_t step = 0;
    int substep = 0;
    double time = 0;
    const DensityMatrix &state;
};
using StateObserver = std::function<void(const StateEvent &)>;

/// One realization of the reservoir. Owns its state; not shared across threads.
class Reservoir {
   public:
    explicit Reservoir(const ReservoirConfig &cfg);

    const ReservoirConfig &config() const {
        return cfg_;
    }
    const CouplingMatrix &coupling() const {
        return coupling_;
    }
    const ComplexMatrix &hamiltonian() const {
        return hamiltonian_;
    }
    const ComplexMatrix &substep_unitary() const {
        return u_sub_;
    }
    const DensityMatrix &state() const {
        return state_;
    }
    void set_state(DensityMatrix rho);

    void inject(double s);
    /// One unitary sub-step of length delta_t / V followed by dephasing.
    void substep();
    /// Writes <sigma_z^{(i)}> for i = 1..N into `out`.
    void read_sigma_z(std::span<double> out) const;

   private:
    ReservoirConfig cfg_;
    CouplingMatrix coupling_;
    ComplexMatrix hamiltonian_;
    ComplexMatrix u_sub_;
    ComplexMatrix u_sub_adj_;
    ComplexMatrix scratch_;
    ComplexMatrix dephasing_factors_;  // decay^{popcount(r xor c)}
    Eigen::MatrixXd sign_z_;        // (1 - 2 bit) per basis index and qubit
    DensityMatrix state_;
};

struct StateStats {
    size_t states_checked = 0;
    double max_trace_error = 0;
    double max_hermiticity_error = 0;
    double min_eigenvalue = 1;

    void merge(const StateDiagnostics &d);
};

struct RunOptions {
    /// Check every sampled state; violations throw StateInvariantViolated.
    bool validate_states = false;
    /// Capture Bloch vectors after every sub-step of steps >= record_from_step.
    bool record_states = false;
    size_t record_from_step = 0;
    size_t record_steps = SIZE_MAX;
    StateObserver observer;
    std::optional<DensityMatrix> initial_state;
};

struct SequenceResult {
    std::vector<ReadoutRecord> records;
    std::optional<BlochTrajectory> states;
    StateStats stats;
};

inline constexpr double kTraceTolerance = 1e-11;
inline constexpr double kPositivityTolerance = 1e-9;

/// Drives the inject / V x (evolve, dephase, read) cycle over `inputs`,
/// starting from I / 2^N unless an initial state is given.
SequenceResult run_sequence(const ReservoirConfig &cfg, std::span<const double> inputs, const RunOptions &options = {});

}  // namespace qrc
