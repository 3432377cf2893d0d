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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qrc/csv.hpp"
#include "qrc/dimension.hpp"
#include "qrc/memory.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

inline constexpr int kResultSchemaVersion = 1;

std::string software_version();

struct Measurements {
    bool negativity = true;
    bool dimension = true;
    bool stm = true;
};

/// Declarative sweep: grid over (N, J0, gamma) times an ensemble of random
/// couplings. Every field has a default, so a spec file may be partial.
struct SweepSpec {
    std::string name = "sweep";
    std::vector<int> n_values{3};
    std::vector<double> j0_values{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> gamma_values{0.0};
    int ensemble_size = 20;
    uint64_t base_seed = 1;

    double h = 1.0;
    double delta_t = 5.0;
    int v_multiplex = 10;

    StmTask task;  // input_seed is derived per realization
    Measurements measurements;
    size_t negativity_steps = 300;  // sampled inputs after the washout
    DimensionParams dimension;
    size_t dimension_steps = 1000;  // recorded inputs after the washout
    bool validate_states = true;
    int workers = 1;

    void validate() const;
    size_t job_count() const {
        return n_values.size() * j0_values.size() * gamma_values.size() * static_cast<size_t>(ensemble_size);
    }
};

SweepSpec parse_sweep_spec(const std::string &json_text);
SweepSpec load_sweep_spec(const std::string &path);
std::string sweep_spec_to_json(const SweepSpec &spec);

/// Seeds shared by every grid point of one (N, realization) pair, so J0 and
/// gamma sweeps compare the same coupling matrices and input sequences.
uint64_t coupling_seed_for(uint64_t base_seed, int n_qubits, int realization);
uint64_t input_seed_for(uint64_t base_seed, int n_qubits, int realization);

struct ResultRow {
    int n_qubits = 0;
    double j0 = 0;
    double gamma = 0;
    int realization = 0;
    uint64_t coupling_seed = 0;
    uint64_t input_seed = 0;
    double mean_negativity = NAN;
    double max_post_injection_negativity = NAN;
    double d_c = NAN;
    double d_c_fraction = NAN;
    double c_stm = NAN;
    std::vector<double> c_tau;
    size_t states_checked = 0;
    double max_trace_error = NAN;
    double max_hermiticity_error = NAN;
    double min_eigenvalue = NAN;
    double runtime_ms = 0;
    std::string software_version;
    std::string error;
};

/// Evaluates one (grid point, realization) job. Never throws; failures land in `error`.
ResultRow evaluate_job(const SweepSpec &spec, int n_qubits, double j0, double gamma, int realization);

using ProgressFn = std::function<void(size_t done, size_t total)>;

/// Runs every job on `workers` threads; rows come back in grid order
/// (N, J0, gamma, realization), independent of scheduling.
std::vector<ResultRow> run_sweep(const SweepSpec &spec, int workers = 1, const ProgressFn &progress = {});

/// Column list of the results CSV for a given tau_max.
std::vector<std::string> result_columns(int tau_max);
CsvTable rows_to_table(const std::vector<ResultRow> &rows, int tau_max);
/// FNV-1a over every column except runtime_ms, as 16 hex digits.
std::string determinism_hash(const CsvTable &table);

/// Writes <dir>/results.csv and the <dir>/results.json sidecar. Returns the hash.
std::string write_sweep_outputs(const std::string &dir, const SweepSpec &spec, const std::vector<ResultRow> &rows);

/// Mean, sample standard deviation and count of every metric column per
/// group. Rows carrying an error are counted in `errors`, not averaged.
CsvTable aggregate(const CsvTable &results, const std::vector<std::string> &group_by);
CsvTable aggregate(const std::vector<ResultRow> &rows, int tau_max, const std::vector<std::string> &group_by);

/// Resolves the worker count: explicit request > QRC_WORKERS > spec value.
int resolve_workers(int requested, const SweepSpec &spec);

}  // namespace qrc
