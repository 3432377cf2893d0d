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
#include <span>
#include <string>
#include <vector>

#include "qrc/linalg.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// Unordered split of the register into two nonempty parts. `part_a` is the
/// smaller side (the one holding qubit 1 when both sides have equal size).
struct Bipartition {
    QubitSet part_a;
    QubitSet part_b;
    int d = 2;  // min(dim H_A, dim H_B)

    static Bipartition of(int n_qubits, const QubitSet &part_a);
    /// e.g. "1|23"
    std::string label() const;
};

/// All 2^{n-1} - 1 nontrivial bipartitions, ordered by |A| then lexicographically.
std::vector<Bipartition> enumerate_bipartitions(int n);

/// (||rho^{T_A}||_1 - 1) / (d - 1), in [0, 1].
double normalized_negativity(const ComplexMatrix &rho, const Bipartition &bp);
double normalized_negativity(const DensityMatrix &rho, const Bipartition &bp);

struct NegativityTrace {
    std::vector<Bipartition> bipartitions;
    std::vector<double> times;
    std::vector<size_t> steps;
    std::vector<int> substeps;                // 0 = right after injection
    std::vector<std::vector<double>> values;  // [bipartition][instant]
    std::vector<double> mean_over_partitions;
    double time_average = 0;
};

/// Collects N_d for every bipartition from the states of a running sequence.
/// Samples every instant with step index in [from_step, from_step + steps).
class NegativityRecorder {
   public:
    NegativityRecorder(int n_qubits, size_t from_step = 0, size_t steps = SIZE_MAX, bool keep_series = true);

    void observe(const StateEvent &event);
    size_t samples() const {
        return samples_;
    }
    double time_average() const {
        return samples_ == 0 ? 0.0 : sum_ / static_cast<double>(samples_ * trace_.bipartitions.size());
    }
    /// Largest N_d of the {1}|rest split seen right after an injection.
    double max_post_injection_input_qubit() const {
        return max_post_injection_;
    }
    NegativityTrace finish() &&;

   private:
    size_t from_step_;
    size_t steps_;
    bool keep_series_;
    NegativityTrace trace_;
    int input_bp_ = -1;
    size_t samples_ = 0;
    double sum_ = 0;
    double max_post_injection_ = 0;
};

struct NegativityOptions {
    size_t from_step = 0;
    size_t steps = SIZE_MAX;
};

NegativityTrace negativity_trace(const ReservoirConfig &cfg, std::span<const double> inputs,
                                 const NegativityOptions &options = {});

/// Mean N_d of one bipartition at each sub-step position 0..V of an input
/// interval, averaged over all sampled intervals.
std::vector<double> interval_profile(const NegativityTrace &trace, size_t bipartition, int v_multiplex);

/// Time after injection at which a rising profile first reaches half of its
/// maximum, by linear interpolation between samples spaced `dt`.
double time_to_half_max(std::span<const double> profile, double dt);

}  // namespace qrc
