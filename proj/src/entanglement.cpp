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

#include "qrc/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "qrc/error.hpp"

namespace qrc {

Bipartition Bipartition::of(int n_qubits, const QubitSet &part_a) {
    Bipartition bp;
    QubitSet b = part_a.complement(n_qubits);
    if (part_a.empty() || b.empty() || (part_a.bits() >> n_qubits) != 0) {
        throw Error(ErrorCode::BadSubset, "bipartition side must be a nonempty proper subset");
    }
    bool swap = part_a.size() > b.size() || (part_a.size() == b.size() && !part_a.contains(1));
    bp.part_a = swap ? b : part_a;
    bp.part_b = swap ? part_a : b;
    bp.d = 1 << bp.part_a.size();
    return bp;
}

std::string Bipartition::label() const {
    std::string out;
    for (int q : part_a.qubits()) {
        out += std::to_string(q);
    }
    out += '|';
    for (int q : part_b.qubits()) {
        out += std::to_string(q);
    }
    return out;
}

std::vector<Bipartition> enumerate_bipartitions(int n) {
    if (n < 2 || n > kMaxQubits) {
        throw Error(ErrorCode::InvalidArgument, "enumerate_bipartitions: n must be in 2.." + std::to_string(kMaxQubits));
    }
    std::vector<Bipartition> out;
    for (int size = 1; 2 * size <= n; ++size) {
        std::vector<QubitSet> sets;
        for (uint32_t bits = 1; bits < (1u << n) - 1; ++bits) {
            auto s = QubitSet::from_bits(bits);
            if (s.size() != size || (2 * size == n && !s.contains(1))) {
                continue;
            }
            sets.push_back(s);
        }
        std::sort(sets.begin(), sets.end(),
                  [](const QubitSet &x, const QubitSet &y) { return x.qubits() < y.qubits(); });
        for (const auto &s : sets) {
            out.push_back(Bipartition::of(n, s));
        }
    }
    return out;
}

double normalized_negativity(const ComplexMatrix &rho, const Bipartition &bp) {
    double norm = trace_norm(partial_transpose(rho, bp.part_a));
    double value = (norm - 1.0) / (bp.d - 1);
    if (value < 0 && value > -1e-12) {
        value = 0;
    }
    return value;
}

double normalized_negativity(const DensityMatrix &rho, const Bipartition &bp) {
    return normalized_negativity(rho.matrix(), bp);
}

NegativityRecorder::NegativityRecorder(int n_qubits, size_t from_step, size_t steps, bool keep_series)
    : from_step_(from_step), steps_(steps), keep_series_(keep_series) {
    trace_.bipartitions = enumerate_bipartitions(n_qubits);
    trace_.values.resize(trace_.bipartitions.size());
    for (size_t i = 0; i < trace_.bipartitions.size(); ++i) {
        if (trace_.bipartitions[i].part_a == QubitSet{1}) {
            input_bp_ = static_cast<int>(i);
        }
    }
}

void NegativityRecorder::observe(const StateEvent &event) {
    if (event.step < from_step_ || event.step - from_step_ >= steps_) {
        return;
    }
    double mean = 0;
    for (size_t i = 0; i < trace_.bipartitions.size(); ++i) {
        double nd = normalized_negativity(event.state, trace_.bipartitions[i]);
        mean += nd;
        if (keep_series_) {
            trace_.values[i].push_back(nd);
        }
        if (event.substep == 0 && static_cast<int>(i) == input_bp_) {
            max_post_injection_ = std::max(max_post_injection_, nd);
        }
    }
    sum_ += mean;
    ++samples_;
    if (keep_series_) {
        trace_.times.push_back(event.time);
        trace_.steps.push_back(event.step);
        trace_.substeps.push_back(event.substep);
        trace_.mean_over_partitions.push_back(mean / static_cast<double>(trace_.bipartitions.size()));
    }
}

NegativityTrace NegativityRecorder::finish() && {
    trace_.time_average = time_average();
    return std::move(trace_);
}

NegativityTrace negativity_trace(const ReservoirConfig &cfg, std::span<const double> inputs,
                                 const NegativityOptions &options) {
    NegativityRecorder recorder(cfg.n_qubits, options.from_step, options.steps);
    RunOptions run;
    run.observer = [&recorder](const StateEvent &e) { recorder.observe(e); };
    run_sequence(cfg, inputs, run);
    return std::move(recorder).finish();
}

std::vector<double> interval_profile(const NegativityTrace &trace, size_t bipartition, int v_multiplex) {
    if (bipartition >= trace.values.size()) {
        throw Error(ErrorCode::InvalidArgument, "interval_profile: bipartition index out of range");
    }
    std::vector<double> sum(static_cast<size_t>(v_multiplex + 1), 0.0);
    std::vector<size_t> count(sum.size(), 0);
    const auto &series = trace.values[bipartition];
    for (size_t i = 0; i < series.size(); ++i) {
        auto j = static_cast<size_t>(trace.substeps[i]);
        if (j < sum.size()) {
            sum[j] += series[i];
            ++count[j];
        }
    }
    for (size_t j = 0; j < sum.size(); ++j) {
        sum[j] = count[j] ? sum[j] / static_cast<double>(count[j]) : 0.0;
    }
    return sum;
}

double time_to_half_max(std::span<const double> profile, double dt) {
    if (profile.empty()) {
        throw Error(ErrorCode::InvalidArgument, "time_to_half_max: empty profile");
    }
    double half = 0.5 * *std::max_element(profile.begin(), profile.end());
    for (size_t j = 0; j < profile.size(); ++j) {
        if (profile[j] >= half) {
            if (j == 0) {
                return 0.0;
            }
            double frac = (half - profile[j - 1]) / (profile[j] - profile[j - 1]);
            return dt * (static_cast<double>(j - 1) + frac);
        }
    }
    return dt * static_cast<double>(profile.size() - 1);
}

}  // namespace qrc
