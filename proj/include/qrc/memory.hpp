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
#include <span>
#include <vector>

#include "qrc/linalg.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// Delayed-recall benchmark parameters. Defaults: 500 washout inputs, 2000
/// training rows, 1000 test rows, delays 0..50, ridge 1e-12 relative to the
/// mean diagonal of the feature Gram matrix. The reservoir is noise-free, so
/// memory sits partly in feature directions with tiny singular values; a
/// larger ridge (1e-9) already costs ~5% of the total capacity at N = 4.
struct StmTask {
    int tau_max = 50;
    size_t washout = 500;
    size_t train = 2000;
    size_t test = 1000;
    uint64_t input_seed = 0;
    double ridge_lambda = 1e-12;

    void validate() const;
    size_t total_inputs() const {
        return washout + train + test;
    }
};

/// Rows are the post-washout input steps; the last column is the constant bias.
struct Dataset {
    RealMatrix features;  // (train + test) x (N V + 1)
    RealMatrix targets;   // (train + test) x (tau_max + 1), column tau holds s_{k - tau}
    size_t washout = 0;
    size_t train = 0;
    size_t test = 0;
};

Dataset build_dataset(std::span<const ReadoutRecord> records, std::span<const double> inputs, const StmTask &task);

struct TrainedReadout {
    RealVector weights;
    double ridge_lambda = 0;  // absolute penalty actually applied
    double train_mse = 0;
};

/// Ridge regression min |X w - y|^2 + lambda |w|^2 through an SVD of X, with
/// lambda = ridge_lambda * trace(X^T X) / cols. Bias is penalized like any weight.
TrainedReadout train_readout(const RealMatrix &features, const RealVector &targets, double ridge_lambda);
/// Same, one independent weight vector per target column, sharing one SVD.
std::vector<TrainedReadout> train_readouts(const RealMatrix &features, const RealMatrix &targets, double ridge_lambda);

struct Capacity {
    double value = 0;
    bool zero_variance = false;
};

/// Squared Pearson correlation between predictions and targets.
Capacity stm_capacity_tau(std::span<const double> y, std::span<const double> y_hat);

struct StmReport {
    std::vector<double> per_delay;
    double total = 0;
    int tau_max = 0;
    bool zero_variance = false;
    double train_mse_tau0 = 0;
    StmTask task;
    ReservoirConfig config;
};

/// Trains on the training split and scores on the test split, one delay at a time.
StmReport stm_from_records(const ReservoirConfig &cfg, std::span<const ReadoutRecord> records,
                           std::span<const double> inputs, const StmTask &task);
StmReport run_stm_task(const ReservoirConfig &cfg, const StmTask &task);

}  // namespace qrc
