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

#include "qrc/memory.hpp"

#include <algorithm>
#include <cmath>

#include "qrc/error.hpp"
#include "qrc/rng.hpp"

namespace qrc {

void StmTask::validate() const {
    if (tau_max < 0) {
        throw Error(ErrorCode::InvalidArgument, "tau_max must be >= 0");
    }
    if (washout < static_cast<size_t>(tau_max)) {
        throw Error(ErrorCode::InvalidArgument, "washout must cover tau_max so delayed targets exist");
    }
    if (train == 0 || test < 2) {
        throw Error(ErrorCode::InvalidArgument, "train must be >= 1 and test >= 2");
    }
    if (!(ridge_lambda >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "ridge_lambda must be >= 0");
    }
}

Dataset build_dataset(std::span<const ReadoutRecord> records, std::span<const double> inputs, const StmTask &task) {
    task.validate();
    if (records.size() < task.total_inputs() || inputs.size() < task.total_inputs()) {
        throw Error(ErrorCode::InvalidArgument, "build_dataset: fewer records than washout + train + test");
    }
    const size_t rows = task.train + task.test;
    const size_t width = records[0].features.size();
    Dataset ds;
    ds.washout = task.washout;
    ds.train = task.train;
    ds.test = task.test;
    ds.features.resize(static_cast<long>(rows), static_cast<long>(width + 1));
    ds.targets.resize(static_cast<long>(rows), task.tau_max + 1);
    for (size_t r = 0; r < rows; ++r) {
        const size_t k = task.washout + r;
        const auto &f = records[k].features;
        for (size_t c = 0; c < width; ++c) {
            ds.features(static_cast<long>(r), static_cast<long>(c)) = f[c];
        }
        ds.features(static_cast<long>(r), static_cast<long>(width)) = 1.0;
        for (int tau = 0; tau <= task.tau_max; ++tau) {
            ds.targets(static_cast<long>(r), tau) = inputs[k - static_cast<size_t>(tau)];
        }
    }
    return ds;
}

std::vector<TrainedReadout> train_readouts(const RealMatrix &features, const RealMatrix &targets, double ridge_lambda) {
    if (features.rows() != targets.rows() || features.rows() < features.cols()) {
        throw Error(ErrorCode::InvalidArgument, "train_readout: need rows(features) = rows(targets) >= cols(features)");
    }
    if (!(ridge_lambda >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "train_readout: ridge_lambda must be >= 0");
    }
    RealMatrix centered = features.rowwise() - features.colwise().mean();
    Eigen::JacobiSVD<RealMatrix> centered_svd(centered);
    if (centered_svd.singularValues().size() == 0 ||
        centered_svd.singularValues()[0] <= 1e-12 * std::sqrt(static_cast<double>(features.rows()))) {
        throw Error(ErrorCode::IllConditioned, "train_readout: features carry no variation");
    }

    Eigen::BDCSVD<RealMatrix> svd(features, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector &sv = svd.singularValues();
    const double lambda = ridge_lambda * features.squaredNorm() / static_cast<double>(features.cols());
    const double cutoff = sv.size() ? sv[0] * 1e-14 * static_cast<double>(features.cols()) : 0.0;
    RealVector filter(sv.size());
    for (long i = 0; i < sv.size(); ++i) {
        // s / (s^2 + lambda); directions below the rank cutoff are dropped when lambda = 0
        filter[i] = (sv[i] <= cutoff && lambda == 0) ? 0.0 : sv[i] / (sv[i] * sv[i] + lambda);
    }
    RealMatrix weights = svd.matrixV() * filter.asDiagonal() * (svd.matrixU().transpose() * targets);
    RealMatrix residual = features * weights - targets;

    std::vector<TrainedReadout> out(static_cast<size_t>(targets.cols()));
    for (long t = 0; t < targets.cols(); ++t) {
        auto &ro = out[static_cast<size_t>(t)];
        ro.weights = weights.col(t);
        ro.ridge_lambda = lambda;
        ro.train_mse = residual.col(t).squaredNorm() / static_cast<double>(features.rows());
        if (!ro.weights.allFinite()) {
            throw Error(ErrorCode::IllConditioned, "train_readout: non-finite weights");
        }
    }
    return out;
}

TrainedReadout train_readout(const RealMatrix &features, const RealVector &targets, double ridge_lambda) {
    return train_readouts(features, targets, ridge_lambda).front();
}

Capacity stm_capacity_tau(std::span<const double> y, std::span<const double> y_hat) {
    if (y.empty() || y.size() != y_hat.size()) {
        throw Error(ErrorCode::InvalidArgument, "stm_capacity_tau: sequences must be nonempty and of equal length");
    }
    const double n = static_cast<double>(y.size());
    double my = 0, mt = 0;
    for (size_t i = 0; i < y.size(); ++i) {
        my += y[i];
        mt += y_hat[i];
    }
    my /= n;
    mt /= n;
    double cov = 0, vy = 0, vt = 0;
    for (size_t i = 0; i < y.size(); ++i) {
        double a = y[i] - my;
        double b = y_hat[i] - mt;
        cov += a * b;
        vy += a * a;
        vt += b * b;
    }
    if (!(vy > 0) || !(vt > 0)) {
        return {0.0, true};
    }
    double c = (cov * cov) / (vy * vt);
    return {std::clamp(c, 0.0, 1.0), false};
}

StmReport stm_from_records(const ReservoirConfig &cfg, std::span<const ReadoutRecord> records,
                           std::span<const double> inputs, const StmTask &task) {
    Dataset ds = build_dataset(records, inputs, task);
    const auto train = static_cast<long>(ds.train);
    const auto test = static_cast<long>(ds.test);
    auto readouts = train_readouts(ds.features.topRows(train), ds.targets.topRows(train), task.ridge_lambda);

    RealMatrix x_test = ds.features.bottomRows(test);
    StmReport report;
    report.tau_max = task.tau_max;
    report.task = task;
    report.config = cfg;
    report.train_mse_tau0 = readouts.front().train_mse;
    report.per_delay.resize(static_cast<size_t>(task.tau_max + 1));
    for (int tau = 0; tau <= task.tau_max; ++tau) {
        RealVector y = x_test * readouts[static_cast<size_t>(tau)].weights;
        RealVector target = ds.targets.col(tau).tail(test);
        auto cap = stm_capacity_tau(std::span<const double>(y.data(), static_cast<size_t>(y.size())),
                                    std::span<const double>(target.data(), static_cast<size_t>(target.size())));
        report.per_delay[static_cast<size_t>(tau)] = cap.value;
        report.zero_variance |= cap.zero_variance;
    }
    for (double c : report.per_delay) {
        report.total += c;
    }
    return report;
}

StmReport run_stm_task(const ReservoirConfig &cfg, const StmTask &task) {
    task.validate();
    auto inputs = uniform_inputs(task.input_seed, task.total_inputs());
    auto run = run_sequence(cfg, inputs);
    return stm_from_records(cfg, run.records, inputs, task);
}

}  // namespace qrc
