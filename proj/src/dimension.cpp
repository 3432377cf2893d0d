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

#include "qrc/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qrc/error.hpp"

namespace qrc {

namespace {

constexpr double kDegenerateEigenvalue = 1e-24;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace

void DimensionParams::validate() const {
    if (k_neighbors < 1) {
        throw Error(ErrorCode::InvalidArgument, "k_neighbors must be >= 1");
    }
    if (n_anchors < 1) {
        throw Error(ErrorCode::InvalidArgument, "n_anchors must be >= 1");
    }
    if (!(threshold > 0 && threshold < 1)) {
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1)");
    }
}

std::vector<size_t> anchor_indices(size_t n_points, int n_anchors) {
    std::vector<size_t> out;
    const auto count = std::min(n_points, static_cast<size_t>(n_anchors));
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        out.push_back(i * n_points / count);
    }
    return out;
}

std::vector<size_t> nearest_neighbors(const PointCloud &cloud, size_t anchor, int k) {
    const size_t n = cloud.size();
    std::vector<std::pair<double, size_t>> dist;
    dist.reserve(n - 1);
    auto a = cloud.point(anchor);
    for (size_t i = 0; i < n; ++i) {
        if (i != anchor) {
            dist.emplace_back(squared_distance(a, cloud.point(i)), i);
        }
    }
    auto kk = std::min(dist.size(), static_cast<size_t>(k));
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(kk), dist.end());
    std::vector<size_t> out(kk);
    for (size_t i = 0; i < kk; ++i) {
        out[i] = dist[i].second;
    }
    return out;
}

int local_dimension(const PointCloud &cloud, std::span<const size_t> members, double threshold, bool *degenerate) {
    const auto m = static_cast<long>(members.size());
    const auto dim = static_cast<long>(cloud.dim());
    RealMatrix centered(m, dim);
    for (long r = 0; r < m; ++r) {
        auto p = cloud.point(members[static_cast<size_t>(r)]);
        centered.row(r) = Eigen::Map<const RealVector>(p.data(), dim).transpose();
    }
    centered.rowwise() -= centered.colwise().mean();
    // C C^T / (m - 1) shares its nonzero spectrum with the covariance C^T C / (m - 1).
    RealMatrix gram = centered * centered.transpose() / static_cast<double>(std::max<long>(m - 1, 1));
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram, Eigen::EigenvaluesOnly);
    const RealVector &ev = solver.eigenvalues();
    double largest = ev[ev.size() - 1];
    if (degenerate) {
        *degenerate = largest < kDegenerateEigenvalue;
    }
    if (largest < kDegenerateEigenvalue) {
        return 0;
    }
    int count = 0;
    for (long i = 0; i < ev.size(); ++i) {
        count += ev[i] > threshold * largest;
    }
    return std::min<int>(count, static_cast<int>(dim));
}

DimensionEstimate covariance_dimension(const PointCloud &cloud, const DimensionParams &params) {
    params.validate();
    if (cloud.size() < static_cast<size_t>(params.k_neighbors) + 1) {
        throw Error(ErrorCode::TooFewPoints, "need at least k_neighbors + 1 = " + std::to_string(params.k_neighbors + 1) +
                                                 " points, got " + std::to_string(cloud.size()));
    }
    auto anchors = anchor_indices(cloud.size(), params.n_anchors);
    DimensionEstimate est;
    est.params = params;
    est.ambient_dim = cloud.dim();
    est.per_anchor.assign(anchors.size(), 0);
    std::vector<char> degenerate(anchors.size(), 0);

    const auto count = static_cast<long>(anchors.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        auto anchor = anchors[static_cast<size_t>(i)];
        auto members = nearest_neighbors(cloud, anchor, params.k_neighbors);
        members.insert(members.begin(), anchor);
        bool deg = false;
        est.per_anchor[static_cast<size_t>(i)] = local_dimension(cloud, members, params.threshold, &deg);
        degenerate[static_cast<size_t>(i)] = deg;
    }

    double sum = 0;
    for (size_t i = 0; i < anchors.size(); ++i) {
        sum += est.per_anchor[i];
        est.degenerate_anchors += degenerate[i];
    }
    est.d_c = sum / static_cast<double>(anchors.size());
    est.fraction = est.d_c / static_cast<double>(est.ambient_dim);
    return est;
}

DimensionEstimate reservoir_dimension(const ReservoirConfig &cfg, std::span<const double> inputs,
                                      const DimensionParams &params, const DimensionRunOptions &options) {
    if (inputs.size() <= options.washout) {
        throw Error(ErrorCode::TooFewPoints, "reservoir_dimension: input sequence shorter than washout");
    }
    RunOptions run;
    run.record_states = true;
    run.record_from_step = options.washout;
    run.record_steps = options.steps;
    auto result = run_sequence(cfg, inputs, run);
    return covariance_dimension(*result.states, params);
}

}  // namespace qrc
