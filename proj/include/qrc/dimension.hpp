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
#include <vector>

#include "qrc/bloch.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// Point clouds for the estimator share the trajectory storage.
using PointCloud = BlochTrajectory;

struct DimensionParams {
    int k_neighbors = 32;
    int n_anchors = 200;
    /// Eigenvalues above threshold * (largest local eigenvalue) are counted.
    double threshold = 1e-3;

    void validate() const;
};

struct DimensionEstimate {
    double d_c = 0;
    double fraction = 0;  // d_c / ambient dimension
    size_t ambient_dim = 0;
    std::vector<int> per_anchor;
    int degenerate_anchors = 0;
    DimensionParams params;
};

/// Indices of the anchors: n_anchors points evenly strided through the cloud.
std::vector<size_t> anchor_indices(size_t n_points, int n_anchors);

/// Indices of the k points nearest to `anchor` (Euclidean, anchor itself
/// excluded, ties broken by index), ascending by distance.
std::vector<size_t> nearest_neighbors(const PointCloud &cloud, size_t anchor, int k);

/// Number of significant principal directions of the cluster formed by the
/// listed points. Returns 0 for a degenerate (coincident) cluster.
int local_dimension(const PointCloud &cloud, std::span<const size_t> members, double threshold, bool *degenerate = nullptr);

/// Mean local PCA dimension over strided anchors; OpenMP-parallel over anchors.
DimensionEstimate covariance_dimension(const PointCloud &cloud, const DimensionParams &params = {});

struct DimensionRunOptions {
    size_t washout = 500;
    size_t steps = 1000;
};

/// run_sequence -> Bloch embedding of every sub-step after the washout -> estimator.
DimensionEstimate reservoir_dimension(const ReservoirConfig &cfg, std::span<const double> inputs,
                                      const DimensionParams &params = {}, const DimensionRunOptions &options = {});

}  // namespace qrc
