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

#include "qrc/dimension.hpp"

namespace qrc {

/// Uniform samples of a Moebius strip of centre radius `radius` and half width
/// `half_width`, embedded in R^3. A narrow strip keeps the k-neighbour patches
/// flat enough that their bending stays below the estimator threshold.
PointCloud moebius_strip(size_t n_points, uint64_t seed, double radius = 1.0, double half_width = 0.1);

/// Points on a random line through the origin in R^ambient, plus isotropic
/// Gaussian jitter of standard deviation `jitter`.
PointCloud jittered_line(size_t n_points, size_t ambient, uint64_t seed, double jitter = 1e-8);

/// Standard Gaussian in `dim` dimensions, rotated at random into R^ambient.
PointCloud gaussian_cloud(size_t n_points, size_t dim, size_t ambient, uint64_t seed);

}  // namespace qrc
