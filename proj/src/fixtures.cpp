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

#include "qrc/fixtures.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "qrc/error.hpp"
#include "qrc/rng.hpp"

namespace qrc {

PointCloud moebius_strip(size_t n_points, uint64_t seed, double radius, double half_width) {
    if (radius <= 0 || half_width <= 0 || half_width >= radius) {
        throw Error(ErrorCode::InvalidArgument, "moebius_strip: need 0 < half_width < radius");
    }
    Rng rng(seed);
    PointCloud cloud(3);
    cloud.reserve(n_points);
    for (size_t i = 0; i < n_points; ++i) {
        double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        double t = rng.uniform(-half_width, half_width);
        double r = radius + t * std::cos(theta / 2);
        double p[3] = {r * std::cos(theta), r * std::sin(theta), t * std::sin(theta / 2)};
        cloud.append(p, static_cast<double>(i));
    }
    return cloud;
}

namespace {

RealMatrix random_orthonormal(size_t ambient, size_t cols, Rng &rng) {
    RealMatrix g(ambient, cols);
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            g(r, c) = rng.normal();
        }
    }
    Eigen::HouseholderQR<RealMatrix> qr(g);
    return qr.householderQ() * RealMatrix::Identity(static_cast<Eigen::Index>(ambient), static_cast<Eigen::Index>(cols));
}

}  // namespace

PointCloud jittered_line(size_t n_points, size_t ambient, uint64_t seed, double jitter) {
    if (ambient < 1) {
        throw Error(ErrorCode::InvalidArgument, "jittered_line: ambient must be >= 1");
    }
    Rng rng(seed);
    RealMatrix dir = random_orthonormal(ambient, 1, rng);
    PointCloud cloud(ambient);
    cloud.reserve(n_points);
    for (size_t i = 0; i < n_points; ++i) {
        double s = rng.uniform(-1.0, 1.0);
        auto p = cloud.append(static_cast<double>(i));
        for (size_t d = 0; d < ambient; ++d) {
            p[d] = s * dir(static_cast<Eigen::Index>(d), 0) + jitter * rng.normal();
        }
    }
    return cloud;
}

PointCloud gaussian_cloud(size_t n_points, size_t dim, size_t ambient, uint64_t seed) {
    if (dim < 1 || dim > ambient) {
        throw Error(ErrorCode::InvalidArgument, "gaussian_cloud: need 1 <= dim <= ambient");
    }
    Rng rng(seed);
    RealMatrix basis = random_orthonormal(ambient, dim, rng);
    PointCloud cloud(ambient);
    cloud.reserve(n_points);
    RealVector z(static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < n_points; ++i) {
        for (Eigen::Index d = 0; d < z.size(); ++d) {
            z(d) = rng.normal();
        }
        RealVector x = basis * z;
        cloud.append(std::span<const double>(x.data(), ambient), static_cast<double>(i));
    }
    return cloud;
}

}  // namespace qrc
