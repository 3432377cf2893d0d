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

#include "qrc/reference.hpp"

#include <algorithm>
#include <numeric>

#include "qrc/bloch.hpp"
#include "qrc/error.hpp"

namespace qrc::reference {

std::vector<double> bloch_vector(const ComplexMatrix &rho) {
    const int n = qubit_count(rho);
    std::vector<double> out(bloch_dimension(n));
    for (size_t alpha = 1; alpha <= out.size(); ++alpha) {
        ComplexMatrix p = pauli_string(n, pauli_label(n, alpha));
        out[alpha - 1] = (rho * p).trace().real();
    }
    return out;
}

DimensionEstimate covariance_dimension(const PointCloud &cloud, const DimensionParams &params) {
    params.validate();
    const size_t n = cloud.size();
    const auto k = static_cast<size_t>(params.k_neighbors);
    if (n < k + 1) {
        throw Error(ErrorCode::TooFewPoints, "reference::covariance_dimension: too few points");
    }
    const auto dim = static_cast<long>(cloud.dim());
    const size_t n_anchors = std::min(n, static_cast<size_t>(params.n_anchors));

    DimensionEstimate est;
    est.params = params;
    est.ambient_dim = cloud.dim();
    double sum = 0;
    for (size_t a = 0; a < n_anchors; ++a) {
        const size_t anchor = a * n / n_anchors;
        std::vector<double> d2(n);
        for (size_t i = 0; i < n; ++i) {
            double acc = 0;
            for (long c = 0; c < dim; ++c) {
                double diff = cloud.point(i)[static_cast<size_t>(c)] - cloud.point(anchor)[static_cast<size_t>(c)];
                acc += diff * diff;
            }
            d2[i] = acc;
        }
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            if (x == anchor || y == anchor) {
                return x == anchor && y != anchor;
            }
            return d2[x] < d2[y];
        });

        // order[0] is the anchor, order[1..k] its neighbors
        RealVector mean = RealVector::Zero(dim);
        for (size_t m = 0; m <= k; ++m) {
            for (long c = 0; c < dim; ++c) {
                mean[c] += cloud.point(order[m])[static_cast<size_t>(c)];
            }
        }
        mean /= static_cast<double>(k + 1);
        RealMatrix cov = RealMatrix::Zero(dim, dim);
        for (size_t m = 0; m <= k; ++m) {
            RealVector x(dim);
            for (long c = 0; c < dim; ++c) {
                x[c] = cloud.point(order[m])[static_cast<size_t>(c)] - mean[c];
            }
            cov += x * x.transpose();
        }
        cov /= static_cast<double>(k);

        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(cov, Eigen::EigenvaluesOnly);
        const RealVector &ev = solver.eigenvalues();
        double largest = ev[dim - 1];
        int count = 0;
        if (largest < 1e-24) {
            ++est.degenerate_anchors;
        } else {
            for (long i = 0; i < dim; ++i) {
                count += ev[i] > params.threshold * largest;
            }
        }
        est.per_anchor.push_back(count);
        sum += count;
    }
    est.d_c = sum / static_cast<double>(n_anchors);
    est.fraction = est.d_c / static_cast<double>(est.ambient_dim);
    return est;
}

}  // namespace qrc::reference
