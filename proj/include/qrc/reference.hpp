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

// Straightforward serial implementations of the parallel kernels. They take
// independent algebraic routes and exist for cross-checking and benchmarks.

#include <vector>

#include "qrc/dimension.hpp"
#include "qrc/linalg.hpp"

namespace qrc::reference {

/// Tr(rho P_alpha) from dense Pauli-string matrices.
std::vector<double> bloch_vector(const ComplexMatrix &rho);

/// Local PCA through the full ambient covariance matrix (the parallel kernel
/// diagonalizes the small cluster Gram matrix instead).
DimensionEstimate covariance_dimension(const PointCloud &cloud, const DimensionParams &params = {});

}  // namespace qrc::reference
