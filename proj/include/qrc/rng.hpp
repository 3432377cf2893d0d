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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace qrc {

/// SplitMix64 finalizer. Used to derive independent seeds; the stream itself
/// is std::mt19937_64, whose output sequence is fixed by the C++ standard.
uint64_t splitmix64(uint64_t x);

/// Order-sensitive hash of a base seed with a list of indices.
uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> parts);

/// Portable random stream: mt19937_64 plus hand-rolled conversions, since
/// std::uniform_real_distribution is not reproducible across standard libraries.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }
    /// Standard normal via Box-Muller.
    double normal();
    uint64_t next_u64() {
        return engine_();
    }

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

/// i.i.d. uniform inputs s_k in [0, 1).
std::vector<double> uniform_inputs(uint64_t seed, size_t count);

}  // namespace qrc
