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

#include "qrc/error.hpp"

namespace qrc {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::BadSubset:
            return "BadSubset";
        case ErrorCode::DegenerateDraw:
            return "DegenerateDraw";
        case ErrorCode::InputOutOfRange:
            return "InputOutOfRange";
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::StateInvariantViolated:
            return "StateInvariantViolated";
        case ErrorCode::TooFewPoints:
            return "TooFewPoints";
        case ErrorCode::IllConditioned:
            return "IllConditioned";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::SchemaMismatch:
            return "SchemaMismatch";
        case ErrorCode::Io:
            return "Io";
    }
    return "Unknown";
}

}  // namespace qrc
