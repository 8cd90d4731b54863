// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qswitch/error.h"

namespace qswitch {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kEmptyDistribution:
            return "EmptyDistribution";
        case ErrorKind::kSupportInGuardBand:
            return "SupportInGuardBand";
        case ErrorKind::kNonNormalizable:
            return "NonNormalizable";
        case ErrorKind::kShiftIntoGuardBand:
            return "ShiftIntoGuardBand";
        case ErrorKind::kDimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::kUnnormalizedState:
            return "UnnormalizedState";
        case ErrorKind::kStageMismatch:
            return "StageMismatch";
        case ErrorKind::kGuardBandViolation:
            return "GuardBandViolation";
        case ErrorKind::kStepTooSmall:
            return "StepTooSmall";
        case ErrorKind::kNonPositiveInput:
            return "NonPositiveInput";
        case ErrorKind::kDegenerateOperatingPoint:
            return "DegenerateOperatingPoint";
        case ErrorKind::kOutOfBranch:
            return "OutOfBranch";
        case ErrorKind::kDegeneratePoint:
            return "DegeneratePoint";
        case ErrorKind::kInsufficientSpan:
            return "InsufficientSpan";
        case ErrorKind::kNonConvergence:
            return "NonConvergence";
        case ErrorKind::kInsufficientPairs:
            return "InsufficientPairs";
        case ErrorKind::kInvalidArgument:
            return "InvalidArgument";
        case ErrorKind::kConfig:
            return "ConfigError";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kShiftIntoGuardBand:
        case ErrorKind::kSupportInGuardBand:
        case ErrorKind::kGuardBandViolation:
        case ErrorKind::kStageMismatch:
        case ErrorKind::kNonConvergence:
        case ErrorKind::kStepTooSmall:
        case ErrorKind::kDegenerateOperatingPoint:
        case ErrorKind::kDegeneratePoint:
        case ErrorKind::kOutOfBranch:
        case ErrorKind::kUnnormalizedState:
        case ErrorKind::kDimensionMismatch:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace qswitch
