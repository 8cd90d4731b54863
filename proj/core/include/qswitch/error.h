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

#ifndef QSWITCH_ERROR_H_
#define QSWITCH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qswitch {

enum class ErrorKind {
    // State construction and ladder bookkeeping.
    kEmptyDistribution,
    kSupportInGuardBand,
    kNonNormalizable,
    kShiftIntoGuardBand,
    kDimensionMismatch,
    kUnnormalizedState,
    kStageMismatch,
    // Metrology.
    kGuardBandViolation,
    kStepTooSmall,
    kNonPositiveInput,
    kDegenerateOperatingPoint,
    // Estimation.
    kOutOfBranch,
    kDegeneratePoint,
    kInsufficientSpan,
    kNonConvergence,
    kInsufficientPairs,
    // Anything coming from a user-supplied parameter or config file.
    kInvalidArgument,
    kConfig,
};

std::string_view error_kind_name(ErrorKind kind);

/// True for failures of the numerics (guard band, convergence) as opposed to
/// bad input. The CLI maps these to exit code 3.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

}  // namespace qswitch

#endif  // QSWITCH_ERROR_H_
