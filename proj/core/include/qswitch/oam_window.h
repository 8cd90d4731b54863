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

#ifndef QSWITCH_OAM_WINDOW_H_
#define QSWITCH_OAM_WINDOW_H_

#include <cstddef>
#include <string>

#include "qswitch/error.h"

namespace qswitch {

/// Guard band added beyond the largest ladder shift of a run.
inline constexpr int kDefaultGuard = 8;

/// Truncated OAM ladder [l_min, l_max]. Indices within `guard` of either edge
/// form the boundary band; states may only be supported on the interior.
/// OAM index k stands for the L_z eigenvalue k (hbar = 1).
class OamWindow {
   public:
    OamWindow(int l_min, int l_max, int guard) : l_min_(l_min), l_max_(l_max), guard_(guard) {
        if (guard < 0) {
            fail(ErrorKind::kInvalidArgument, "guard must be non-negative");
        }
        if (l_min >= l_max) {
            fail(ErrorKind::kInvalidArgument, "window needs l_min < l_max");
        }
        if (l_max - l_min + 1 < 2 * guard + 1) {
            fail(ErrorKind::kInvalidArgument, "window too small for its guard band");
        }
    }

    /// [-(2l + guard), 2l + guard]: room for two successive shifts of l.
    static OamWindow for_leverage(int l, int guard = kDefaultGuard) {
        int half = 2 * (l < 0 ? -l : l) + guard;
        return OamWindow(-half, half, guard);
    }

    int l_min() const {
        return l_min_;
    }
    int l_max() const {
        return l_max_;
    }
    int guard() const {
        return guard_;
    }
    std::size_t size() const {
        return static_cast<std::size_t>(l_max_ - l_min_ + 1);
    }
    int interior_min() const {
        return l_min_ + guard_;
    }
    int interior_max() const {
        return l_max_ - guard_;
    }
    bool contains(int k) const {
        return k >= l_min_ && k <= l_max_;
    }
    bool is_interior(int k) const {
        return k >= interior_min() && k <= interior_max();
    }
    std::size_t offset(int k) const {
        return static_cast<std::size_t>(k - l_min_);
    }

    bool operator==(const OamWindow &) const = default;

    std::string to_string() const {
        return "[" + std::to_string(l_min_) + ", " + std::to_string(l_max_) + "] guard " +
               std::to_string(guard_);
    }

   private:
    int l_min_;
    int l_max_;
    int guard_;
};

}  // namespace qswitch

#endif  // QSWITCH_OAM_WINDOW_H_
