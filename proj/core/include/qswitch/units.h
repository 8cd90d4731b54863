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

#ifndef QSWITCH_UNITS_H_
#define QSWITCH_UNITS_H_

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace qswitch {

enum class AngleUnit { kRad, kDeg, kArcsec };

std::string_view angle_unit_suffix(AngleUnit u);
std::optional<AngleUnit> parse_angle_unit(std::string_view suffix);

inline constexpr double kRadPerDeg = std::numbers::pi / 180.0;
inline constexpr double kRadPerArcsec = std::numbers::pi / 648000.0;

constexpr double deg_to_rad(double deg) {
    return deg * kRadPerDeg;
}
constexpr double rad_to_deg(double rad) {
    return rad / kRadPerDeg;
}
constexpr double arcsec_to_rad(double arcsec) {
    return arcsec * kRadPerArcsec;
}
constexpr double rad_to_arcsec(double rad) {
    return rad / kRadPerArcsec;
}

/// An angle as written in a config file. Keeps the unit so it serializes back
/// the same way.
struct Angle {
    double value = 0.0;
    AngleUnit unit = AngleUnit::kRad;

    double rad() const;
    static Angle radians(double r) {
        return {r, AngleUnit::kRad};
    }
    bool operator==(const Angle &) const = default;
};

/// "0.025 deg", "90arcsec", "4.3e-4 rad" or a bare number (radians).
/// Returns nullopt on malformed text.
std::optional<Angle> parse_angle(std::string_view text);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

std::string format_angle(const Angle &a);

}  // namespace qswitch

#endif  // QSWITCH_UNITS_H_
