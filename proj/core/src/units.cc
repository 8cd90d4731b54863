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

#include "qswitch/units.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

namespace qswitch {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::string_view angle_unit_suffix(AngleUnit u) {
    switch (u) {
        case AngleUnit::kRad:
            return "rad";
        case AngleUnit::kDeg:
            return "deg";
        case AngleUnit::kArcsec:
            return "arcsec";
    }
    return "rad";
}

std::optional<AngleUnit> parse_angle_unit(std::string_view suffix) {
    suffix = trim(suffix);
    if (suffix.empty() || suffix == "rad") {
        return AngleUnit::kRad;
    }
    if (suffix == "deg") {
        return AngleUnit::kDeg;
    }
    if (suffix == "arcsec") {
        return AngleUnit::kArcsec;
    }
    return std::nullopt;
}

double Angle::rad() const {
    switch (unit) {
        case AngleUnit::kRad:
            return value;
        case AngleUnit::kDeg:
            return deg_to_rad(value);
        case AngleUnit::kArcsec:
            return arcsec_to_rad(value);
    }
    return value;
}

std::optional<Angle> parse_angle(std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr == text.data() || !std::isfinite(v)) {
        return std::nullopt;
    }
    const auto unit = parse_angle_unit(std::string_view(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr)));
    if (!unit) {
        return std::nullopt;
    }
    return Angle{v, *unit};
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

std::string format_angle(const Angle &a) {
    return format_double(a.value) + " " + std::string(angle_unit_suffix(a.unit));
}

}  // namespace qswitch
