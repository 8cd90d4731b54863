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

#ifndef QSWITCH_CONFIG_H_
#define QSWITCH_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/joint_state.h"
#include "qswitch/montecarlo.h"
#include "qswitch/units.h"

namespace qswitch {

struct ThetaSweep {
    Angle start;
    Angle end;
    int steps = 0;  // inclusive of both ends

    std::vector<double> grid() const;
    bool operator==(const ThetaSweep &) const = default;
};

struct DoveConfig {
    double delta = 0.2;  // retardance, rad
    double rho = 0.99;   // amplitude ratio
    double alpha0 = 0.0;
    bool deflection_on = false;
    bool compensation_on = true;

    bool operator==(const DoveConfig &) const = default;
};

struct NoiseConfig {
    double visibility = 1.0;
    Angle jitter;
    Angle phase_drift;
    double efficiency = 1.0;
    /// When set, the jitter is calibrated so the campaign reaches this gap
    /// factor and `jitter` is ignored.
    std::optional<double> target_gap;

    NoiseModel model() const;
    bool operator==(const NoiseConfig &) const = default;
};

enum class ProbeKind { kEigenstate, kSuperposition };

/// OAM part of the metrology probe: one eigenstate, or an equal-weight
/// superposition of the listed indices.
struct ProbeConfig {
    ProbeKind kind = ProbeKind::kEigenstate;
    std::vector<int> indices = {0};

    std::vector<OamAmplitude> amplitudes() const;
    bool operator==(const ProbeConfig &) const = default;
};

struct OutputConfig {
    std::string dir = "out";
    std::vector<std::string> formats = {"csv", "json"};

    bool wants(std::string_view format) const;
    bool operator==(const OutputConfig &) const = default;
};

struct ExperimentConfig {
    std::string name = "experiment";
    int m = 2;
    int l = 1;
    std::optional<Angle> theta_true;
    std::optional<ThetaSweep> theta_sweep;
    std::int64_t nu = 70000000;
    int trials = 60;
    /// nullopt: quadrature for the configured pair and theta.
    std::optional<Angle> phi0;
    NoiseConfig noise;
    DoveConfig dove;
    std::uint64_t seed = 2026;
    int workers = 1;
    std::vector<std::pair<int, int>> pairs;
    ProbeConfig probe;
    OutputConfig output;

    /// Domain checks; throws Error(kConfig) naming the field.
    void validate() const;
    /// phi0 in rad, resolving "quadrature" for the given theta.
    double phi0_for(double theta) const;

    bool operator==(const ExperimentConfig &) const = default;
};

/// Parses the YAML config format. Errors carry "line N, field F: ...".
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

/// Serializes so that parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig &c);

/// FNV-1a 64 of the serialized config, as 16 hex digits. Worker count and
/// output settings are left out, so they never change a report.
std::string config_hash(const ExperimentConfig &c);

}  // namespace qswitch

#endif  // QSWITCH_CONFIG_H_
