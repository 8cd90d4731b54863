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

#ifndef QSWITCH_REPORT_IO_H_
#define QSWITCH_REPORT_IO_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qswitch/campaign.h"
#include "qswitch/config.h"
#include "qswitch/fringe_fit.h"
#include "qswitch/metrology.h"

namespace qswitch {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

/// 17 significant digits.
std::string csv_double(double v);

struct FringeRow {
    double theta = 0.0;
    double p_ideal = 0.0;
    double p_noisy_mean = 0.0;
    double p_noisy_sem = 0.0;
    double fit_curve = 0.0;
};

std::string fringe_csv(std::span<const FringeRow> rows);
std::string fringe_json(const ExperimentConfig &cfg, const FitReport &fit, std::size_t repeats);
std::string fringe_svg(std::span<const FringeRow> rows, const std::string &title);

std::string estimation_csv(const EstimationReport &r);
/// `calibration` is set when the jitter was tuned to a target gap.
std::string estimation_json(const ExperimentConfig &cfg, const EstimationReport &r,
                            const std::optional<JitterCalibration> &calibration, const std::optional<HupResult> &hup);
/// Plain-text summary for the terminal.
std::string estimation_table(const EstimationReport &r);

std::string scaling_csv(const ScalingReport &r);
std::string scaling_json(const ExperimentConfig &cfg, const ScalingReport &r);
std::string scaling_svg(const ScalingReport &r);

struct TraceStageReport {
    std::string label;
    std::string element;
    double fidelity = 0.0;
    double norm = 0.0;
    double lz_mean = 0.0;
};

struct TraceReport {
    std::vector<TraceStageReport> stages;
    double min_fidelity = 0.0;
    double final_visibility = 0.0;
    double probability = 0.0;
    bool passed = false;
};

std::string trace_json(const ExperimentConfig &cfg, const TraceReport &r);

struct QfiReport {
    GeneratorReport switch_scheme;
    GeneratorReport multipass;
    FisherReport fisher;
    int resources = 0;
    double qfi_switch = 0.0;
    double qfi_multipass = 0.0;
    std::optional<HupResult> hup;
};

std::string qfi_json(const ExperimentConfig &cfg, const QfiReport &r);

/// Writes `content` to dir/name, creating dir.
void write_text_file(const std::string &dir, const std::string &name, const std::string &content);

}  // namespace qswitch

#endif  // QSWITCH_REPORT_IO_H_
