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

#ifndef QSWITCH_TOOLS_COMMANDS_H_
#define QSWITCH_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/campaign.h"
#include "qswitch/config.h"
#include "qswitch/fringe_fit.h"
#include "qswitch/report_io.h"

namespace qswitch::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitCheck = 4;

inline constexpr const char *kOutputDirEnv = "QSWITCH_OUTPUT_DIR";

/// Files a command wants written (name, content), plus what it checked.
struct CommandOutput {
    std::vector<std::pair<std::string, std::string>> files;
    std::string summary;
    /// Thresholds evaluated by the command; a failure here maps to exit 4 in
    /// --check mode.
    std::vector<std::string> violations;
    /// Failures that make the command exit nonzero even without --check.
    bool hard_failure = false;
};

struct FringeResult {
    std::vector<FringeRow> rows;
    FitReport fit;        // on the simulated counts
    FitReport ideal_fit;  // on the noiseless law from the optical train
    double max_law_deviation = 0.0;
};

FringeResult compute_fringe(const ExperimentConfig &cfg, int workers);
CommandOutput cmd_fringe(const ExperimentConfig &cfg, int workers);

struct EstimateResult {
    EstimationReport report;
    std::optional<JitterCalibration> calibration;
    std::optional<HupResult> hup;
    double delta_h_switch = 0.0;
};

EstimateResult compute_estimate(const ExperimentConfig &cfg, int workers);
CommandOutput cmd_estimate(const ExperimentConfig &cfg, int workers);

CommandOutput cmd_scaling(const ExperimentConfig &cfg, int workers);

TraceReport compute_trace(const ExperimentConfig &cfg);
CommandOutput cmd_trace(const ExperimentConfig &cfg, int workers);

/// `campaign_normalized`: rmse * sqrt(nu) of an earlier campaign, if any.
QfiReport compute_qfi(const ExperimentConfig &cfg, std::optional<double> campaign_normalized);
CommandOutput cmd_qfi(const ExperimentConfig &cfg, int workers);

struct CliOptions {
    std::string command;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
    bool check = false;
};

/// Loads the config, applies overrides, runs the command, writes its files and
/// returns the process exit code. Messages go to `out` and `err`.
int run_cli(const CliOptions &opts, std::ostream &out, std::ostream &err);

/// Output directory: --out, then $QSWITCH_OUTPUT_DIR, then the config.
std::string resolve_output_dir(const CliOptions &opts, const ExperimentConfig &cfg);

}  // namespace qswitch::tools

#endif  // QSWITCH_TOOLS_COMMANDS_H_
