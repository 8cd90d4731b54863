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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qswitch/report_io.h"
#include "qswitch_tools/commands.h"

int main(int argc, char **argv) {
    using qswitch::tools::CliOptions;
    CLI::App app{"qswitch: OAM quantum-switch rotation metrology simulator"};
    app.set_version_flag("--version", std::string(qswitch::kArtifactVersion));
    app.require_subcommand(1);

    CliOptions opts;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out;

    const auto add = [&](const std::string &name, const std::string &help) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "override the campaign seed");
        sub->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 256));
        sub->add_option("--out", out, "output directory (overrides $QSWITCH_OUTPUT_DIR and the config)");
        sub->add_flag("--check", opts.check, "exit 4 when a threshold check fails");
        sub->callback([&opts, name] { opts.command = name; });
        return sub;
    };
    CLI::App *fringe = add("fringe", "sweep theta, simulate P(theta) and fit the fringe");
    CLI::App *estimate = add("estimate", "repeated single-point estimation of theta");
    CLI::App *scaling = add("scaling", "precision against 4ml over the configured pairs");
    CLI::App *trace = add("trace", "stage-by-stage state trace through the optical train");
    CLI::App *qfi = add("qfi", "generator spread, Fisher information and resource count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qswitch::tools::kExitConfig;
    }
    for (CLI::App *sub : {fringe, estimate, scaling, trace, qfi}) {
        if (sub->parsed()) {
            if (sub->count("--seed") > 0) opts.seed = seed;
            if (sub->count("--workers") > 0) opts.workers = workers;
            if (sub->count("--out") > 0) opts.out = out;
        }
    }
    return qswitch::tools::run_cli(opts, std::cout, std::cerr);
}
