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

#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "qswitch/config.h"
#include "qswitch/units.h"

namespace qswitch {
namespace {

std::string config_error(const std::string &text) {
    try {
        parse_config(text);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kConfig);
        return e.what();
    }
    ADD_FAILURE() << "config parsed";
    return "";
}

constexpr const char *kFull = R"(name: "roundtrip"
m: 4
l: 2
theta_true: 90 arcsec
theta_sweep:
  start: 0 deg
  end: 11.25 deg
  steps: 64
nu: 70000000
trials: 12
phi0: 0.3 rad
noise:
  visibility: 0.97
  jitter: 1e-7 rad
  phase_drift: 0.01 deg
  efficiency: 0.9
  target_gap: 1.5
dove:
  delta: 0.25
  rho: 0.98
  alpha0: 0.1
  deflection_on: true
  compensation_on: false
seed: 12345678901
workers: 3
pairs: [[2, 1], [4, 2], [6, 3]]
probe:
  kind: superposition
  indices: [-1, 0, 2]
output:
  dir: "somewhere"
  formats: [csv]
)";

TEST(Units, Conversions) {
    EXPECT_NEAR(deg_to_rad(0.025), 4.3633231299858e-4, 1e-16);
    EXPECT_NEAR(arcsec_to_rad(90.0), deg_to_rad(0.025), 1e-18);
    EXPECT_NEAR(rad_to_arcsec(deg_to_rad(1.0)), 3600.0, 1e-9);
    EXPECT_NEAR(rad_to_deg(std::numbers::pi), 180.0, 1e-12);
}

TEST(Units, ParseAngle) {
    EXPECT_EQ(parse_angle("0.025 deg"), (Angle{0.025, AngleUnit::kDeg}));
    EXPECT_EQ(parse_angle("90arcsec"), (Angle{90.0, AngleUnit::kArcsec}));
    EXPECT_EQ(parse_angle("4.3e-4 rad"), (Angle{4.3e-4, AngleUnit::kRad}));
    EXPECT_EQ(parse_angle("-1.5"), (Angle{-1.5, AngleUnit::kRad}));
    EXPECT_FALSE(parse_angle("abc").has_value());
    EXPECT_FALSE(parse_angle("1 furlong").has_value());
    EXPECT_FALSE(parse_angle("").has_value());
    EXPECT_NEAR(parse_angle("90 arcsec")->rad(), parse_angle("0.025 deg")->rad(), 1e-18);
}

TEST(Units, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 7.16e7, 2.8853e-8, -0.0, 1e300}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_angle({0.025, AngleUnit::kDeg}), "0.025 deg");
}

TEST(Config, ParsesEveryField) {
    const ExperimentConfig c = parse_config(kFull);
    EXPECT_EQ(c.name, "roundtrip");
    EXPECT_EQ(c.m, 4);
    EXPECT_EQ(c.l, 2);
    EXPECT_NEAR(c.theta_true->rad(), deg_to_rad(0.025), 1e-18);
    EXPECT_EQ(c.theta_sweep->steps, 64);
    EXPECT_EQ(c.theta_sweep->grid().size(), 64u);
    EXPECT_NEAR(c.theta_sweep->grid().back(), deg_to_rad(11.25), 1e-15);
    EXPECT_EQ(c.nu, 70000000);
    EXPECT_EQ(c.trials, 12);
    EXPECT_NEAR(c.phi0_for(0.0), 0.3, 0.0);
    EXPECT_DOUBLE_EQ(c.noise.model().visibility, 0.97);
    EXPECT_NEAR(c.noise.model().phase_drift, deg_to_rad(0.01), 1e-18);
    EXPECT_EQ(*c.noise.target_gap, 1.5);
    EXPECT_TRUE(c.dove.deflection_on);
    EXPECT_FALSE(c.dove.compensation_on);
    EXPECT_EQ(c.seed, 12345678901ULL);
    EXPECT_EQ(c.workers, 3);
    ASSERT_EQ(c.pairs.size(), 3u);
    EXPECT_EQ(c.pairs[2], std::make_pair(6, 3));
    EXPECT_EQ(c.probe.kind, ProbeKind::kSuperposition);
    EXPECT_EQ(c.probe.amplitudes().size(), 3u);
    EXPECT_EQ(c.output.dir, "somewhere");
    EXPECT_TRUE(c.output.wants("csv"));
    EXPECT_FALSE(c.output.wants("json"));
}

TEST(Config, SerializeRoundTrip) {
    const ExperimentConfig c = parse_config(kFull);
    EXPECT_EQ(parse_config(serialize_config(c)), c);
    const ExperimentConfig d = parse_config("m: 2\nl: 1\ntheta_true: 0.025 deg\n");
    EXPECT_EQ(parse_config(serialize_config(d)), d);
}

TEST(Config, QuadratureDefault) {
    const ExperimentConfig c = parse_config("m: 2\nl: 1\nphi0: quadrature\n");
    EXPECT_FALSE(c.phi0.has_value());
    const double theta = 1e-3;
    EXPECT_NEAR(std::remainder(8.0 * theta + c.phi0_for(theta) + std::numbers::pi / 2, 2 * std::numbers::pi), 0.0,
                1e-12);
}

TEST(Config, HashIgnoresWorkersAndOutput) {
    ExperimentConfig a = parse_config(kFull);
    ExperimentConfig b = a;
    b.workers = 16;
    b.output.dir = "elsewhere";
    b.output.formats = {"json", "svg"};
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    b.seed += 1;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(ConfigErrors, UnknownKeyNamesLine) {
    const std::string msg = config_error("m: 2\nl: 1\nbogus: 3\n");
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;
}

TEST(ConfigErrors, BadNumberNamesField) {
    const std::string msg = config_error("m: 2\nl: 1\nnoise:\n  visibility: high\n");
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
    EXPECT_NE(msg.find("noise.visibility"), std::string::npos) << msg;
}

TEST(ConfigErrors, DomainErrorMapsBackToLine) {
    const std::string msg = config_error("name: x\nm: 2\nl: 1\nnoise:\n  visibility: 1.5\n");
    EXPECT_NE(msg.find("line 5"), std::string::npos) << msg;
    EXPECT_NE(msg.find("visibility"), std::string::npos) << msg;
}

TEST(ConfigErrors, BadAngleAndSyntax) {
    EXPECT_NE(config_error("theta_true: 3 parsecs\n").find("theta_true"), std::string::npos);
    EXPECT_NE(config_error("m: [2\n").find("line"), std::string::npos);
    EXPECT_NE(config_error("m: 0\n").find("m"), std::string::npos);
    EXPECT_NE(config_error("probe:\n  kind: cat\n").find("probe.kind"), std::string::npos);
}

TEST(ConfigErrors, MissingFile) {
    try {
        load_config("/nonexistent/qswitch.yaml");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    }
}

}  // namespace
}  // namespace qswitch
