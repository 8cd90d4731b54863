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

#include "qswitch/config.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qswitch/metrology.h"

namespace qswitch {

namespace {

[[noreturn]] void config_fail(const YAML::Node &node, const std::string &field, const std::string &msg) {
    const YAML::Mark mark = node.Mark();
    std::string where = mark.line >= 0 ? "line " + std::to_string(mark.line + 1) + ", " : "";
    fail(ErrorKind::kConfig, where + "field " + field + ": " + msg);
}

[[noreturn]] void field_fail(const std::string &field, const std::string &msg) {
    fail(ErrorKind::kConfig, "field " + field + ": " + msg);
}

std::string scalar(const YAML::Node &n, const std::string &field) {
    if (!n.IsScalar()) {
        config_fail(n, field, "expected a scalar");
    }
    return n.Scalar();
}

double as_double(const YAML::Node &n, const std::string &field) {
    const std::string s = scalar(n, field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        config_fail(n, field, "expected a number, got '" + s + "'");
    }
    return v;
}

std::int64_t as_int(const YAML::Node &n, const std::string &field) {
    const double v = as_double(n, field);
    if (v != std::floor(v) || std::abs(v) > 9007199254740992.0) {
        config_fail(n, field, "expected an integer");
    }
    return static_cast<std::int64_t>(v);
}

std::uint64_t as_uint64(const YAML::Node &n, const std::string &field) {
    const std::string s = scalar(n, field);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        config_fail(n, field, "expected an unsigned 64-bit integer");
    }
    return v;
}

bool as_bool(const YAML::Node &n, const std::string &field) {
    const std::string s = scalar(n, field);
    if (s == "true") return true;
    if (s == "false") return false;
    config_fail(n, field, "expected true or false");
}

Angle as_angle(const YAML::Node &n, const std::string &field) {
    const auto a = parse_angle(scalar(n, field));
    if (!a) {
        config_fail(n, field, "expected an angle such as '0.025 deg', '90 arcsec' or '1e-3 rad'");
    }
    return *a;
}

void check_keys(const YAML::Node &n, const std::string &section, const std::set<std::string> &allowed) {
    if (!n.IsMap()) {
        config_fail(n, section, "expected a mapping");
    }
    for (const auto &kv : n) {
        const std::string key = kv.first.Scalar();
        if (!allowed.contains(key)) {
            config_fail(kv.first, section.empty() ? key : section + "." + key, "unknown key");
        }
    }
}

// Line of every key, by dotted path, so that domain errors found after parsing
// still point at the file.
void collect_lines(const YAML::Node &n, const std::string &prefix, std::map<std::string, int> &out) {
    if (!n.IsMap()) {
        return;
    }
    for (const auto &kv : n) {
        const std::string key = prefix.empty() ? kv.first.Scalar() : prefix + "." + kv.first.Scalar();
        out[key] = kv.first.Mark().line + 1;
        collect_lines(kv.second, key, out);
    }
}

std::string join(const std::string &section, const char *key) {
    return section.empty() ? std::string(key) : section + "." + key;
}

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

void check_pair(int m, int l, const std::string &field) {
    if (m < 2 || m % 2 != 0) {
        field_fail(field, "m must be a positive even integer (m/2 Dove prism pairs)");
    }
    if (l < 1) {
        field_fail(field, "l must be a positive integer");
    }
}

}  // namespace

std::vector<double> ThetaSweep::grid() const {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(std::max(steps, 0)));
    const double a = start.rad();
    const double b = end.rad();
    for (int i = 0; i < steps; ++i) {
        g.push_back(steps == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    return g;
}

NoiseModel NoiseConfig::model() const {
    return {visibility, jitter.rad(), phase_drift.rad(), efficiency};
}

std::vector<OamAmplitude> ProbeConfig::amplitudes() const {
    std::vector<OamAmplitude> out;
    const double a = 1.0 / std::sqrt(static_cast<double>(indices.size()));
    for (int k : indices) {
        out.push_back({k, a});
    }
    return out;
}

bool OutputConfig::wants(std::string_view format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

void ExperimentConfig::validate() const {
    check_pair(m, l, "m/l");
    if (theta_true && !(std::abs(theta_true->rad()) < std::numbers::pi)) {
        field_fail("theta_true", "must lie in (-pi, pi)");
    }
    if (theta_sweep) {
        if (theta_sweep->steps < 2) {
            field_fail("theta_sweep.steps", "needs at least 2 points");
        }
        if (!(theta_sweep->end.rad() > theta_sweep->start.rad())) {
            field_fail("theta_sweep", "end must be greater than start");
        }
    }
    if (nu < 1) {
        field_fail("nu", "photon count must be at least 1");
    }
    if (trials < 1) {
        field_fail("trials", "must be at least 1");
    }
    if (workers < 1 || workers > 256) {
        field_fail("workers", "must lie in [1, 256]");
    }
    try {
        noise.model().validate();
    } catch (const Error &e) {
        const std::string what = e.what();
        const auto colon = what.rfind(": ");
        const std::string tail = colon == std::string::npos ? what : what.substr(colon + 2);
        std::string key = tail.substr(0, tail.find(' '));
        if (key == "phase") {
            key = "phase_drift";
        }
        field_fail("noise." + key, tail);
    }
    if (noise.target_gap && !(*noise.target_gap >= 1.0)) {
        field_fail("noise.target_gap", "gap factor must be at least 1");
    }
    if (!(dove.rho > 0.0 && dove.rho <= 1.0)) {
        field_fail("dove.rho", "amplitude ratio must lie in (0, 1]");
    }
    for (const auto &[pm, pl] : pairs) {
        check_pair(pm, pl, "pairs");
    }
    if (probe.indices.empty()) {
        field_fail("probe.indices", "needs at least one OAM index");
    }
    if (probe.kind == ProbeKind::kEigenstate && probe.indices.size() != 1) {
        field_fail("probe.indices", "an eigenstate probe takes exactly one index");
    }
    for (const std::string &f : output.formats) {
        if (f != "csv" && f != "json" && f != "svg") {
            field_fail("output.formats", "unknown format '" + f + "' (csv, json, svg)");
        }
    }
}

double ExperimentConfig::phi0_for(double theta) const {
    return phi0 ? phi0->rad() : quadrature_phi0(m, l, theta);
}

ExperimentConfig parse_config(const std::string &text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception &e) {
        fail(ErrorKind::kConfig, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    ExperimentConfig c;
    if (!root || root.IsNull()) {
        c.validate();
        return c;
    }
    check_keys(root, "", {"name", "m", "l", "theta_true", "theta_sweep", "nu", "trials", "phi0", "noise", "dove",
                          "seed", "workers", "pairs", "probe", "output"});
    try {
        if (auto n = root["name"]) c.name = scalar(n, "name");
        if (auto n = root["m"]) c.m = static_cast<int>(as_int(n, "m"));
        if (auto n = root["l"]) c.l = static_cast<int>(as_int(n, "l"));
        if (auto n = root["theta_true"]) c.theta_true = as_angle(n, "theta_true");
        if (auto n = root["theta_sweep"]) {
            check_keys(n, "theta_sweep", {"start", "end", "steps"});
            ThetaSweep s;
            for (const char *k : {"start", "end", "steps"}) {
                if (!n[k]) config_fail(n, join("theta_sweep", k), "missing");
            }
            s.start = as_angle(n["start"], "theta_sweep.start");
            s.end = as_angle(n["end"], "theta_sweep.end");
            s.steps = static_cast<int>(as_int(n["steps"], "theta_sweep.steps"));
            c.theta_sweep = s;
        }
        if (auto n = root["nu"]) c.nu = as_int(n, "nu");
        if (auto n = root["trials"]) c.trials = static_cast<int>(as_int(n, "trials"));
        if (auto n = root["phi0"]) {
            if (scalar(n, "phi0") == "quadrature") {
                c.phi0.reset();
            } else {
                c.phi0 = as_angle(n, "phi0");
            }
        }
        if (auto n = root["noise"]) {
            check_keys(n, "noise", {"visibility", "jitter", "phase_drift", "efficiency", "target_gap"});
            if (auto v = n["visibility"]) c.noise.visibility = as_double(v, "noise.visibility");
            if (auto v = n["jitter"]) c.noise.jitter = as_angle(v, "noise.jitter");
            if (auto v = n["phase_drift"]) c.noise.phase_drift = as_angle(v, "noise.phase_drift");
            if (auto v = n["efficiency"]) c.noise.efficiency = as_double(v, "noise.efficiency");
            if (auto v = n["target_gap"]) c.noise.target_gap = as_double(v, "noise.target_gap");
        }
        if (auto n = root["dove"]) {
            check_keys(n, "dove", {"delta", "rho", "alpha0", "deflection_on", "compensation_on"});
            if (auto v = n["delta"]) c.dove.delta = as_double(v, "dove.delta");
            if (auto v = n["rho"]) c.dove.rho = as_double(v, "dove.rho");
            if (auto v = n["alpha0"]) c.dove.alpha0 = as_double(v, "dove.alpha0");
            if (auto v = n["deflection_on"]) c.dove.deflection_on = as_bool(v, "dove.deflection_on");
            if (auto v = n["compensation_on"]) c.dove.compensation_on = as_bool(v, "dove.compensation_on");
        }
        if (auto n = root["seed"]) c.seed = as_uint64(n, "seed");
        if (auto n = root["workers"]) c.workers = static_cast<int>(as_int(n, "workers"));
        if (auto n = root["pairs"]) {
            if (!n.IsSequence()) config_fail(n, "pairs", "expected a list of [m, l]");
            for (const auto &p : n) {
                if (!p.IsSequence() || p.size() != 2) config_fail(p, "pairs", "each entry must be [m, l]");
                c.pairs.emplace_back(static_cast<int>(as_int(p[0], "pairs")), static_cast<int>(as_int(p[1], "pairs")));
            }
        }
        if (auto n = root["probe"]) {
            check_keys(n, "probe", {"kind", "indices"});
            if (auto v = n["kind"]) {
                const std::string k = scalar(v, "probe.kind");
                if (k == "eigenstate") {
                    c.probe.kind = ProbeKind::kEigenstate;
                } else if (k == "superposition") {
                    c.probe.kind = ProbeKind::kSuperposition;
                } else {
                    config_fail(v, "probe.kind", "expected eigenstate or superposition");
                }
            }
            if (auto v = n["indices"]) {
                if (!v.IsSequence()) config_fail(v, "probe.indices", "expected a list of integers");
                c.probe.indices.clear();
                for (const auto &i : v) c.probe.indices.push_back(static_cast<int>(as_int(i, "probe.indices")));
            }
        }
        if (auto n = root["output"]) {
            check_keys(n, "output", {"dir", "formats"});
            if (auto v = n["dir"]) c.output.dir = scalar(v, "output.dir");
            if (auto v = n["formats"]) {
                if (!v.IsSequence()) config_fail(v, "output.formats", "expected a list");
                c.output.formats.clear();
                for (const auto &f : v) c.output.formats.push_back(scalar(f, "output.formats"));
            }
        }
    } catch (const YAML::Exception &e) {
        fail(ErrorKind::kConfig, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    try {
        c.validate();
    } catch (const Error &e) {
        std::map<std::string, int> lines;
        collect_lines(root, "", lines);
        const std::string msg = e.what();
        const std::string tag = "field ";
        if (const auto at = msg.find(tag); at != std::string::npos) {
            const auto begin = at + tag.size();
            std::string field = msg.substr(begin, msg.find(':', begin) - begin);
            if (field == "m/l") {
                field = "m";
            }
            while (!field.empty()) {
                if (auto it = lines.find(field); it != lines.end()) {
                    fail(ErrorKind::kConfig, "line " + std::to_string(it->second) + ", " + msg);
                }
                const auto dot = field.rfind('.');
                field = dot == std::string::npos ? "" : field.substr(0, dot);
            }
        }
        throw;
    }
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::kConfig, "cannot open config file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig &c) {
    std::ostringstream os;
    const auto b = [](bool v) { return v ? "true" : "false"; };
    os << "name: " << quoted(c.name) << "\n";
    os << "m: " << c.m << "\n";
    os << "l: " << c.l << "\n";
    if (c.theta_true) {
        os << "theta_true: " << format_angle(*c.theta_true) << "\n";
    }
    if (c.theta_sweep) {
        os << "theta_sweep:\n";
        os << "  start: " << format_angle(c.theta_sweep->start) << "\n";
        os << "  end: " << format_angle(c.theta_sweep->end) << "\n";
        os << "  steps: " << c.theta_sweep->steps << "\n";
    }
    os << "nu: " << c.nu << "\n";
    os << "trials: " << c.trials << "\n";
    os << "phi0: " << (c.phi0 ? format_angle(*c.phi0) : std::string("quadrature")) << "\n";
    os << "noise:\n";
    os << "  visibility: " << format_double(c.noise.visibility) << "\n";
    os << "  jitter: " << format_angle(c.noise.jitter) << "\n";
    os << "  phase_drift: " << format_angle(c.noise.phase_drift) << "\n";
    os << "  efficiency: " << format_double(c.noise.efficiency) << "\n";
    if (c.noise.target_gap) {
        os << "  target_gap: " << format_double(*c.noise.target_gap) << "\n";
    }
    os << "dove:\n";
    os << "  delta: " << format_double(c.dove.delta) << "\n";
    os << "  rho: " << format_double(c.dove.rho) << "\n";
    os << "  alpha0: " << format_double(c.dove.alpha0) << "\n";
    os << "  deflection_on: " << b(c.dove.deflection_on) << "\n";
    os << "  compensation_on: " << b(c.dove.compensation_on) << "\n";
    os << "seed: " << c.seed << "\n";
    os << "workers: " << c.workers << "\n";
    if (!c.pairs.empty()) {
        os << "pairs: [";
        for (std::size_t i = 0; i < c.pairs.size(); ++i) {
            os << (i ? ", " : "") << "[" << c.pairs[i].first << ", " << c.pairs[i].second << "]";
        }
        os << "]\n";
    }
    os << "probe:\n";
    os << "  kind: " << (c.probe.kind == ProbeKind::kEigenstate ? "eigenstate" : "superposition") << "\n";
    os << "  indices: [";
    for (std::size_t i = 0; i < c.probe.indices.size(); ++i) {
        os << (i ? ", " : "") << c.probe.indices[i];
    }
    os << "]\n";
    os << "output:\n";
    os << "  dir: " << quoted(c.output.dir) << "\n";
    os << "  formats: [";
    for (std::size_t i = 0; i < c.output.formats.size(); ++i) {
        os << (i ? ", " : "") << c.output.formats[i];
    }
    os << "]\n";
    return os.str();
}

std::string config_hash(const ExperimentConfig &c) {
    ExperimentConfig physics = c;
    physics.workers = 1;
    physics.output = OutputConfig{};
    const std::string s = serialize_config(physics);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qswitch
