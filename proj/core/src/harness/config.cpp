// Copyright 2026 The rmetro Authors
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

#include "rmetro/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

namespace rmetro {

namespace pt = boost::property_tree;

uint64_t fnv1a64(const std::string &bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ExperimentConfig ExperimentConfig::parse(const std::string &text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    try {
        pt::read_ini(in, cfg.tree_);
    } catch (const pt::ini_parser_error &e) {
        std::ostringstream ss;
        ss << "line " << e.line();
        throw ConfigError(ss.str(), e.message());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, "cannot open config file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream out;
    pt::write_ini(out, tree_);
    return out.str();
}

uint64_t ExperimentConfig::hash() const {
    return fnv1a64(serialize());
}

std::string ExperimentConfig::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

void ExperimentConfig::validate() const {
    require_string("experiment.id");
    require_string("experiment.seed");
    seed();
}

std::string ExperimentConfig::id() const {
    return require_string("experiment.id");
}

uint64_t ExperimentConfig::seed() const {
    const std::string s = require_string("experiment.seed");
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used, 0);
        if (used != s.size() || s.front() == '-') {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError("experiment.seed", "expected an unsigned 64-bit integer, got '" + s + "'");
    }
}

bool ExperimentConfig::has(const std::string &path) const {
    return static_cast<bool>(tree_.get_optional<std::string>(path));
}

std::string ExperimentConfig::get_string(const std::string &path, const std::string &fallback) const {
    auto v = tree_.get_optional<std::string>(path);
    return v ? boost::trim_copy(*v) : fallback;
}

std::string ExperimentConfig::require_string(const std::string &path) const {
    auto v = tree_.get_optional<std::string>(path);
    if (!v || boost::trim_copy(*v).empty()) {
        throw ConfigError(path, "required field is missing");
    }
    return boost::trim_copy(*v);
}

double ExperimentConfig::get_double(const std::string &path, double fallback) const {
    if (!has(path)) {
        return fallback;
    }
    const std::string s = get_string(path, "");
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(path, "expected a number, got '" + s + "'");
    }
}

uint64_t ExperimentConfig::get_u64(const std::string &path, uint64_t fallback) const {
    if (!has(path)) {
        return fallback;
    }
    const std::string s = get_string(path, "");
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used, 0);
        if (used != s.size() || s.empty() || s.front() == '-') {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(path, "expected an unsigned integer, got '" + s + "'");
    }
}

bool ExperimentConfig::get_bool(const std::string &path, bool fallback) const {
    if (!has(path)) {
        return fallback;
    }
    const std::string s = boost::to_lower_copy(get_string(path, ""));
    if (s == "true" || s == "yes" || s == "1" || s == "on") {
        return true;
    }
    if (s == "false" || s == "no" || s == "0" || s == "off") {
        return false;
    }
    throw ConfigError(path, "expected a boolean, got '" + s + "'");
}

std::vector<double> ExperimentConfig::get_doubles(const std::string &path, const std::vector<double> &fallback) const {
    if (!has(path)) {
        return fallback;
    }
    std::vector<std::string> parts;
    const std::string s = get_string(path, "");
    boost::split(parts, s, boost::is_any_of(","));
    std::vector<double> out;
    for (auto &p : parts) {
        boost::trim(p);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(p, &used));
            if (used != p.size()) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            throw ConfigError(path, "expected a comma separated list of numbers, got '" + s + "'");
        }
    }
    return out;
}

std::vector<uint64_t> ExperimentConfig::get_u64s(const std::string &path,
                                                 const std::vector<uint64_t> &fallback) const {
    if (!has(path)) {
        return fallback;
    }
    std::vector<uint64_t> out;
    for (double v : get_doubles(path, {})) {
        if (v < 0 || v != static_cast<double>(static_cast<uint64_t>(v))) {
            throw ConfigError(path, "expected non-negative integers");
        }
        out.push_back(static_cast<uint64_t>(v));
    }
    return out;
}

void ExperimentConfig::set(const std::string &path, const std::string &value) {
    tree_.put(path, value);
}

}  // namespace rmetro
