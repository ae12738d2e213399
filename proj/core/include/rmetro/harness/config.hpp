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

#ifndef RMETRO_HARNESS_CONFIG_HPP
#define RMETRO_HARNESS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

/// Invalid or missing configuration value; `field` is the dotted path.
struct ConfigError : DomainError {
    ConfigError(std::string field_path, const std::string &what)
        : DomainError(field_path + ": " + what), field(std::move(field_path)) {
    }
    std::string field;
};

/// INI-style experiment configuration: `key = value` lines grouped in
/// `[section]` blocks, addressed as "section.key". Every config needs
/// `experiment.id` and `experiment.seed`.
class ExperimentConfig {
   public:
    ExperimentConfig() = default;

    static ExperimentConfig parse(const std::string &text);
    static ExperimentConfig load(const std::string &path);

    /// Canonical text form; parse(serialize()) == *this.
    std::string serialize() const;
    /// FNV-1a 64 of serialize().
    uint64_t hash() const;
    std::string hash_hex() const;

    std::string id() const;
    uint64_t seed() const;

    bool has(const std::string &path) const;
    std::string get_string(const std::string &path, const std::string &fallback) const;
    std::string require_string(const std::string &path) const;
    double get_double(const std::string &path, double fallback) const;
    uint64_t get_u64(const std::string &path, uint64_t fallback) const;
    bool get_bool(const std::string &path, bool fallback) const;
    /// Comma separated numbers.
    std::vector<double> get_doubles(const std::string &path, const std::vector<double> &fallback) const;
    std::vector<uint64_t> get_u64s(const std::string &path, const std::vector<uint64_t> &fallback) const;

    void set(const std::string &path, const std::string &value);

    const boost::property_tree::ptree &tree() const {
        return tree_;
    }
    bool operator==(const ExperimentConfig &o) const {
        return tree_ == o.tree_;
    }

   private:
    void validate() const;

    boost::property_tree::ptree tree_;
};

uint64_t fnv1a64(const std::string &bytes);

}  // namespace rmetro

#endif
