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

#ifndef RMETRO_STATES_REGISTRY_HPP
#define RMETRO_STATES_REGISTRY_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rmetro/states/family.hpp"

namespace rmetro {

/// A family name plus string-valued construction parameters, as found in a
/// config section.
struct FamilySpec {
    std::string name;
    std::map<std::string, std::string> params;

    std::string get(const std::string &key, const std::string &fallback) const;
    std::string require(const std::string &key) const;
    double get_double(const std::string &key, double fallback) const;
    std::size_t get_size(const std::string &key, std::size_t fallback) const;
    uint64_t get_u64(const std::string &key, uint64_t fallback) const;
};

using FamilyFactory = std::function<std::shared_ptr<ParamStateFamily>(const FamilySpec &)>;

/// Name -> factory map. Built-in state families are present on first use;
/// other modules add theirs with add().
class FamilyRegistry {
   public:
    static FamilyRegistry &instance();

    void add(const std::string &name, FamilyFactory factory);
    bool contains(const std::string &name) const;
    std::vector<std::string> names() const;
    /// Throws DomainError for unknown names.
    std::shared_ptr<ParamStateFamily> make(const FamilySpec &spec) const;

   private:
    FamilyRegistry();

    mutable std::mutex mu_;
    std::map<std::string, FamilyFactory> factories_;
};

/// Parses a target-state descriptor: "basis:<k>", "ghz", "plus", "bloch_symmetric"
/// (d = 2 only) or "random:<seed>".
CVector parse_target_state(const std::string &descriptor, std::size_t d);

/// Comma separated doubles.
RVector parse_real_list(const std::string &text);

}  // namespace rmetro

#endif
