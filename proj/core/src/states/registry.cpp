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

#include "rmetro/states/registry.hpp"

#include <cmath>
#include <sstream>

#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/states/families.hpp"

namespace rmetro {

namespace {

std::size_t dim_of(const FamilySpec &spec) {
    if (spec.params.count("n")) {
        return std::size_t{1} << spec.get_size("n", 1);
    }
    return spec.get_size("d", 2);
}

}  // namespace

std::string FamilySpec::get(const std::string &key, const std::string &fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string FamilySpec::require(const std::string &key) const {
    auto it = params.find(key);
    if (it == params.end()) {
        throw DomainError("family " + name + ": missing parameter '" + key + "'");
    }
    return it->second;
}

double FamilySpec::get_double(const std::string &key, double fallback) const {
    auto it = params.find(key);
    if (it == params.end()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        double v = std::stod(it->second, &used);
        if (used != it->second.size()) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        throw DomainError("family " + name + ": parameter '" + key + "' is not a number");
    }
}

std::size_t FamilySpec::get_size(const std::string &key, std::size_t fallback) const {
    return static_cast<std::size_t>(get_u64(key, fallback));
}

uint64_t FamilySpec::get_u64(const std::string &key, uint64_t fallback) const {
    auto it = params.find(key);
    if (it == params.end()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(it->second, &used);
        if (used != it->second.size()) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        throw DomainError("family " + name + ": parameter '" + key + "' is not an unsigned integer");
    }
}

FamilyRegistry &FamilyRegistry::instance() {
    static FamilyRegistry registry;
    return registry;
}

FamilyRegistry::FamilyRegistry() {
    factories_["phase_qubit"] = [](const FamilySpec &) { return std::make_shared<PhaseQubitFamily>(); };
    factories_["fidelity_pure"] = [](const FamilySpec &s) {
        const std::size_t d = dim_of(s);
        CVector target = parse_target_state(s.get("target", "basis:0"), d);
        return std::make_shared<FidelityPureFamily>(target, s.get_size("angles", d - 2));
    };
    factories_["ghz_mix"] = [](const FamilySpec &s) { return std::make_shared<GHZMixFamily>(s.get_size("n", 3)); };
    factories_["depolarized_fidelity"] = [](const FamilySpec &s) {
        const std::size_t d = dim_of(s);
        return std::make_shared<DepolarizedFidelityFamily>(parse_target_state(s.get("target", "basis:0"), d));
    };
    factories_["stabilizer_mix"] = [](const FamilySpec &s) {
        return std::make_shared<StabilizerMixFamily>(s.get_size("n", 1));
    };
    factories_["random_pure"] = [](const FamilySpec &s) {
        const std::size_t d = dim_of(s);
        return std::make_shared<RandomPureFamily>(d, s.get_size("m", 2 * (d - 1)), s.get_u64("seed", 1));
    };
    factories_["random_mixed"] = [](const FamilySpec &s) {
        const std::size_t d = dim_of(s);
        const std::size_t r = s.get_size("rank", d);
        return std::make_shared<RandomMixedFamily>(d, r, s.get_size("m", rank_manifold_dimension(d, r)),
                                                   s.get_u64("seed", 1), s.get_double("spread", 1.0));
    };
}

void FamilyRegistry::add(const std::string &name, FamilyFactory factory) {
    std::lock_guard<std::mutex> lock(mu_);
    factories_[name] = std::move(factory);
}

bool FamilyRegistry::contains(const std::string &name) const {
    std::lock_guard<std::mutex> lock(mu_);
    return factories_.count(name) > 0;
}

std::vector<std::string> FamilyRegistry::names() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::string> out;
    for (const auto &kv : factories_) {
        out.push_back(kv.first);
    }
    return out;
}

std::shared_ptr<ParamStateFamily> FamilyRegistry::make(const FamilySpec &spec) const {
    FamilyFactory factory;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = factories_.find(spec.name);
        if (it == factories_.end()) {
            throw DomainError("unknown family '" + spec.name + "'");
        }
        factory = it->second;
    }
    return factory(spec);
}

CVector parse_target_state(const std::string &descriptor, std::size_t d) {
    if (descriptor.rfind("basis:", 0) == 0) {
        return basis_vector(d, std::stoul(descriptor.substr(6)));
    }
    if (descriptor == "ghz") {
        CVector v(d);
        v[0] = v[d - 1] = 1 / std::sqrt(2.0);
        return v;
    }
    if (descriptor == "plus") {
        return CVector(d, cplx(1 / std::sqrt(static_cast<double>(d))));
    }
    if (descriptor == "bloch_symmetric") {
        if (d != 2) {
            throw DomainError("target bloch_symmetric requires d = 2");
        }
        // Bloch vector (1, 1, 1)/sqrt(3).
        const double z = 1 / std::sqrt(3.0);
        const double c = std::sqrt((1 + z) / 2);
        const double s = std::sqrt((1 - z) / 2);
        return {c, s * std::polar(1.0, M_PI / 4)};
    }
    if (descriptor.rfind("random:", 0) == 0) {
        Rng rng(std::stoull(descriptor.substr(7)), 0x746172676574);
        return random_state(d, rng);
    }
    throw DomainError("unknown target state descriptor '" + descriptor + "'");
}

RVector parse_real_list(const std::string &text) {
    RVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) {
            throw DomainError("empty entry in list '" + text + "'");
        }
        item = item.substr(a, b - a + 1);
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size()) {
            throw DomainError("not a number: '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace rmetro
