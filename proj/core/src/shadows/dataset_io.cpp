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


#include "rmetro/shadows/dataset_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "rmetro/designs/tableau.hpp"
#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

constexpr const char *kFormat = "rmetro-shadow-dataset";
constexpr int kVersion = 1;

GateKind gate_kind(const std::string &name) {
    static const std::map<std::string, GateKind> kinds{
        {"H", GateKind::H}, {"S", GateKind::S}, {"SDG", GateKind::Sdg},   {"X", GateKind::X},
        {"Y", GateKind::Y}, {"Z", GateKind::Z}, {"CNOT", GateKind::CNOT}, {"CZ", GateKind::CZ},
    };
    auto it = kinds.find(name);
    if (it == kinds.end()) {
        throw DomainError("unknown gate '" + name + "'");
    }
    return it->second;
}

}  // namespace

std::string gates_to_string(const std::vector<Gate> &gates) {
    std::string s;
    for (std::size_t i = 0; i < gates.size(); i++) {
        if (i) {
            s += ';';
        }
        s += to_string(gates[i]);
    }
    return s;
}

std::vector<Gate> gates_from_string(const std::string &s) {
    std::vector<Gate> out;
    std::stringstream all(s);
    std::string item;
    while (std::getline(all, item, ';')) {
        std::istringstream in(item);
        std::string name;
        if (!(in >> name)) {
            continue;
        }
        Gate g{gate_kind(name), 0, 0};
        if (!(in >> g.a)) {
            throw DomainError("gate '" + item + "' is missing its qubit");
        }
        if ((g.kind == GateKind::CNOT || g.kind == GateKind::CZ) && !(in >> g.b)) {
            throw DomainError("gate '" + item + "' is missing its second qubit");
        }
        out.push_back(g);
    }
    return out;
}

void write_dataset(std::ostream &out, const ShadowDataset &ds) {
    nlohmann::json header{{"format", kFormat}, {"version", kVersion}, {"qubits", ds.qubits},
                          {"ensemble", ds.ensemble}, {"seed", ds.seed}, {"shots", ds.size()}};
    out << header.dump() << '\n';
    std::vector<std::string> cache(ds.unitaries.size());
    for (std::size_t i = 0; i < ds.size(); i++) {
        const ShadowSnapshot &s = ds.snapshots[i];
        std::string &g = cache.at(s.unitary_id);
        if (g.empty()) {
            g = gates_to_string(synthesize(ds.unitaries[s.unitary_id]));
        }
        out << nlohmann::json{{"shot", i}, {"unitary", g}, {"outcome", s.outcome}}.dump() << '\n';
    }
}

ShadowDataset read_dataset(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DomainError("read_dataset: empty input");
    }
    const nlohmann::json header = nlohmann::json::parse(line);
    if (header.value("format", "") != kFormat || header.value("version", 0) != kVersion) {
        throw DomainError("read_dataset: not an rmetro shadow dataset (version " + std::to_string(kVersion) + ")");
    }
    ShadowDataset ds;
    ds.qubits = header.at("qubits").get<std::size_t>();
    ds.ensemble = header.at("ensemble").get<std::string>();
    ds.seed = header.at("seed").get<uint64_t>();
    const std::size_t shots = header.at("shots").get<std::size_t>();
    std::map<std::string, uint64_t> pool;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const nlohmann::json rec = nlohmann::json::parse(line);
        const std::size_t shot = rec.at("shot").get<std::size_t>();
        if (shot != ds.snapshots.size()) {
            throw DomainError("read_dataset: shot " + std::to_string(shot) + " out of order");
        }
        const std::string g = rec.at("unitary").get<std::string>();
        auto it = pool.find(g);
        if (it == pool.end()) {
            it = pool.emplace(g, ds.unitaries.size()).first;
            ds.unitaries.push_back(Tableau::from_gates(ds.qubits, gates_from_string(g)));
        }
        const uint32_t x = rec.at("outcome").get<uint32_t>();
        if (x >= ds.dim()) {
            throw DomainError("read_dataset: outcome out of range at shot " + std::to_string(shot));
        }
        ds.snapshots.push_back({it->second, x});
    }
    if (ds.snapshots.size() != shots) {
        throw DomainError("read_dataset: header announces " + std::to_string(shots) + " shots, found " +
                          std::to_string(ds.snapshots.size()));
    }
    return ds;
}

void write_dataset_file(const std::string &path, const ShadowDataset &ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write_dataset(out, ds);
}

ShadowDataset read_dataset_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_dataset(in);
}

}  // namespace rmetro
