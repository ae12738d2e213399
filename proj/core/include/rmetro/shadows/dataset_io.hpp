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


#ifndef RMETRO_SHADOWS_DATASET_IO_HPP
#define RMETRO_SHADOWS_DATASET_IO_HPP

#include <iosfwd>
#include <string>

#include "rmetro/shadows/snapshot.hpp"

namespace rmetro {

/// Line-delimited JSON: a header object (format, version, qubits, ensemble,
/// seed, shots) followed by one object per shot {shot, unitary, outcome}
/// where `unitary` is a gate list such as "H 0;S 1;CNOT 0 1".
void write_dataset(std::ostream &out, const ShadowDataset &ds);
ShadowDataset read_dataset(std::istream &in);
void write_dataset_file(const std::string &path, const ShadowDataset &ds);
ShadowDataset read_dataset_file(const std::string &path);

std::string gates_to_string(const std::vector<Gate> &gates);
std::vector<Gate> gates_from_string(const std::string &s);

}  // namespace rmetro

#endif
