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

#ifndef RMETRO_HARNESS_CLI_HPP
#define RMETRO_HARNESS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rmetro {

/// Exit codes of the command line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// `rmetro <fig2|theorems|nogo|hamiltonian|properties|selftest|designs verify> [options]`.
/// Writes result.csv and meta.json to --out (default $RMETRO_OUT/<id> or
/// out/<id>). Returns 0 when every row passes, 1 when some row fails and 2
/// for usage or configuration errors.
int cli_main(int argc, const char *const *argv);
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace rmetro

#endif
