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

#ifndef RMETRO_HARNESS_RESULT_TABLE_HPP
#define RMETRO_HARNESS_RESULT_TABLE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace rmetro {

inline constexpr int kResultSchemaVersion = 1;

/// A theory value names the formula that produced it and its arguments so
/// that a loaded table can be re-verified.
struct FormulaRef {
    std::string id = "none";
    std::vector<double> args;
};

struct ResultRow {
    std::string check;
    std::string sweep;
    double empirical = 0;
    double theory = 0;
    double stderr_ = 0;
    FormulaRef formula;
    bool pass = false;
};

using FormulaFn = std::function<double(const std::vector<double> &)>;

/// Maps formula ids to closed-form functions. Ids are stable names such as
/// "design_pure_bound"; "constant" returns its single argument.
class FormulaRegistry {
   public:
    static const FormulaRegistry &instance();

    bool contains(const std::string &id) const;
    /// Throws DomainError for unknown ids or a wrong argument count.
    double evaluate(const FormulaRef &ref) const;
    std::vector<std::string> ids() const;

   private:
    FormulaRegistry();
    struct Entry {
        std::size_t arity;
        FormulaFn fn;
    };
    std::map<std::string, Entry> entries_;
};

double theory(const FormulaRef &ref);

class ResultTable {
   public:
    std::vector<ResultRow> rows;
    /// Free-form metadata copied to the JSON sidecar.
    std::map<std::string, std::string> meta;

    void add(ResultRow row) {
        rows.push_back(std::move(row));
    }
    /// Appends a row whose theory value is computed from `formula`.
    ResultRow &add(const std::string &check, const std::string &sweep, double empirical, const FormulaRef &formula,
                   double stderr_, bool pass);
    void append(const ResultTable &other);

    bool all_pass() const;
    std::size_t passed() const;
    /// Rows whose check name starts with `prefix`.
    std::vector<const ResultRow *> select(const std::string &prefix) const;

    void write_csv(std::ostream &out) const;
    static ResultTable read_csv(std::istream &in);

    /// Recomputes every theory value from its formula; returns the indices of
    /// rows that differ by more than `rel_tol` (relative) or name unknown ids.
    std::vector<std::size_t> verify_formulas(double rel_tol = 1e-12) const;
};

/// Shortest round-trip decimal form of a double ("nan", "inf" for specials).
std::string format_double(double v);

struct RunMetadata {
    std::string command;
    std::string config_text;
    std::string config_hash;
    uint64_t seed = 0;
    std::size_t workers = 1;
    bool quick = false;
    double wall_time_s = 0;
};

/// Writes result.csv and meta.json into `dir` (created if missing).
void write_outputs(const std::string &dir, const ResultTable &table, const RunMetadata &meta);

std::string version_string();

}  // namespace rmetro

#endif
