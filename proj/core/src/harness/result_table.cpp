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

#include "rmetro/harness/result_table.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "json.hpp"
#include "rmetro/designs/moments.hpp"
#include "rmetro/fisher/optimality.hpp"
#include "rmetro/models/hamiltonian.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/shadows/estimators.hpp"
#include "rmetro/states/families.hpp"

namespace rmetro {

namespace {

const char *kCsvHeader = "schema_version,check,sweep,empirical,theory,stderr,formula,formula_args,pass";

std::size_t as_size(double v) {
    return static_cast<std::size_t>(std::llround(v));
}

// Fisher information of the Haar rank-one POVM for the depolarized fidelity
// family, as an integral over tau = |<phi|psi>|^2 with density (d-1)(1-tau)^(d-2).
double haar_fidelity_cfi(double d, double f) {
    auto integrand = [d, f](double tau) {
        const double p = f * tau + (1 - f) * (1 - tau) / (d - 1);
        const double dp = (d * tau - 1) / (d - 1);
        return (d - 1) * std::pow(1 - tau, d - 2) * d * dp * dp / p;
    };
    const double s = (1 - f) / ((d - 1) * f);
    double total = 0;
    double lo = 0;
    for (double hi : {s, 10 * s, 100 * s, 1.0}) {
        hi = std::min(hi, 1.0);
        if (hi > lo) {
            total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 15, 1e-13);
            lo = hi;
        }
    }
    return total;
}

bool needs_quotes(const std::string &s) {
    return s.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_field(const std::string &s) {
    if (!needs_quotes(s)) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); i++) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                i++;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string &s) {
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw DomainError("result table: bad number '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

FormulaRegistry::FormulaRegistry() {
    auto add = [this](const std::string &id, std::size_t arity, FormulaFn fn) {
        entries_[id] = Entry{arity, std::move(fn)};
    };
    add("none", 0, [](const auto &) { return std::numeric_limits<double>::quiet_NaN(); });
    add("constant", 1, [](const auto &a) { return a[0]; });
    add("design_pure_bound", 1, [](const auto &a) { return design_pure_bound(as_size(a[0])); });
    add("lowrank_unitary_bound", 3,
        [](const auto &a) { return lowrank_unitary_bound(as_size(a[0]), a[1], a[2]); });
    add("lowrank_general_bound", 3,
        [](const auto &a) { return lowrank_general_bound(as_size(a[0]), a[1], a[2]); });
    add("well_conditioned_trace_bound", 4, [](const auto &a) {
        return well_conditioned_trace_bound(as_size(a[0]), as_size(a[1]), a[2], as_size(a[3]));
    });
    add("gm_full_bound", 1, [](const auto &a) { return a[0] - 1; });
    add("gm_support_bound", 1, [](const auto &a) { return a[0] - 1; });
    add("gm_offdiag_bound", 2, [](const auto &a) { return a[0] - a[1]; });
    add("local_fidelity_rmse", 3,
        [](const auto &a) { return std::sqrt(local_fidelity_variance(as_size(a[0]), a[1]) / a[2]); });
    add("standard_fidelity_rmse", 3,
        [](const auto &a) { return std::sqrt(standard_fidelity_variance(as_size(a[0]), a[1]) / a[2]); });
    add("ghz_infidelity_symmetric", 3, [](const auto &a) {
        const std::size_t n = as_size(a[0]);
        return 1 - ghz_fidelity(RVector(n, a[1]), RVector(n, a[2]));
    });
    add("local_fidelity_variance", 2, [](const auto &a) { return local_fidelity_variance(as_size(a[0]), a[1]); });
    add("standard_fidelity_variance", 2,
        [](const auto &a) { return standard_fidelity_variance(as_size(a[0]), a[1]); });
    add("pauli_povm_fidelity_cfi", 1, [](const auto &a) { return 2 / (1 + 2 * a[0] * (1 - a[0])); });
    add("fidelity_qfi", 1, [](const auto &a) { return 1 / (a[0] * (1 - a[0])); });
    add("haar_cfi_bound", 2, [](const auto &a) { return 2 * a[0] / std::sqrt(1 - a[1]); });
    add("haar_cfi_quadrature", 2, [](const auto &a) { return haar_fidelity_cfi(a[0], a[1]); });
    add("haar_overlap_cdf", 2, [](const auto &a) { return 1 - std::pow(1 - a[1], a[0] - 1); });
    add("design_frame_potential", 2, [](const auto &a) { return 1 / binomial(as_size(a[0] + a[1] - 1), as_size(a[1])); });
    add("stabilizer_avg_qfim_diag", 1, [](const auto &a) { return 4 * a[0] / (a[0] + 1); });
    add("noisy_lowrank_c", 1, [](const auto &a) { return noisy_lowrank_c(a[0]); });
    add("noisy_bell_qfim_lower", 1, [](const auto &a) { return 4 * (1 - 2 * a[0]) * (1 - 2 * a[0]); });
    add("me_noisy_cfim_bound", 2, [](const auto &a) { return 4 * noisy_design_constant(as_size(a[0]), a[1]); });
    add("stabilizer_noisy_cfim_bound", 2, [](const auto &a) {
        return noisy_design_constant(as_size(a[0]), a[1]) * 4 * a[0] / (a[0] + 1);
    });
    add("wmse_w", 1, [](const auto &a) { return wmse_lower_bound_w(as_size(a[0])); });
}

const FormulaRegistry &FormulaRegistry::instance() {
    static const FormulaRegistry reg;
    return reg;
}

bool FormulaRegistry::contains(const std::string &id) const {
    return entries_.count(id) > 0;
}

double FormulaRegistry::evaluate(const FormulaRef &ref) const {
    auto it = entries_.find(ref.id);
    if (it == entries_.end()) {
        throw DomainError("unknown formula id '" + ref.id + "'");
    }
    if (it->second.arity != ref.args.size()) {
        std::ostringstream ss;
        ss << "formula " << ref.id << " takes " << it->second.arity << " arguments, got " << ref.args.size();
        throw DomainError(ss.str());
    }
    return it->second.fn(ref.args);
}

std::vector<std::string> FormulaRegistry::ids() const {
    std::vector<std::string> out;
    for (const auto &kv : entries_) {
        out.push_back(kv.first);
    }
    return out;
}

double theory(const FormulaRef &ref) {
    return FormulaRegistry::instance().evaluate(ref);
}

ResultRow &ResultTable::add(const std::string &check, const std::string &sweep, double empirical,
                            const FormulaRef &formula, double stderr_, bool pass) {
    ResultRow row;
    row.check = check;
    row.sweep = sweep;
    row.empirical = empirical;
    row.theory = theory(formula);
    row.stderr_ = stderr_;
    row.formula = formula;
    row.pass = pass;
    rows.push_back(std::move(row));
    return rows.back();
}

void ResultTable::append(const ResultTable &other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    for (const auto &kv : other.meta) {
        meta[kv.first] = kv.second;
    }
}

bool ResultTable::all_pass() const {
    return passed() == rows.size();
}

std::size_t ResultTable::passed() const {
    std::size_t n = 0;
    for (const auto &r : rows) {
        n += r.pass ? 1 : 0;
    }
    return n;
}

std::vector<const ResultRow *> ResultTable::select(const std::string &prefix) const {
    std::vector<const ResultRow *> out;
    for (const auto &r : rows) {
        if (r.check.rfind(prefix, 0) == 0) {
            out.push_back(&r);
        }
    }
    return out;
}

void ResultTable::write_csv(std::ostream &out) const {
    out << kCsvHeader << '\n';
    for (const auto &r : rows) {
        std::string args;
        for (std::size_t k = 0; k < r.formula.args.size(); k++) {
            args += (k ? ";" : "") + format_double(r.formula.args[k]);
        }
        out << kResultSchemaVersion << ',' << csv_field(r.check) << ',' << csv_field(r.sweep) << ','
            << format_double(r.empirical) << ',' << format_double(r.theory) << ',' << format_double(r.stderr_) << ','
            << csv_field(r.formula.id) << ',' << args << ',' << (r.pass ? "true" : "false") << '\n';
    }
}

ResultTable ResultTable::read_csv(std::istream &in) {
    ResultTable t;
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw DomainError("result table: unexpected header row");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 9) {
            throw DomainError("result table: line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                              " fields");
        }
        if (f[0] != std::to_string(kResultSchemaVersion)) {
            throw DomainError("result table: unsupported schema version '" + f[0] + "'");
        }
        ResultRow r;
        r.check = f[1];
        r.sweep = f[2];
        r.empirical = parse_double(f[3]);
        r.theory = parse_double(f[4]);
        r.stderr_ = parse_double(f[5]);
        r.formula.id = f[6];
        if (!f[7].empty()) {
            std::istringstream args(f[7]);
            std::string a;
            while (std::getline(args, a, ';')) {
                r.formula.args.push_back(parse_double(a));
            }
        }
        r.pass = f[8] == "true";
        t.rows.push_back(std::move(r));
    }
    return t;
}

std::vector<std::size_t> ResultTable::verify_formulas(double rel_tol) const {
    std::vector<std::size_t> bad;
    const auto &reg = FormulaRegistry::instance();
    for (std::size_t k = 0; k < rows.size(); k++) {
        const auto &r = rows[k];
        if (!reg.contains(r.formula.id)) {
            bad.push_back(k);
            continue;
        }
        const double v = reg.evaluate(r.formula);
        const bool same = (std::isnan(v) && std::isnan(r.theory)) ||
                          std::abs(v - r.theory) <= rel_tol * std::max(1.0, std::abs(v));
        if (!same) {
            bad.push_back(k);
        }
    }
    return bad;
}

std::string version_string() {
    return "rmetro 0.1.0";
}

void write_outputs(const std::string &dir, const ResultTable &table, const RunMetadata &meta) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(std::filesystem::path(dir) / "result.csv", std::ios::binary);
        if (!csv) {
            throw DomainError("cannot write " + dir + "/result.csv");
        }
        table.write_csv(csv);
    }
    nlohmann::ordered_json j;
    j["version"] = version_string();
    j["schema_version"] = kResultSchemaVersion;
    j["command"] = meta.command;
    j["seed"] = meta.seed;
    j["rng"] = "philox4x64-10; stream = (seed, domain, path...) with one stream per shot, batch and draw";
    j["config_hash"] = meta.config_hash;
    j["config"] = meta.config_text;
    j["workers"] = meta.workers;
    j["quick"] = meta.quick;
    j["wall_time_s"] = meta.wall_time_s;
    j["rows"] = table.rows.size();
    j["passed"] = table.passed();
    j["failed"] = table.rows.size() - table.passed();
    j["all_pass"] = table.all_pass();
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    for (const auto &kv : table.meta) {
        extra[kv.first] = kv.second;
    }
    j["metadata"] = extra;
    std::ofstream js(std::filesystem::path(dir) / "meta.json", std::ios::binary);
    js << j.dump(2) << '\n';
}

}  // namespace rmetro
