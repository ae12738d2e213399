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


// Acceptance suite: one PASS/FAIL line per criterion. Each criterion runs the
// corresponding experiment with its built-in default configuration and
// requires every row in its selection to pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmetro/harness/config.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/harness/result_table.hpp"

namespace {

using rmetro::ExperimentConfig;
using rmetro::ResultRow;
using rmetro::ResultTable;
using rmetro::RunOptions;

using Runner = ResultTable (*)(const ExperimentConfig &, const RunOptions &);

// Rows are picked by check-name prefix and, optionally, a sweep substring.
struct Selector {
    std::string check;
    std::string sweep;
};

struct Criterion {
    int number;
    std::string title;
    std::string experiment;
    Runner runner;
    std::vector<Selector> rows;
    double time_limit_s = 0;
};

struct Outcome {
    bool pass = true;
    std::size_t rows = 0;
    std::size_t passed = 0;
    std::vector<std::string> notes;
};

std::string describe(const ResultRow &r) {
    std::ostringstream ss;
    ss << r.check << " [" << r.sweep << "] empirical=" << rmetro::format_double(r.empirical)
       << " theory=" << rmetro::format_double(r.theory) << " stderr=" << rmetro::format_double(r.stderr_);
    return ss.str();
}

Outcome evaluate(const ResultTable &table, const std::vector<Selector> &selectors) {
    Outcome out;
    for (const Selector &sel : selectors) {
        std::size_t matched = 0;
        for (const ResultRow &r : table.rows) {
            if (r.check.rfind(sel.check, 0) != 0 || r.sweep.find(sel.sweep) == std::string::npos) {
                continue;
            }
            matched++;
            out.rows++;
            if (r.pass) {
                out.passed++;
            } else {
                out.pass = false;
                out.notes.push_back("failed row: " + describe(r));
            }
        }
        if (matched == 0) {
            out.pass = false;
            out.notes.push_back("no rows for " + sel.check + (sel.sweep.empty() ? "" : " / " + sel.sweep));
        }
    }
    const auto bad = table.verify_formulas();
    if (!bad.empty()) {
        out.pass = false;
        out.notes.push_back(std::to_string(bad.size()) + " rows disagree with their recorded formula");
    }
    return out;
}

std::string csv_of(const ResultTable &t) {
    std::ostringstream ss;
    t.write_csv(ss);
    return ss.str();
}

void report(int number, const std::string &title, const Outcome &o, double seconds) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << o.passed << "/"
              << o.rows << " rows, " << rmetro::format_double(std::round(seconds * 10) / 10) << " s)\n";
    for (const auto &n : o.notes) {
        std::cout << "    " << n << '\n';
    }
    std::cout.flush();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Acceptance suite"};
    std::size_t workers = rmetro::default_workers();
    bool quick = false;
    std::vector<int> only;
    app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--quick", quick, "Reduced sample counts (not the acceptance configuration)");
    app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 7));
    CLI11_PARSE(app, argc, argv);
    const RunOptions opt{workers, quick};

    const std::vector<Criterion> criteria = {
        {1,
         "three-qubit fidelity estimation: infidelities to 4 decimals, RMSEs within 3 bootstrap SE of theory, "
         "local below standard",
         "fig2",
         rmetro::run_fig2,
         {{"fig2_infidelity", ""}, {"fig2_rmse_local", ""}, {"fig2_rmse_standard", ""}, {"fig2_local_below_standard", ""}}},
        {2,
         "design CFIM of the phase qubit is 2/3; near-optimality ratio >= (d+2)/(4(d+1)) at d = 2 and 4",
         "theorems",
         rmetro::run_theorem_sweep,
         {{"pure_phase_cfim", "d=2"},
          {"pure_phase_ratio", "d=2"},
          {"pure_random_min_ratio", "d=2 draws=50"},
          {"pure_random_min_ratio", "d=4 draws=50"},
          {"pure_merged_vs_enumerated", "d=4"}},
         300},
        {3,
         "closed-form MSEM matches the enumerated single-qubit design for 20 pairs",
         "designs",
         rmetro::run_design_checks,
         {{"design_msem_oracle", "clifford1 d=2 pairs=20"}}},
        {4,
         "design moments, design identities and the sampled three-qubit Clifford frame",
         "designs",
         rmetro::run_design_checks,
         {{"design_moment_gap", "pauli1q t=3"},
          {"design_moment_gap", "clifford1 t=3"},
          {"design_identity_gap", ""},
          {"design_sampled_frame", "n=3"}}},
        {5,
         "Pauli CFI closed form, ratio limit, Haar CFI bound and overlap KS test",
         "nogo",
         rmetro::run_nogo_sweep,
         {{"nogo_pauli_cfi", ""},
          {"nogo_pauli_ratio_limit", "f=0.999"},
          {"nogo_haar_cfi_bound", "d=2"},
          {"nogo_haar_cfi_bound", "d=4"},
          {"nogo_haar_cfi_bound", "d=8"},
          {"nogo_overlap_ks_pvalue", ""}}},
        {6,
         "Hamiltonian QFIMs, noisy Bell formula on 20 channels and low-rank certification",
         "hamiltonian",
         rmetro::run_hamiltonian_checks,
         {{"ham_me_qfim_offset", ""},
          {"ham_stabilizer_avg_qfim_exact", "n=1"},
          {"ham_stabilizer_avg_qfim_mc_max_z", "n=2"},
          {"ham_noisy_bell_vs_generic", "n=1 channels=20"},
          {"ham_noisy_bell_vs_generic", "n=2 channels=20"},
          {"ham_lowrank_c_me", "q=0.01"},
          {"ham_lowrank_c_me", "q=0.05"},
          {"ham_lowrank_c_me", "q=0.1"},
          {"ham_lowrank_c_stabilizer", ""}}},
        {7,
         "QCRB, Gill-Massar variants, snapshot unbiasedness, optimal estimator, byte-exact rerun",
         "properties",
         rmetro::run_property_suite,
         {{"qcrb_psd", ""},
          {"gm_full", ""},
          {"gm_support_excess", ""},
          {"gm_offdiag_excess", ""},
          {"snapshot_unbiased_max_z", ""},
          {"optimal_estimator_max_z", ""},
          {"determinism_workers", ""}}},
    };

    // Both design criteria share one run.
    std::map<std::string, ResultTable> cache;
    std::map<std::string, double> timing;
    bool all = true;
    for (const Criterion &c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end()) {
            continue;
        }
        Outcome o;
        try {
            const ExperimentConfig cfg = ExperimentConfig::parse(rmetro::default_config_text(c.experiment));
            if (!cache.count(c.experiment)) {
                const auto t0 = std::chrono::steady_clock::now();
                cache[c.experiment] = c.runner(cfg, opt);
                timing[c.experiment] =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            }
            o = evaluate(cache[c.experiment], c.rows);
            if (c.time_limit_s > 0 && timing[c.experiment] > c.time_limit_s) {
                o.pass = false;
                o.notes.push_back("runtime " + rmetro::format_double(timing[c.experiment]) + " s exceeds " +
                                  rmetro::format_double(c.time_limit_s) + " s");
            }
            if (c.number == 7) {
                // Second run with a different worker count must reproduce the table byte for byte.
                const RunOptions other{workers == 1 ? std::size_t{3} : std::size_t{1}, quick};
                const std::string again = csv_of(c.runner(cfg, other));
                if (again != csv_of(cache[c.experiment])) {
                    o.pass = false;
                    o.notes.push_back("second run produced a different CSV");
                } else {
                    o.notes.push_back("second run byte-identical (" + std::to_string(again.size()) + " bytes)");
                }
            }
        } catch (const std::exception &e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        report(c.number, c.title, o, timing[c.experiment]);
        all = all && o.pass;
    }
    if (quick) {
        std::cout << "note: --quick uses reduced sample counts; the acceptance configuration is the default\n";
    }
    std::cout << (all ? "acceptance: all criteria pass" : "acceptance: some criteria fail") << '\n';
    return all ? 0 : 1;
}
