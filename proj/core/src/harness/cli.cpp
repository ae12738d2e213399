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

#include "rmetro/harness/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"

namespace rmetro {

namespace {

using Runner = std::function<ResultTable(const ExperimentConfig &, const RunOptions &)>;

struct Common {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out_dir;
    std::size_t workers = 1;
    bool quick = false;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--config", c.config_path, "Experiment configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "Override experiment.seed");
    cmd->add_option("--out", c.out_dir, "Output directory (default $RMETRO_OUT/<id> or out/<id>)");
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--quick", c.quick, "Reduced shot and batch counts");
}

std::string output_dir(const Common &c, const std::string &id) {
    if (!c.out_dir.empty()) {
        return c.out_dir;
    }
    const char *env = std::getenv("RMETRO_OUT");
    const std::string base = env && *env ? env : "out";
    return base + "/" + id;
}

int run(const std::string &id, const Common &c, const Runner &runner,
        const std::map<std::string, std::string> &overrides, const std::string &command, std::ostream &out) {
    ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig::parse(default_config_text(id))
                                                  : ExperimentConfig::load(c.config_path);
    if (cfg.id() != id) {
        throw ConfigError("experiment.id", "config is for '" + cfg.id() + "', expected '" + id + "'");
    }
    if (c.seed) {
        cfg.set("experiment.seed", std::to_string(*c.seed));
    }
    for (const auto &[k, v] : overrides) {
        cfg.set(k, v);
    }
    RunOptions opt;
    opt.workers = c.workers;
    opt.quick = c.quick;

    const auto start = std::chrono::steady_clock::now();
    const ResultTable table = runner(cfg, opt);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    RunMetadata meta;
    meta.command = command;
    meta.config_text = cfg.serialize();
    meta.config_hash = cfg.hash_hex();
    meta.seed = cfg.seed();
    meta.workers = opt.workers;
    meta.quick = opt.quick;
    meta.wall_time_s = wall;
    const std::string dir = output_dir(c, id);
    write_outputs(dir, table, meta);

    for (const auto &row : table.rows) {
        out << (row.pass ? "PASS " : "FAIL ") << row.check << " [" << row.sweep << "] empirical=" << format_double(row.empirical)
            << " theory=" << format_double(row.theory) << '\n';
    }
    out << id << ": " << table.passed() << "/" << table.rows.size() << " rows pass; wrote " << dir << "/result.csv\n";
    return table.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Randomized-measurement metrology experiments", "rmetro"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    struct Sub {
        const char *name;
        const char *help;
        Runner runner;
    };
    const std::vector<Sub> subs = {
        {"fig2", "Local versus standard shadow fidelity estimation", run_fig2},
        {"theorems", "Near-optimality constants against guaranteed bounds", run_theorem_sweep},
        {"nogo", "Pauli and Haar measurements on depolarized states", run_nogo_sweep},
        {"hamiltonian", "Hamiltonian estimation checks", run_hamiltonian_checks},
        {"properties", "Invariant-based property checks", run_property_suite},
        {"selftest", "Fast closed-form sanity checks", run_selftest},
    };
    std::map<std::string, Common> commons;
    std::map<std::string, CLI::App *> cmds;
    for (const auto &s : subs) {
        CLI::App *cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, commons[s.name]);
        cmds[s.name] = cmd;
    }
    CLI::App *designs = app.add_subcommand("designs", "Design measurement checks");
    designs->require_subcommand(1);
    CLI::App *verify = designs->add_subcommand("verify", "Moments, identities, sampler and MSEM oracle");
    Common &dc = commons["designs"];
    add_common(verify, dc);
    std::string ensemble;
    std::optional<uint64_t> t;
    verify->add_option("--ensemble", ensemble,
                       "all | pauli1q | clifford1 | clifford2 | stabilizer1..3 | clifford3-sampled");
    verify->add_option("--t", t, "Moment order (1-3)")->check(CLI::Range(1, 3));

    if (!args.empty() && !args[0].empty() && args[0][0] != '-' && app.get_subcommand_no_throw(args[0]) == nullptr) {
        err << "error: unknown subcommand '" << args[0] << "'\n" << app.help();
        return kExitUsage;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::CallForVersion &) {
        out << version_string() << '\n';
        return kExitPass;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::string command = "rmetro";
    for (const auto &a : args) {
        command += " " + a;
    }
    try {
        for (const auto &s : subs) {
            if (cmds[s.name]->parsed()) {
                return run(s.name, commons[s.name], s.runner, {}, command, out);
            }
        }
        std::map<std::string, std::string> overrides;
        if (!ensemble.empty()) {
            overrides["designs.ensemble"] = ensemble;
        }
        if (t) {
            overrides["designs.t"] = std::to_string(*t);
        }
        return run("designs", dc, run_design_checks, overrides, command, out);
    } catch (const ConfigError &e) {
        err << "config error at " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cli_main(int argc, const char *const *argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; i++) {
        args.emplace_back(argv[i]);
    }
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace rmetro
