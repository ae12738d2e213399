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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rmetro/harness/cli.hpp"
#include "rmetro/harness/config.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/harness/result_table.hpp"
#include "rmetro/qmath/errors.hpp"

#ifndef RMETRO_SOURCE_DIR
#error "RMETRO_SOURCE_DIR must point at the source tree"
#endif

namespace rmetro {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string &name) {
    fs::path p = fs::path(::testing::TempDir()) / ("rmetro_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::vector<std::string> &args, std::string *err_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    if (err_text) {
        *err_text = err.str();
    }
    return code;
}

const std::vector<std::string> kExperiments = {"fig2",    "theorems",   "nogo",    "hamiltonian",
                                               "designs", "properties", "selftest"};

TEST(Config, ParseAndRoundTrip) {
    const auto cfg = ExperimentConfig::parse(
        "# comment\n[experiment]\nid = nogo\nseed = 12\n\n[nogo]\nf_grid = 0.9, 0.99\ndims = 2,4\nquick = true\n");
    EXPECT_EQ(cfg.id(), "nogo");
    EXPECT_EQ(cfg.seed(), 12u);
    EXPECT_EQ(cfg.get_doubles("nogo.f_grid", {}), (std::vector<double>{0.9, 0.99}));
    EXPECT_EQ(cfg.get_u64s("nogo.dims", {}), (std::vector<uint64_t>{2, 4}));
    EXPECT_TRUE(cfg.get_bool("nogo.quick", false));
    EXPECT_EQ(cfg.get_double("nogo.missing", 1.5), 1.5);
    const auto back = ExperimentConfig::parse(cfg.serialize());
    EXPECT_EQ(back, cfg);
    EXPECT_EQ(back.hash(), cfg.hash());
    EXPECT_EQ(cfg.hash_hex().size(), 16u);
}

TEST(Config, ErrorsCarryFieldPath) {
    try {
        ExperimentConfig::parse("[experiment]\nid = nogo\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.field, "experiment.seed");
    }
    const auto cfg = ExperimentConfig::parse("[experiment]\nid = x\nseed = 1\n[a]\nb = oops\n");
    try {
        cfg.get_double("a.b", 0);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.field, "a.b");
    }
    EXPECT_THROW(ExperimentConfig::parse("[experiment]\nid = x\nseed = -3\n"), ConfigError);
}

// FNV-1a 64 reference values.
TEST(Config, Fnv1a) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

// The shipped config files and the defaults compiled into the library agree.
TEST(Config, ShippedFilesMatchBuiltInDefaults) {
    for (const auto &id : kExperiments) {
        const fs::path path = fs::path(RMETRO_SOURCE_DIR) / "configs" / (id + ".cfg");
        ASSERT_TRUE(fs::exists(path)) << path;
        EXPECT_EQ(slurp(path), default_config_text(id)) << id;
        const auto cfg = ExperimentConfig::load(path.string());
        EXPECT_EQ(cfg.id(), id);
    }
    EXPECT_THROW(default_config_text("nope"), ConfigError);
}

TEST(Formulas, ClosedForms) {
    EXPECT_NEAR(theory({"design_pure_bound", {2}}), 1.0 / 3.0, 1e-15);
    // 2 / (1 + 2 f (1 - f))
    EXPECT_NEAR(theory({"pauli_povm_fidelity_cfi", {0.9}}), 2 / (1 + 2 * 0.9 * 0.1), 1e-14);
    // 2d / sqrt(1 - f)
    EXPECT_NEAR(theory({"haar_cfi_bound", {4, 0.99}}), 8 / std::sqrt(0.01), 1e-10);
    EXPECT_NEAR(theory({"constant", {2.5}}), 2.5, 0);
    EXPECT_THROW(theory({"nope", {}}), DomainError);
    EXPECT_THROW(theory({"constant", {}}), DomainError);
}

TEST(ResultTable, CsvRoundTripAndFormulaCheck) {
    ResultTable t;
    t.add("a_check", "d=2, \"quoted\"", 0.1 + 0.2, {"design_pure_bound", {2}}, 1e-3, true);
    t.add("b_check", "x", std::nan(""), {"none", {}}, 0, false);
    t.add("c_check", "y", 1e300, {"constant", {-0.0}}, 0, true);
    std::stringstream buf;
    t.write_csv(buf);
    const ResultTable back = ResultTable::read_csv(buf);
    ASSERT_EQ(back.rows.size(), 3u);
    EXPECT_EQ(back.rows[0].sweep, t.rows[0].sweep);
    EXPECT_EQ(back.rows[0].empirical, 0.1 + 0.2);
    EXPECT_TRUE(std::isnan(back.rows[1].empirical));
    EXPECT_FALSE(back.rows[1].pass);
    EXPECT_EQ(back.rows[2].formula.id, "constant");
    EXPECT_TRUE(back.verify_formulas().empty());
    EXPECT_EQ(back.passed(), 2u);
    EXPECT_FALSE(back.all_pass());
    EXPECT_EQ(back.select("b_").size(), 1u);

    ResultTable tampered = back;
    tampered.rows[0].theory = 0.5;
    EXPECT_EQ(tampered.verify_formulas(), std::vector<std::size_t>{0});
}

TEST(ResultTable, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 6.02214076e23}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(format_double(INFINITY), "inf");
}

TEST(Parallel, ForCoversEveryIndexOnce) {
    std::vector<int> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (int h : hits) {
        EXPECT_EQ(h, 1);
    }
    EXPECT_GE(default_workers(), 1u);
}

TEST(Parallel, Statistics) {
    const std::vector<double> v{1, 2, 3, 4};
    const SampleStats s = sample_stats(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.stderr_, std::sqrt(5.0 / 12.0));
    EXPECT_EQ(s.n, 4u);
    EXPECT_DOUBLE_EQ(pairwise_sum(v), 10);
    EXPECT_DOUBLE_EQ(rmse(v), std::sqrt(30.0 / 4));
    EXPECT_DOUBLE_EQ(z_score(3, 1, 0.5), 4);
    EXPECT_EQ(z_score(1, 1, 0), 0);
    EXPECT_TRUE(std::isinf(z_score(2, 1, 0)));
}

TEST(Parallel, BootstrapIsSeededAndShrinks) {
    Rng gen(5);
    std::vector<double> small(100), large(10000);
    for (auto &x : small) x = gen.normal();
    for (auto &x : large) x = gen.normal();
    Rng a(1), b(1), c(1);
    const double sa = bootstrap_rmse_stderr(small, 200, a);
    EXPECT_EQ(sa, bootstrap_rmse_stderr(small, 200, b));
    const double sl = bootstrap_rmse_stderr(large, 200, c);
    // Standard error of an RMSE of N unit normals is about 1/sqrt(2N).
    EXPECT_NEAR(sa, 1 / std::sqrt(200.0), 0.5 / std::sqrt(200.0));
    EXPECT_LT(sl, sa / 5);
}

TEST(Experiments, SelftestPasses) {
    const auto cfg = ExperimentConfig::parse(default_config_text("selftest"));
    const ResultTable t = run_selftest(cfg, {});
    EXPECT_TRUE(t.all_pass());
    EXPECT_GT(t.rows.size(), 10u);
    EXPECT_TRUE(t.verify_formulas().empty());
}

TEST(Experiments, BadSectionValuesAreConfigErrors) {
    auto cfg = ExperimentConfig::parse(default_config_text("fig2"));
    cfg.set("fig2.subsample", "sometimes");
    EXPECT_THROW(run_fig2(cfg, {1, true}), ConfigError);
    auto nogo = ExperimentConfig::parse(default_config_text("nogo"));
    nogo.set("nogo.f_grid", "0.5, 1.5");
    EXPECT_THROW(run_nogo_sweep(nogo, {1, true}), ConfigError);
}

TEST(Cli, ExitCodes) {
    std::string err;
    EXPECT_EQ(run_cli({"bogus"}, &err), kExitUsage);
    EXPECT_NE(err.find("unknown subcommand 'bogus'"), std::string::npos) << err;
    EXPECT_EQ(run_cli({}, &err), kExitUsage);
    EXPECT_EQ(run_cli({"--help"}), kExitPass);
    EXPECT_EQ(run_cli({"--version"}), kExitPass);
    EXPECT_EQ(run_cli({"selftest", "--config", "/no/such/file.cfg"}, &err), kExitUsage);
    EXPECT_EQ(run_cli({"designs", "verify", "--t", "7"}, &err), kExitUsage);
}

TEST(Cli, InvalidConfigReportsFieldPath) {
    const fs::path dir = scratch("badcfg");
    {
        std::ofstream f(dir / "bad.cfg");
        f << "[experiment]\nid = selftest\nseed = twelve\n";
    }
    std::string err;
    EXPECT_EQ(run_cli({"selftest", "--config", (dir / "bad.cfg").string(), "--out", dir.string()}, &err), kExitUsage);
    EXPECT_NE(err.find("config error at experiment.seed"), std::string::npos) << err;
    {
        std::ofstream f(dir / "wrong.cfg");
        f << "[experiment]\nid = nogo\nseed = 1\n";
    }
    EXPECT_EQ(run_cli({"selftest", "--config", (dir / "wrong.cfg").string(), "--out", dir.string()}, &err),
              kExitUsage);
    EXPECT_NE(err.find("experiment.id"), std::string::npos) << err;
}

TEST(Cli, SelftestWritesOutputs) {
    const fs::path dir = scratch("selftest");
    EXPECT_EQ(run_cli({"selftest", "--out", dir.string()}), kExitPass);
    EXPECT_TRUE(fs::exists(dir / "result.csv"));
    EXPECT_TRUE(fs::exists(dir / "meta.json"));
    std::ifstream csv(dir / "result.csv");
    const ResultTable back = ResultTable::read_csv(csv);
    EXPECT_TRUE(back.all_pass());
    EXPECT_TRUE(back.verify_formulas().empty());
}

TEST(Cli, Fig2RunsAreByteIdentical) {
    const fs::path a = scratch("fig2_a"), b = scratch("fig2_b");
    const std::string cfg = (fs::path(RMETRO_SOURCE_DIR) / "configs" / "fig2.cfg").string();
    run_cli({"fig2", "--config", cfg, "--seed", "42", "--quick", "--out", a.string()});
    run_cli({"fig2", "--config", cfg, "--seed", "42", "--quick", "--out", b.string(), "--workers", "3"});
    const std::string ca = slurp(a / "result.csv");
    EXPECT_FALSE(ca.empty());
    EXPECT_EQ(ca, slurp(b / "result.csv"));
}

}  // namespace
}  // namespace rmetro
