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


#include <benchmark/benchmark.h>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/designs/moments.hpp"
#include "rmetro/designs/povm.hpp"
#include "rmetro/designs/tableau.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/shadows/estimators.hpp"
#include "rmetro/shadows/snapshot.hpp"
#include "rmetro/states/families.hpp"

namespace {

using namespace rmetro;

void BM_Eigh(benchmark::State &state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const CMatrix h = random_hermitian(d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigh(h));
    }
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(8)->Arg(16);

void BM_Qfim(benchmark::State &state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    RandomMixedFamily fam(d, d, d * d - 1, 3);
    const RVector theta(d * d - 1, 0.0);
    const CMatrix rho = fam.eval(theta);
    const auto drho = fam.derivs(theta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfim(rho, drho));
    }
}
BENCHMARK(BM_Qfim)->Arg(2)->Arg(4)->Arg(8);

void BM_CfimStabilizerDesign(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t d = std::size_t{1} << n;
    const RankOnePOVM m = stabilizer_povm(n);
    RandomPureFamily fam(d, 2 * (d - 1), 5);
    const RVector theta(2 * (d - 1), 0.0);
    const CMatrix rho = fam.eval(theta);
    const auto drho = fam.derivs(theta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfim(rho, drho, m));
    }
    state.SetLabel(std::to_string(m.size()) + " outcomes");
}
BENCHMARK(BM_CfimStabilizerDesign)->Arg(1)->Arg(2)->Arg(3);

void BM_RandomCliffordTableau(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_clifford_tableau(n, rng));
    }
}
BENCHMARK(BM_RandomCliffordTableau)->Arg(1)->Arg(3)->Arg(8);

void BM_TableauColumn(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(9);
    const Tableau t = random_clifford_tableau(n, rng);
    std::size_t x = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tableau_column(t, x));
        x = (x + 1) & ((std::size_t{1} << n) - 1);
    }
}
BENCHMARK(BM_TableauColumn)->Arg(3)->Arg(6);

void BM_MomentT3(benchmark::State &state) {
    const RankOnePOVM m = stabilizer_povm(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moment_t(m, 3));
    }
}
BENCHMARK(BM_MomentT3)->Unit(benchmark::kMillisecond);

void BM_SimulateDataset(benchmark::State &state) {
    GHZMixFamily fam(3);
    const CMatrix rho = fam.eval({0.1, 0.1, 0.1});
    const auto shots = static_cast<std::size_t>(state.range(0));
    uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_dataset(rho, 3, shots, seed++));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(shots));
}
BENCHMARK(BM_SimulateDataset)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Algorithm1(benchmark::State &state) {
    GHZMixFamily fam(3);
    const CVector target = fam.ket({0.075, 0.075, 0.075});
    const auto states = simulate_dataset(fam.eval({0.15, 0.15, 0.15}), 3, 5000, 11).states();
    for (auto _ : state) {
        benchmark::DoNotOptimize(algorithm1_fidelity(states, target, fam));
    }
}
BENCHMARK(BM_Algorithm1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
