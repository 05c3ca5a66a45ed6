// SPDX-License-Identifier: Apache-2.0
//
// nfsec: robust near-field secure beamforming for extremely large arrays
// Copyright (C) 2026 The nfsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <vector>

#include "nfsec/array_geometry.hpp"
#include "nfsec/conic.hpp"
#include "nfsec/csv_error.hpp"
#include "nfsec/evaluation.hpp"
#include "nfsec/optimizer.hpp"
#include "nfsec/robust_lmi.hpp"

using namespace nfsec;

namespace
{
    Eigen::VectorXcd random_beam(std::size_t n, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g;
        Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = {g(rng), g(rng)};
        return v / v.norm();
    }

    Scenario evaluation_scenario(std::size_t n)
    {
        return Scenario(ArrayGeometry::from_frequency(n, 30e9), {{50.0, 2.5}, {50.0, -2.5}},
                        {{{10.0, 0.5}, 0.1}, {{10.0, -0.5}, 0.1}}, 0.05, 1.0, 1.0, 1e-9);
    }
}

static void BM_SteeringVector(benchmark::State &state)
{
    const ArrayGeometry geo = ArrayGeometry::from_frequency(static_cast<std::size_t>(state.range(0)), 30e9);
    const PolarLocation p(0.05, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(steering_vector(p, geo));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SteeringVector)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_SteeringInner(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const ArrayGeometry geo = ArrayGeometry::from_frequency(n, 30e9);
    const Eigen::VectorXcd w = random_beam(n, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(steering_inner(geo, 0.05, 10.0, w));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SteeringInner)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_MaxCsvErrorOverDisc(benchmark::State &state)
{
    const ArrayGeometry geo = ArrayGeometry::from_frequency(256, 30e9);
    const LocationUncertainty u({10.0, 0.5}, 0.1, 0.05);
    const auto res = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(max_csv_error_over_disc(u, geo, res));
}
BENCHMARK(BM_MaxCsvErrorOverDisc)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_WorstCaseLeakage(benchmark::State &state)
{
    const ArrayGeometry geo = ArrayGeometry::from_frequency(256, 30e9);
    const LocationUncertainty u({10.0, 0.5}, 0.1, 0.05);
    const std::vector<Eigen::VectorXcd> w{random_beam(256, 2), random_beam(256, 3)};
    const auto res = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(worst_case_leakage(w, u, geo, res));
}
BENCHMARK(BM_WorstCaseLeakage)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_SecureProbability(benchmark::State &state)
{
    const Scenario sc = evaluation_scenario(256);
    const std::vector<Eigen::VectorXcd> w{random_beam(256, 4), random_beam(256, 5)};
    const auto trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(secure_probability(w, sc, trials, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SecureProbability)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

// One SCA-style subproblem: power cone plus refined blocks for every cell
static void BM_RefinedConicSolve(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const ArrayGeometry geo = ArrayGeometry::from_frequency(n, 30e9);
    const LocationUncertainty u({10.0, 0.5}, 0.1, 0.05);
    const auto cells = partition_region(u, n);
    const Eigen::VectorXcd c = random_beam(n, 6);

    conic::ConicProgram p;
    const conic::ComplexVector w = p.add_complex_vector(n);
    std::vector<conic::LinearExpr> xs;
    for (std::size_t i = 0; i < n; ++i)
        xs.push_back(conic::LinearExpr::variable(w.re(i)));
    for (std::size_t i = 0; i < n; ++i)
        xs.push_back(conic::LinearExpr::variable(w.im(i)));
    p.add_soc(conic::LinearExpr(1.0), xs);
    for (const auto &cell : cells)
        add_refined_constraint(p, ThresholdForm{1e-3, 0.0, std::nullopt}, refined_cell_model(cell, geo), w);
    p.set_objective(w.inner(c).re);

    const conic::ConicSolver solver(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(solver.solve());
    state.counters["cells"] = static_cast<double>(cells.size());
}
BENCHMARK(BM_RefinedConicSolve)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_SolveProposed(benchmark::State &state)
{
    const Scenario sc = evaluation_scenario(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_scheme(sc, Scheme::proposed));
}
BENCHMARK(BM_SolveProposed)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
