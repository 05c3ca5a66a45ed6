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

#ifndef NFSEC_RUNNER_HPP
#define NFSEC_RUNNER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nfsec/config.hpp"
#include "nfsec/evaluation.hpp"
#include "nfsec/optimizer.hpp"

namespace nfsec
{
    struct EvalReport
    {
        std::vector<double> bob_rates;
        double sum_rate = 0.0;
        double total_power = 0.0;
        std::vector<double> leakage_ratio;   // per Eve: max_k worst-case |a^H w_k|^2 / Gamma
        std::vector<double> worst_eve_rate;  // per Eve: max_k worst-case eavesdropping rate [bit/s/Hz]
        SecureProbability secure;
    };

    EvalReport evaluate(const Scenario &scenario, const Beamformers &w, std::size_t grid, std::size_t trials,
                        std::uint64_t seed);

    struct PointResult
    {
        std::optional<double> sweep_value;
        Scheme scheme = Scheme::proposed;
        SolveReport solve;
        EvalReport eval;
        std::string error; // non-empty when the point could not be processed
        bool failed() const;
    };

    struct RunOptions
    {
        std::string out_dir = "out";
        std::size_t workers = 1;
        bool write_files = true;
    };

    struct RunSummary
    {
        std::vector<PointResult> points; // sweep-major, schemes in config order
        int exit_code = 0;               // 0 ok, 2 every point failed
    };

    // Runs every (sweep value, scheme) pair on a worker pool; output does not depend on the worker count
    RunSummary run(const ScenarioConfig &config, const RunOptions &options = {});

    // Fixed-width scientific formatting with nine significant digits
    std::string format_number(double value);

} // namespace nfsec

#endif
