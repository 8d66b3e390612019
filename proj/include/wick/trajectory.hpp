// Copyright 2026 The wickprice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wick {

/// Parameter path of an imaginary-time run. Entry k belongs to tau = taus[k];
/// log_norms[k] is log of the norm the unnormalized state would carry.
struct Trajectory {
    double dt = 0.0;
    std::vector<double> taus;
    std::vector<std::vector<double>> thetas;
    std::vector<double> energies;
    std::vector<double> log_norms;

    // Diagnostics.
    std::size_t energy_violations = 0; ///< steps where <H> rose by more than 1e-3 dt
    std::size_t regularization_escalations = 0;
    std::size_t flat_directions = 0;
    std::vector<double> objective_log; ///< final F per Trotter factor

    std::size_t steps() const { return thetas.empty() ? 0 : thetas.size() - 1; }
};

/// Columns: step, tau, theta_0..theta_{N-1}, energy, log_norm.
std::string trajectory_csv(const Trajectory &t);

/// Columns: factor, objective.
std::string objective_csv(const Trajectory &t);

} // namespace wick
