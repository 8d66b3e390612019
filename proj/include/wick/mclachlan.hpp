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

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "json.hpp"
#include "wick/hadamard_test.hpp"
#include "wick/trajectory.hpp"

namespace wick {

struct EvolutionConfig {
    double total_tau = 1.0;
    std::size_t n_steps = 100;
    double lambda_reg = 1e-6;
    double lambda_max = 1e-2;
    MeasureMode mode;

    double dt() const { return total_tau / static_cast<double>(n_steps); }
    void validate() const;
};

/// A_ij = Re(<d_i psi|d_j psi>); symmetric with A_ii = 1/4.
Eigen::MatrixXd build_A(const AnsatzSpec &spec, std::span<const double> theta,
                        MeasureMode mode = MeasureMode::exact());

/// C_i = -Re(sum_k lambda_k <d_i psi|h_k|psi>).
Eigen::VectorXd build_C(const AnsatzSpec &spec, std::span<const double> theta, const PauliSum &h,
                        MeasureMode mode = MeasureMode::exact());

struct StepResult {
    std::vector<double> theta;
    double lambda_used = 0.0;
    unsigned escalations = 0;
};

/// Solves (A + lambda I) thetadot = C by LDLT, escalating lambda by 10x up
/// to lambda_max; returns theta + thetadot * dt.
StepResult step(std::span<const double> theta, const Eigen::MatrixXd &A, const Eigen::VectorXd &C,
                double dt, double lambda_reg = 1e-6, double lambda_max = 1e-2);

/// N_T explicit Euler steps of A thetadot = C under e^{-tau H}.
Trajectory evolve(const AnsatzSpec &spec, std::span<const double> theta0, const PauliSum &h,
                  const EvolutionConfig &cfg);

nlohmann::json to_json(const EvolutionConfig &c);
EvolutionConfig evolution_config_from_json(const nlohmann::json &j);

} // namespace wick
