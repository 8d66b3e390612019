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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "json.hpp"
#include "wick/ansatz.hpp"
#include "wick/trajectory.hpp"

namespace wick {

/// Factors e^{-s lambda_k h_k}, k in canonical order, repeated per slice.
struct TrotterPlan {
    std::vector<PauliTerm> factors; ///< K * N entries, slice-major
    std::size_t terms_per_slice = 0;
    std::size_t slices = 0;
    double step = 0.0; ///< s = tau / N
};

TrotterPlan plan(const PauliSum &h, double tau, std::size_t n_slices);

/// Dense product of all plan factors, first factor applied first.
Eigen::MatrixXcd plan_matrix(const TrotterPlan &p);

struct SweepConfig {
    unsigned sweeps = 2;
    double tol = 1e-9;
    std::uint64_t seed = 0; ///< recorded for reproducibility; sweeps are deterministic

    void validate() const;
};

/// cosh(s lambda) Re<prev|psi(alpha)> - sinh(s lambda) Re<prev|h|psi(alpha)>.
double objective_F(const AnsatzSpec &spec, std::span<const double> theta_prev,
                   std::span<const double> alpha, const PauliTerm &term, double s);

struct RotosolveResult {
    double alpha = 0.0;
    bool flat = false;
};

/// Two-probe sinusoidal update. f is sinusoidal in alpha with the given
/// period and no offset; f_alpha = f(alpha), f_quarter = f(alpha + period/4).
/// The arctan branch is resolved by evaluating f at alpha* and alpha* + period/2.
RotosolveResult rotosolve_step(double f_alpha, double f_quarter, double alpha,
                               const std::function<double(double)> &f,
                               double period = 2.0 * 3.14159265358979323846);

struct AbsorbResult {
    std::vector<double> theta;
    double objective = 0.0;
    std::vector<double> objective_trace; ///< F after every accepted or rejected update
    std::size_t flat = 0;
};

/// Maximizes F over theta by coordinate sweeps starting from theta_prev.
AbsorbResult absorb_term(const AnsatzSpec &spec, std::span<const double> theta_prev,
                         const PauliTerm &term, double s, const SweepConfig &cfg = {});

/// Absorbs every factor of plan(h, tau, n_slices); records state after each slice.
Trajectory evolve_trotter(const AnsatzSpec &spec, std::span<const double> theta0, const PauliSum &h,
                          double tau, std::size_t n_slices, const SweepConfig &cfg = {});

nlohmann::json to_json(const SweepConfig &c);
SweepConfig sweep_config_from_json(const nlohmann::json &j);

} // namespace wick
