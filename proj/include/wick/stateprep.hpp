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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wick/ansatz.hpp"
#include "wick/fin_hamiltonian.hpp"

namespace wick {

/// How the transformed payoff w_j = max(S_j - K, 0) e^{-zeta x_j} / K is
/// loaded into amplitudes.
enum class Encoding {
    /// amplitude_j = alpha0 * w_j. Linear in the option value, so it
    /// commutes with the (linear) propagator. Default.
    Amplitude,
    /// amplitude_j = sqrt(alpha0 * w_j), i.e. w read as a probability.
    SqrtProbability,
};

std::string encoding_name(Encoding e);
Encoding encoding_from_name(const std::string &name);

struct TargetState {
    Grid grid;
    Eigen::VectorXd amplitudes; ///< real, nonnegative, unit norm
    double alpha0 = 0.0;        ///< amplitude (or probability) scale
    Encoding encoding = Encoding::Amplitude;
};

/// Raises DegenerateTargetError when no grid point lies above the strike.
TargetState payoff_state(const MarketParams &m, const Grid &g, Encoding enc = Encoding::Amplitude);

/// |<target|psi>|^2 for a unit-norm psi.
double fidelity(const TargetState &target, const StateVector &psi);
double fidelity(const TargetState &target, const AnsatzSpec &spec, std::span<const double> theta);

struct FitConfig {
    unsigned starts = 8;
    unsigned max_sweeps = 200;
    double tol = 1e-10; ///< stop a start when a sweep gains less than this
    std::uint64_t seed = 7;
    double floor = 0.99;

    void validate() const;
};

struct FitResult {
    std::vector<double> theta;
    double fidelity = 0.0;
    bool below_floor = false; ///< warning, not failure
    unsigned best_start = 0;
    /// Best fidelity seen after each sweep, across starts in order; non-decreasing.
    std::vector<double> history;
};

/// Maximizes |<target|psi(theta)>|^2 by rotosolve sweeps. Start 0 is
/// theta = 0; the rest are uniform in [-pi, pi) from mt19937_64(seed + s).
FitResult fit(const AnsatzSpec &spec, const TargetState &target, const FitConfig &cfg = {});

/// One coordinate update for f(a) = A + B cos(a - a0) + C sin(a - a0)
/// from probes at a0 and a0 +- pi/2; returns the maximizing angle.
double sinusoid_argmax(double f0, double f_plus, double f_minus, double a0);

nlohmann::json to_json(const FitConfig &c);
FitConfig fit_config_from_json(const nlohmann::json &j);

} // namespace wick
