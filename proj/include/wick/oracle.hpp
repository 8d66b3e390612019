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
#include <optional>
#include <string>
#include <vector>

#include "wick/fin_hamiltonian.hpp"
#include "wick/statevector.hpp"

namespace wick {

/// Standard normal CDF.
double normal_cdf(double x);

struct BsQuote {
    double price = 0.0;
    bool at_expiry = false; ///< t >= T: payoff returned
};

/// European call value at calendar time t and spot S.
BsQuote bs_call_quote(const MarketParams &m, double spot, double t);
double bs_analytic_call(const MarketParams &m, double spot, double t);

struct Propagated {
    StateVector state; ///< unit norm
    double log_norm = 0.0; ///< log ||e^{-tau H} psi0||
};

/// e^{-tau H} psi0 by eigendecomposition. H must be Hermitian (1e-10).
Propagated exact_propagate(const Eigen::MatrixXcd &h, const StateVector &psi0, double tau);
Propagated exact_propagate(const Eigen::MatrixXd &h, const StateVector &psi0, double tau);

enum class FdKind {
    /// v_tau = v_xx + (k - 1) v_x - k v,  k = 2r/sigma^2, tau in [0, sigma^2 T / 2];
    /// v = O / K as a function of x = log(S/K).
    BsmRescaled,
    /// u_s = (sigma^2/2) (kappa(T - s) - x)^2 u_xx, s in [0, T], u(0, x) = max(x, 0);
    /// the average-rate call is S0 * u(T, kappa(0) - e^{-rT} K / S0).
    Asian,
};

enum class FdBoundary {
    Asymptotic, ///< ghost values from the far-field behaviour of the kernel
    Zero,
};

struct FdConfig {
    FdKind kind = FdKind::BsmRescaled;
    int order = 2; ///< spatial order, 2 or 4
    FdBoundary boundary = FdBoundary::Asymptotic;
    /// Replace the kinked payoff by its cell average under the Kreiss
    /// Phi4 kernel (BSM only); restores the design order near the strike.
    bool smooth_payoff = false;
    /// Keep every k-th slice (0 keeps only the first and last).
    std::size_t record_every = 0;
    /// Overrides the payoff as initial data when set.
    std::optional<Eigen::VectorXd> initial;
};

struct FdSolution {
    Eigen::VectorXd x;
    std::vector<double> times; ///< solver time of each kept slice
    std::vector<Eigen::VectorXd> values;
    double dt = 0.0;
    std::size_t n_steps = 0;
};

/// Largest stable step for the configuration and the smallest N_T that respects it.
std::size_t fd_min_steps(const FdConfig &cfg, const MarketParams &m, const Grid &g);

/// Forward Euler in time, central differences in space. Refuses with
/// StabilityError when n_steps is below fd_min_steps.
FdSolution fd_solve(const FdConfig &cfg, const MarketParams &m, const Grid &g, std::size_t n_steps);

/// Phi4-smoothed max(e^{x_j} - 1, 0) with cell width eps.
Eigen::VectorXd smoothed_call_payoff(const Eigen::VectorXd &x, double eps);

/// Average-rate call value from an Asian fd solution, interpolated in x.
double asian_price_from_fd(const FdSolution &sol, const MarketParams &m, double spot);

struct ErrorReport {
    double l2 = 0.0;
    double mse = 0.0;
    Eigen::VectorXd residuals; ///< a_hat - b_hat
};

/// Compares the curves after scaling each to unit L2 norm.
ErrorReport compare(const Eigen::VectorXd &a, const Eigen::VectorXd &b);
double l2_error(const Eigen::VectorXd &a, const Eigen::VectorXd &b);
double mse(const Eigen::VectorXd &a, const Eigen::VectorXd &b);

/// ||a - b|| / ||b|| without normalization.
double relative_l2(const Eigen::VectorXd &a, const Eigen::VectorXd &b);

/// "x,value" rows for one slice.
std::string slice_csv(const Eigen::VectorXd &x, const Eigen::VectorXd &values);

} // namespace wick
