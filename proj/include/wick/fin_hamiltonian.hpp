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

#include "wick/pauli.hpp"

namespace wick {

/// Black-Scholes market. mu is carried for reference only; pricing is
/// risk-neutral.
struct MarketParams {
    double r = 0.04;     ///< risk-free rate, 1/time
    double sigma = 0.2;  ///< volatility, 1/sqrt(time)
    double strike = 1.0; ///< K
    double maturity = 1.0;
    double mu = 0.0;

    /// Exponent of the similarity transform, 1/2 - r/sigma^2.
    double zeta() const { return 0.5 - r / (sigma * sigma); }
    /// Constant shift of the Hermitian generator, (r + sigma^2/2)^2 / (2 sigma^2).
    double energy_shift() const;

    void validate() const;
};

/// Uniform log-moneyness grid x_j = x_min + j*eps with 2^n points; the
/// underlying price at point j is S_j = K * exp(x_j).
struct Grid {
    unsigned n_qubits = 5;
    double x_min = -1.0;
    double x_max = 1.0;

    std::size_t size() const { return std::size_t{1} << n_qubits; }
    double eps() const { return (x_max - x_min) / static_cast<double>(size() - 1); }
    double x(std::size_t j) const { return x_min + static_cast<double>(j) * eps(); }
    Eigen::VectorXd points() const;
    Eigen::VectorXd prices(double strike) const;

    void validate() const;

    /// x in [-3 sigma sqrt(T), +3 sigma sqrt(T)] around the strike.
    static Grid around_strike(unsigned n_qubits, const MarketParams &m, double n_std = 3.0);
};

/// Central-difference stencil for d^2/dx^2. Corner diagonal entries are
/// replaced by alpha / eps^2 (alpha_upper falls back to boundary_alpha).
/// The interior diagonal (-2 or -30/12) reproduces a zero ghost value.
struct StencilSpec {
    int order = 2;
    double boundary_alpha = -2.0;
    std::optional<double> alpha_upper;

    int half_width() const { return order == 4 ? 2 : 1; }
    int i_min() const { return -half_width(); }
    int i_max() const { return half_width(); }
    double lower_alpha() const { return boundary_alpha; }
    double upper_alpha() const { return alpha_upper.value_or(boundary_alpha); }

    void validate() const;

    static StencilSpec second_order(double alpha = -2.0) { return {2, alpha, std::nullopt}; }
    static StencilSpec fourth_order() { return {4, -30.0 / 12.0, std::nullopt}; }
};

/// Upper-corner alpha that makes the implicit ghost value follow the
/// deep in-the-money asymptote O ~ S - K e^{-r tau} of the call, written
/// in the transformed variable w = e^{-zeta x} O / K (discount taken at
/// mid-life). Only meaningful for order 2.
double far_field_alpha(const MarketParams &m, const Grid &g);

/// Symmetric finite-difference approximation of d^2/dx^2 on the grid.
Eigen::MatrixXd second_derivative_matrix(const Grid &g, const StencilSpec &s);

struct DiscreteHamiltonian {
    Eigen::MatrixXd matrix; ///< real symmetric
    PauliSum pauli;
    Grid grid;
    MarketParams params;
    StencilSpec stencil;
    double zeta = 0.0;
};

/// H = -(sigma^2/2) D2 + (r + sigma^2/2)^2 / (2 sigma^2) I, the Hermitian
/// generator of the transformed pricing equation in time-to-maturity
/// units. The Pauli form is skipped when with_pauli is false.
DiscreteHamiltonian bsm_hamiltonian(const MarketParams &m, const Grid &g,
                                    const StencilSpec &s, bool with_pauli = true);

/// kappa(t) = (1 - e^{-r(T-t)}) / (rT), with the r -> 0 limit (T-t)/T.
double kappa(const MarketParams &m, double t);

enum class AsianKernelSign { AsPrinted = 1, Negated = -1 };

struct AsianMatrix {
    Eigen::MatrixXd matrix;
    double symmetry_defect = 0.0; ///< max |M - M^T|
    bool hermitian = false;       ///< defect <= 1e-10
};

/// sign * (sigma^2/2) diag((kappa(t) - x_j)^2) D2. Generally not symmetric.
AsianMatrix asian_hamiltonian(const MarketParams &m, const Grid &g, const StencilSpec &s,
                              double t, AsianKernelSign sign = AsianKernelSign::AsPrinted);

nlohmann::json to_json(const MarketParams &m);
nlohmann::json to_json(const Grid &g);
nlohmann::json to_json(const StencilSpec &s);
/// Pauli JSON plus a header carrying grid, market and stencil.
nlohmann::json to_json(const DiscreteHamiltonian &h);

MarketParams market_from_json(const nlohmann::json &j);
Grid grid_from_json(const nlohmann::json &j);
StencilSpec stencil_from_json(const nlohmann::json &j);

} // namespace wick
