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
#include "wick/fin_hamiltonian.hpp"

#include <cmath>
#include <fmt/format.h>

#include "json_util.hpp"
#include "wick/error.hpp"

namespace wick {

double MarketParams::energy_shift() const {
    const double a = r + 0.5 * sigma * sigma;
    return a * a / (2.0 * sigma * sigma);
}

void MarketParams::validate() const {
    if (!(sigma > 0.0) || !(maturity > 0.0) || !(strike > 0.0) || !std::isfinite(r)) {
        throw ValidationError(fmt::format(
            "market parameters need sigma > 0, T > 0, K > 0 (got sigma={}, T={}, K={})", sigma,
            maturity, strike));
    }
}

Eigen::VectorXd Grid::points() const {
    Eigen::VectorXd x(size());
    for (std::size_t j = 0; j < size(); ++j) {
        x[j] = this->x(j);
    }
    return x;
}

Eigen::VectorXd Grid::prices(double strike) const {
    return (points().array().exp() * strike).matrix();
}

void Grid::validate() const {
    if (n_qubits < 1 || n_qubits > 20) {
        throw ValidationError(fmt::format("grid needs 1..20 qubits, got {}", n_qubits));
    }
    if (!(x_min < x_max)) {
        throw ValidationError(fmt::format("grid needs x_min < x_max (got {} >= {})", x_min, x_max));
    }
}

Grid Grid::around_strike(unsigned n_qubits, const MarketParams &m, double n_std) {
    const double half = n_std * m.sigma * std::sqrt(m.maturity);
    return Grid{n_qubits, -half, half};
}

void StencilSpec::validate() const {
    if (order != 2 && order != 4) {
        throw ValidationError(fmt::format("stencil order must be 2 or 4, got {}", order));
    }
    if (!std::isfinite(boundary_alpha) || (alpha_upper && !std::isfinite(*alpha_upper))) {
        throw ValidationError("boundary alpha must be finite");
    }
}

double far_field_alpha(const MarketParams &m, const Grid &g) {
    const double eps = g.eps();
    const double disc = std::exp(-0.5 * m.r * m.maturity);
    const double ratio = std::exp(-m.zeta() * eps) * (std::exp(g.x_max + eps) - disc) /
                         (std::exp(g.x_max) - disc);
    return -2.0 + ratio;
}

Eigen::MatrixXd second_derivative_matrix(const Grid &g, const StencilSpec &s) {
    g.validate();
    s.validate();
    const auto n = static_cast<Eigen::Index>(g.size());
    const int hw = s.half_width();
    if (n < 2 * hw + 2) {
        throw ValidationError(fmt::format("{} grid points are too few for an order-{} stencil",
                                          n, s.order));
    }
    // Integer weights over a common denominator; the band is filled from
    // one table so the result is bit-exactly symmetric.
    const double denom = s.order == 2 ? 1.0 : 12.0;
    const double w2[] = {1.0, -2.0, 1.0};
    const double w4[] = {-1.0, 16.0, -30.0, 16.0, -1.0};
    const double *w = s.order == 2 ? w2 : w4;
    const double scale = 1.0 / (denom * g.eps() * g.eps());

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int k = -hw; k <= hw; ++k) {
            const Eigen::Index j = i + k;
            if (j >= 0 && j < n) {
                d(i, j) = w[k + hw] * scale;
            }
        }
    }
    const double inv_eps2 = 1.0 / (g.eps() * g.eps());
    d(0, 0) = s.lower_alpha() * inv_eps2;
    d(n - 1, n - 1) = s.upper_alpha() * inv_eps2;
    return d;
}

DiscreteHamiltonian bsm_hamiltonian(const MarketParams &m, const Grid &g, const StencilSpec &s,
                                    bool with_pauli) {
    m.validate();
    const Eigen::MatrixXd d2 = second_derivative_matrix(g, s);
    Eigen::MatrixXd h = -0.5 * m.sigma * m.sigma * d2;
    h.diagonal().array() += m.energy_shift();

    DiscreteHamiltonian out;
    out.matrix = std::move(h);
    out.grid = g;
    out.params = m;
    out.stencil = s;
    out.zeta = m.zeta();
    if (with_pauli) {
        out.pauli = decompose(out.matrix.cast<cplx>(), g.n_qubits);
    } else {
        out.pauli = PauliSum(g.n_qubits);
    }
    return out;
}

double kappa(const MarketParams &m, double t) {
    const double remaining = m.maturity - t;
    const double a = m.r * remaining;
    if (std::abs(m.r * m.maturity) < 1e-300) {
        return remaining / m.maturity;
    }
    // -expm1(-a) keeps full precision for small r(T - t).
    return -std::expm1(-a) / (m.r * m.maturity);
}

AsianMatrix asian_hamiltonian(const MarketParams &m, const Grid &g, const StencilSpec &s,
                              double t, AsianKernelSign sign) {
    m.validate();
    const Eigen::MatrixXd d2 = second_derivative_matrix(g, s);
    const double k = kappa(m, t);
    const double pref = static_cast<double>(static_cast<int>(sign)) * 0.5 * m.sigma * m.sigma;
    Eigen::VectorXd coeff(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double dx = k - g.x(j);
        coeff[j] = pref * dx * dx;
    }
    AsianMatrix out;
    out.matrix = coeff.asDiagonal() * d2;
    out.symmetry_defect = (out.matrix - out.matrix.transpose()).cwiseAbs().maxCoeff();
    out.hermitian = out.symmetry_defect <= 1e-10;
    return out;
}

nlohmann::json to_json(const MarketParams &m) {
    return {{"r", m.r}, {"sigma", m.sigma}, {"strike", m.strike}, {"maturity", m.maturity},
            {"mu", m.mu}};
}

nlohmann::json to_json(const Grid &g) {
    return {{"n_qubits", g.n_qubits}, {"x_min", g.x_min}, {"x_max", g.x_max}};
}

nlohmann::json to_json(const StencilSpec &s) {
    nlohmann::json j{{"order", s.order}, {"boundary_alpha", s.boundary_alpha}};
    if (s.alpha_upper) {
        j["alpha_upper"] = *s.alpha_upper;
    }
    return j;
}

nlohmann::json to_json(const DiscreteHamiltonian &h) {
    nlohmann::json j = to_json(h.pauli);
    j["grid"] = to_json(h.grid);
    j["market"] = to_json(h.params);
    j["stencil"] = to_json(h.stencil);
    j["zeta"] = h.zeta;
    return j;
}

MarketParams market_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "market", {"r", "sigma", "strike", "maturity", "mu"});
    MarketParams m;
    detail::read_opt(j, "r", m.r);
    detail::read_opt(j, "sigma", m.sigma);
    detail::read_opt(j, "strike", m.strike);
    detail::read_opt(j, "maturity", m.maturity);
    detail::read_opt(j, "mu", m.mu);
    m.validate();
    return m;
}

Grid grid_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "grid", {"n_qubits", "x_min", "x_max"});
    Grid g;
    detail::read_opt(j, "n_qubits", g.n_qubits);
    detail::read_opt(j, "x_min", g.x_min);
    detail::read_opt(j, "x_max", g.x_max);
    g.validate();
    return g;
}

StencilSpec stencil_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "stencil", {"order", "boundary_alpha", "alpha_upper"});
    StencilSpec s;
    detail::read_opt(j, "order", s.order);
    if (s.order == 4) {
        s.boundary_alpha = -30.0 / 12.0;
    }
    detail::read_opt(j, "boundary_alpha", s.boundary_alpha);
    if (j.contains("alpha_upper")) {
        s.alpha_upper = j.at("alpha_upper").get<double>();
    }
    s.validate();
    return s;
}

} // namespace wick
