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
#include "wick/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <iterator>
#include <numbers>

#include "wick/error.hpp"
#include "wick/simd/kernels.hpp"

namespace wick {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

BsQuote bs_call_quote(const MarketParams &m, double spot, double t) {
    m.validate();
    if (!(spot >= 0.0)) {
        throw ValidationError(fmt::format("spot must be >= 0, got {}", spot));
    }
    if (!(t >= 0.0)) {
        throw RangeError(fmt::format("calendar time must be >= 0, got {}", t));
    }
    if (t >= m.maturity) {
        return {std::max(spot - m.strike, 0.0), true};
    }
    if (spot == 0.0) {
        return {0.0, false};
    }
    const double tau = m.maturity - t;
    const double sd = m.sigma * std::sqrt(tau);
    const double d1 = (std::log(spot / m.strike) + (m.r + 0.5 * m.sigma * m.sigma) * tau) / sd;
    const double d2 = d1 - sd;
    return {spot * normal_cdf(d1) - m.strike * std::exp(-m.r * tau) * normal_cdf(d2), false};
}

double bs_analytic_call(const MarketParams &m, double spot, double t) {
    return bs_call_quote(m, spot, t).price;
}

Propagated exact_propagate(const Eigen::MatrixXcd &h, const StateVector &psi0, double tau) {
    const auto dim = static_cast<Eigen::Index>(psi0.size());
    if (h.rows() != dim || h.cols() != dim) {
        throw ValidationError(fmt::format("{}x{} operator for a state of length {}", h.rows(),
                                          h.cols(), dim));
    }
    const double defect = hermiticity_defect(h);
    if (defect > 1e-10) {
        throw ValidationError(fmt::format(
            "operator is not Hermitian (defect {:.3g}); use fd_solve for such kernels", defect));
    }
    if (!(tau >= 0.0)) {
        throw ValidationError(fmt::format("tau must be >= 0, got {}", tau));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    const Eigen::VectorXcd coeff = eig.eigenvectors().adjoint() * psi0.to_eigen();
    // Shift by the smallest eigenvalue so large tau does not underflow.
    const double e0 = eig.eigenvalues().minCoeff();
    const Eigen::VectorXd damp = (-tau * (eig.eigenvalues().array() - e0)).exp();
    Eigen::VectorXcd out = eig.eigenvectors() * (coeff.array() * damp.array().cast<cplx>()).matrix();
    const double nrm = out.norm();
    if (!(nrm > 0.0)) {
        throw ValidationError("propagated state vanished");
    }
    out /= nrm;
    return {StateVector::from_eigen(out), std::log(nrm) - tau * e0};
}

Propagated exact_propagate(const Eigen::MatrixXd &h, const StateVector &psi0, double tau) {
    return exact_propagate(Eigen::MatrixXcd(h.cast<cplx>()), psi0, tau);
}

namespace {

double total_time(const FdConfig &cfg, const MarketParams &m) {
    return cfg.kind == FdKind::BsmRescaled ? 0.5 * m.sigma * m.sigma * m.maturity : m.maturity;
}

// Stable dt for unit diffusion coefficient, with a 0.9 safety factor.
double unit_limit(int order, double eps) {
    return order == 2 ? 0.9 * 0.5 * eps * eps : 0.9 * 0.375 * eps * eps;
}

double asian_max_diffusion(const MarketParams &m, const Grid &g) {
    const double k0 = kappa(m, 0.0);
    double worst = 0.0;
    for (double k : {0.0, k0}) {
        for (double x : {g.x_min, g.x_max}) {
            worst = std::max(worst, (k - x) * (k - x));
        }
    }
    // k - x can only vanish inside the ranges, so corner values bound it.
    return 0.5 * m.sigma * m.sigma * worst;
}

void validate_fd(const FdConfig &cfg, const MarketParams &m, const Grid &g) {
    m.validate();
    g.validate();
    if (cfg.order != 2 && cfg.order != 4) {
        throw ValidationError(fmt::format("fd order must be 2 or 4, got {}", cfg.order));
    }
    if (g.size() < 5) {
        throw ValidationError("fd grid needs at least 5 points");
    }
    if (cfg.initial && static_cast<std::size_t>(cfg.initial->size()) != g.size()) {
        throw ValidationError(fmt::format("initial data has {} values for {} grid points",
                                          cfg.initial->size(), g.size()));
    }
    if (cfg.smooth_payoff && cfg.kind != FdKind::BsmRescaled) {
        throw ValidationError("payoff smoothing is only defined for the BSM kernel");
    }
}

// Gauss-Legendre nodes/weights on [-1, 1] via Golub-Welsch.
struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

const GaussRule &gauss16() {
    static const GaussRule rule = [] {
        constexpr int n = 16;
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k < n; ++k) {
            const double b = k / std::sqrt(4.0 * k * k - 1.0);
            j(k, k - 1) = b;
            j(k - 1, k) = b;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j);
        GaussRule r;
        r.nodes = eig.eigenvalues();
        r.weights = 2.0 * eig.eigenvectors().row(0).transpose().array().square();
        return r;
    }();
    return rule;
}

double phi4(double y) {
    const double a = std::abs(y);
    if (a <= 1.0) {
        return 1.0 - 2.5 * a * a + 1.5 * a * a * a;
    }
    if (a <= 2.0) {
        return 0.5 * (2.0 - a) * (2.0 - a) * (1.0 - a);
    }
    return 0.0;
}

} // namespace

Eigen::VectorXd smoothed_call_payoff(const Eigen::VectorXd &x, double eps) {
    const GaussRule &gl = gauss16();
    Eigen::VectorXd out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        std::vector<double> cuts{-2.0, -1.0, 0.0, 1.0, 2.0};
        const double kink = -x[j] / eps;
        if (kink > -2.0 && kink < 2.0) {
            cuts.push_back(kink);
        }
        std::sort(cuts.begin(), cuts.end());
        double acc = 0.0;
        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
            const double a = cuts[s];
            const double b = cuts[s + 1];
            const double half = 0.5 * (b - a);
            const double mid = 0.5 * (a + b);
            for (Eigen::Index q = 0; q < gl.nodes.size(); ++q) {
                const double y = mid + half * gl.nodes[q];
                acc += half * gl.weights[q] * std::max(std::exp(x[j] + eps * y) - 1.0, 0.0) * phi4(y);
            }
        }
        out[j] = acc;
    }
    return out;
}

std::size_t fd_min_steps(const FdConfig &cfg, const MarketParams &m, const Grid &g) {
    validate_fd(cfg, m, g);
    double limit = unit_limit(cfg.order, g.eps());
    if (cfg.kind == FdKind::Asian) {
        limit /= std::max(asian_max_diffusion(m, g), 1e-300);
    }
    return static_cast<std::size_t>(std::ceil(total_time(cfg, m) / limit));
}

FdSolution fd_solve(const FdConfig &cfg, const MarketParams &m, const Grid &g, std::size_t n_steps) {
    validate_fd(cfg, m, g);
    if (n_steps == 0) {
        throw ValidationError("fd_solve needs at least one step");
    }
    const std::size_t need = fd_min_steps(cfg, m, g);
    if (n_steps < need) {
        throw StabilityError(fmt::format("explicit scheme unstable with {} steps; at least {} needed",
                                         n_steps, need),
                             need);
    }
    const std::size_t n = g.size();
    const double eps = g.eps();
    const double total = total_time(cfg, m);
    const double dt = total / static_cast<double>(n_steps);
    const Eigen::VectorXd x = g.points();

    Eigen::VectorXd v(n);
    if (cfg.initial) {
        v = *cfg.initial;
    } else if (cfg.kind == FdKind::BsmRescaled) {
        v = cfg.smooth_payoff ? smoothed_call_payoff(x, eps)
                              : Eigen::VectorXd((x.array().exp() - 1.0).max(0.0));
    } else {
        v = x.array().max(0.0);
    }

    double d2[5];
    double d1[5];
    if (cfg.order == 2) {
        const double a[5] = {0.0, 1.0, -2.0, 1.0, 0.0};
        const double b[5] = {0.0, -0.5, 0.0, 0.5, 0.0};
        std::copy(a, a + 5, d2);
        std::copy(b, b + 5, d1);
    } else {
        const double a[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
        const double b[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
        std::copy(a, a + 5, d2);
        std::copy(b, b + 5, d1);
    }
    double c[5];
    std::vector<double> w;
    const double k = 2.0 * m.r / (m.sigma * m.sigma);
    if (cfg.kind == FdKind::BsmRescaled) {
        for (int i = 0; i < 5; ++i) {
            c[i] = dt * (d2[i] / (eps * eps) + (k - 1.0) * d1[i] / eps - (i == 2 ? k : 0.0));
        }
    } else {
        for (int i = 0; i < 5; ++i) {
            c[i] = d2[i] / (eps * eps);
        }
        w.resize(n);
    }

    FdSolution sol;
    sol.x = x;
    sol.dt = dt;
    sol.n_steps = n_steps;
    sol.times.push_back(0.0);
    sol.values.push_back(v);

    const auto &kern = simd::active_kernels();
    std::vector<double> pad(n + 4, 0.0);
    std::vector<double> next(n);
    for (std::size_t step = 0; step < n_steps; ++step) {
        const double time = static_cast<double>(step) * dt;
        std::copy(v.data(), v.data() + n, pad.begin() + 2);
        if (cfg.boundary == FdBoundary::Zero) {
            pad[0] = pad[1] = pad[n + 2] = pad[n + 3] = 0.0;
        } else if (cfg.kind == FdKind::BsmRescaled) {
            pad[0] = pad[1] = 0.0;
            const double disc = std::exp(-k * time);
            pad[n + 2] = std::exp(g.x_max + eps) - disc;
            pad[n + 3] = std::exp(g.x_max + 2.0 * eps) - disc;
        } else {
            pad[0] = pad[1] = 0.0;
            const double slope = v[n - 1] - v[n - 2];
            pad[n + 2] = v[n - 1] + slope;
            pad[n + 3] = v[n - 1] + 2.0 * slope;
        }
        if (cfg.kind == FdKind::Asian) {
            const double kap = kappa(m, m.maturity - time);
            for (std::size_t j = 0; j < n; ++j) {
                const double d = kap - x[static_cast<Eigen::Index>(j)];
                w[j] = dt * 0.5 * m.sigma * m.sigma * d * d;
            }
        }
        kern.stencil5(next.data(), pad.data(), w.empty() ? nullptr : w.data(), c, n);
        std::copy(next.begin(), next.end(), v.data());

        const bool last = step + 1 == n_steps;
        if (last || (cfg.record_every > 0 && (step + 1) % cfg.record_every == 0)) {
            sol.times.push_back(last ? total : static_cast<double>(step + 1) * dt);
            sol.values.push_back(v);
        }
    }
    return sol;
}

double asian_price_from_fd(const FdSolution &sol, const MarketParams &m, double spot) {
    if (!(spot > 0.0)) {
        throw ValidationError("spot must be positive");
    }
    const double x0 = kappa(m, 0.0) - std::exp(-m.r * m.maturity) * m.strike / spot;
    const Eigen::VectorXd &x = sol.x;
    const Eigen::VectorXd &u = sol.values.back();
    const Eigen::Index n = x.size();
    if (x0 < x[0] || x0 > x[n - 1]) {
        throw RangeError(fmt::format("x0 = {} lies outside the fd grid [{}, {}]", x0, x[0], x[n - 1]));
    }
    const Eigen::Index j = std::min<Eigen::Index>(
        n - 2, static_cast<Eigen::Index>(std::floor((x0 - x[0]) / (x[1] - x[0]))));
    const double f = (x0 - x[j]) / (x[j + 1] - x[j]);
    return spot * ((1.0 - f) * u[j] + f * u[j + 1]);
}

ErrorReport compare(const Eigen::VectorXd &a, const Eigen::VectorXd &b) {
    if (a.size() != b.size()) {
        throw ValidationError(fmt::format("cannot compare curves of length {} and {}", a.size(), b.size()));
    }
    if (a.size() == 0) {
        throw ValidationError("cannot compare empty curves");
    }
    const double na = a.norm();
    const double nb = b.norm();
    if (!(na > 0.0) || !(nb > 0.0)) {
        throw ValidationError("cannot normalize a zero curve");
    }
    ErrorReport r;
    r.residuals = a / na - b / nb;
    r.l2 = r.residuals.norm();
    r.mse = r.residuals.squaredNorm() / static_cast<double>(a.size());
    return r;
}

double l2_error(const Eigen::VectorXd &a, const Eigen::VectorXd &b) { return compare(a, b).l2; }

double mse(const Eigen::VectorXd &a, const Eigen::VectorXd &b) { return compare(a, b).mse; }

double relative_l2(const Eigen::VectorXd &a, const Eigen::VectorXd &b) {
    if (a.size() != b.size()) {
        throw ValidationError(fmt::format("cannot compare curves of length {} and {}", a.size(), b.size()));
    }
    return (a - b).norm() / b.norm();
}

std::string slice_csv(const Eigen::VectorXd &x, const Eigen::VectorXd &values) {
    fmt::memory_buffer buf;
    auto out = std::back_inserter(buf);
    fmt::format_to(out, "x,value\n");
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        fmt::format_to(out, "{:.17g},{:.17g}\n", x[j], values[j]);
    }
    return fmt::to_string(buf);
}

} // namespace wick
