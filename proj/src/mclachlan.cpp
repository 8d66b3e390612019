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
#include "wick/mclachlan.hpp"

#include <cmath>
#include <fmt/format.h>

#include "json_util.hpp"
#include "parallel.hpp"
#include "wick/error.hpp"

namespace wick {

void EvolutionConfig::validate() const {
    if (n_steps == 0) {
        throw ValidationError("evolution needs at least one step");
    }
    if (!(total_tau > 0.0) || !std::isfinite(total_tau)) {
        throw ValidationError(fmt::format("total tau must be positive, got {}", total_tau));
    }
    if (!(lambda_reg >= 0.0) || !(lambda_max >= lambda_reg)) {
        throw ValidationError("regularization must satisfy 0 <= lambda_reg <= lambda_max");
    }
}

namespace {

// Distinct, reproducible sub-seed per measured entry.
MeasureMode entry_mode(MeasureMode m, std::size_t k) {
    if (m.is_exact()) {
        return m;
    }
    return {m.shots, m.seed + 0x9E3779B97F4A7C15ULL * (k + 1)};
}

} // namespace

Eigen::MatrixXd build_A(const AnsatzSpec &spec, std::span<const double> theta, MeasureMode mode) {
    const auto n = static_cast<Eigen::Index>(spec.parameter_count());
    Eigen::MatrixXd a(n, n);
    if (mode.is_exact()) {
        const auto ds = derivative_states(spec, theta);
        detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
            for (std::size_t j = i + 1; j < ds.size(); ++j) {
                const cplx w = std::conj(ds[i].prefactor) * ds[j].prefactor;
                const double v = (w * inner(ds[i].state, ds[j].state)).real();
                a(i, j) = v;
                a(j, i) = v;
            }
        });
    } else {
        const std::size_t ns = static_cast<std::size_t>(n);
        detail::parallel_for(ns, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < ns; ++j) {
                const double v = hadamard_test_A(spec, theta, i, j, entry_mode(mode, i * ns + j));
                a(i, j) = v;
                a(j, i) = v;
            }
        });
    }
    // |f_i|^2 <psi|psi> with f_i = -i/2.
    a.diagonal().setConstant(0.25);
    return a;
}

Eigen::VectorXd build_C(const AnsatzSpec &spec, std::span<const double> theta, const PauliSum &h,
                        MeasureMode mode) {
    if (h.n_qubits() != spec.n_qubits && !h.empty()) {
        throw ValidationError(fmt::format("{}-qubit Hamiltonian for a {}-qubit ansatz",
                                          h.n_qubits(), spec.n_qubits));
    }
    const auto n = static_cast<Eigen::Index>(spec.parameter_count());
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    if (h.empty()) {
        return c;
    }
    if (mode.is_exact()) {
        const StateVector hpsi = apply(h, run(spec, theta));
        const auto ds = derivative_states(spec, theta);
        for (Eigen::Index i = 0; i < n; ++i) {
            c[i] = -(std::conj(ds[i].prefactor) * inner(ds[i].state, hpsi)).real();
        }
        return c;
    }
    const std::size_t nt = h.size();
    detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < nt; ++k) {
            acc += hadamard_test_C(spec, theta, i, h.terms()[k], entry_mode(mode, i * nt + k + (1u << 20)));
        }
        c[static_cast<Eigen::Index>(i)] = -acc;
    });
    return c;
}

StepResult step(std::span<const double> theta, const Eigen::MatrixXd &A, const Eigen::VectorXd &C,
                double dt, double lambda_reg, double lambda_max) {
    const auto n = static_cast<Eigen::Index>(theta.size());
    if (A.rows() != n || A.cols() != n || C.size() != n) {
        throw ValidationError(fmt::format("metric {}x{} and vector {} do not match {} parameters",
                                          A.rows(), A.cols(), C.size(), n));
    }
    StepResult out;
    out.theta.assign(theta.begin(), theta.end());
    if (n == 0) {
        return out;
    }
    double lambda = lambda_reg;
    double rcond = 0.0;
    for (;;) {
        Eigen::MatrixXd m = A;
        m.diagonal().array() += lambda;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
        rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
        if (ldlt.info() == Eigen::Success && ldlt.isPositive() && rcond > 1e-13) {
            const Eigen::VectorXd rate = ldlt.solve(C);
            if (rate.allFinite()) {
                for (Eigen::Index i = 0; i < n; ++i) {
                    out.theta[i] += rate[i] * dt;
                }
                out.lambda_used = lambda;
                return out;
            }
        }
        if (lambda >= lambda_max) {
            break;
        }
        lambda = lambda > 0.0 ? std::min(lambda * 10.0, lambda_max) : std::min(1e-12, lambda_max);
        ++out.escalations;
    }
    throw SingularMetricError(
        fmt::format("metric solve failed at regularization {} (rcond {:.3g})", lambda, rcond), rcond);
}

Trajectory evolve(const AnsatzSpec &spec, std::span<const double> theta0, const PauliSum &h,
                  const EvolutionConfig &cfg) {
    cfg.validate();
    spec.validate();
    if (theta0.size() != spec.parameter_count()) {
        throw ValidationError(fmt::format("ansatz takes {} parameters, got {}",
                                          spec.parameter_count(), theta0.size()));
    }
    const double dt = cfg.dt();
    Trajectory t;
    t.dt = dt;
    std::vector<double> theta(theta0.begin(), theta0.end());
    auto energy = [&](const std::vector<double> &th) { return expectation(run(spec, th), h); };

    t.taus.push_back(0.0);
    t.thetas.push_back(theta);
    t.energies.push_back(energy(theta));
    t.log_norms.push_back(0.0);
    for (std::size_t k = 0; k < cfg.n_steps; ++k) {
        const Eigen::MatrixXd a = build_A(spec, theta, entry_mode(cfg.mode, 2 * k));
        const Eigen::VectorXd c = build_C(spec, theta, h, entry_mode(cfg.mode, 2 * k + 1));
        StepResult s = step(theta, a, c, dt, cfg.lambda_reg, cfg.lambda_max);
        t.regularization_escalations += s.escalations;
        theta = std::move(s.theta);

        const double e = energy(theta);
        const double prev = t.energies.back();
        if (e > prev + 1e-3 * dt) {
            ++t.energy_violations;
        }
        t.taus.push_back(static_cast<double>(k + 1) * dt);
        t.thetas.push_back(theta);
        t.log_norms.push_back(t.log_norms.back() - 0.5 * dt * (prev + e));
        t.energies.push_back(e);
    }
    return t;
}

nlohmann::json to_json(const EvolutionConfig &c) {
    return {{"total_tau", c.total_tau},   {"n_steps", c.n_steps},
            {"lambda_reg", c.lambda_reg}, {"lambda_max", c.lambda_max},
            {"shots", c.mode.shots},      {"shot_seed", c.mode.seed}};
}

EvolutionConfig evolution_config_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "mclachlan",
                         {"total_tau", "n_steps", "lambda_reg", "lambda_max", "shots", "shot_seed"});
    EvolutionConfig c;
    detail::read_opt(j, "total_tau", c.total_tau);
    detail::read_opt(j, "n_steps", c.n_steps);
    detail::read_opt(j, "lambda_reg", c.lambda_reg);
    detail::read_opt(j, "lambda_max", c.lambda_max);
    detail::read_opt(j, "shots", c.mode.shots);
    detail::read_opt(j, "shot_seed", c.mode.seed);
    c.validate();
    return c;
}

} // namespace wick
