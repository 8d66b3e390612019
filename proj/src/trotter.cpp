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
#include "wick/trotter.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "json_util.hpp"
#include "wick/error.hpp"

namespace wick {

TrotterPlan plan(const PauliSum &h, double tau, std::size_t n_slices) {
    if (n_slices == 0) {
        throw ValidationError("Trotter plan needs at least one slice");
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw ValidationError(fmt::format("Trotter tau must be finite and >= 0, got {}", tau));
    }
    const PauliSum canon = canonicalize(h);
    TrotterPlan p;
    p.terms_per_slice = canon.size();
    p.slices = n_slices;
    p.step = tau / static_cast<double>(n_slices);
    p.factors.reserve(canon.size() * n_slices);
    for (std::size_t k = 0; k < n_slices; ++k) {
        p.factors.insert(p.factors.end(), canon.terms().begin(), canon.terms().end());
    }
    return p;
}

Eigen::MatrixXcd plan_matrix(const TrotterPlan &p) {
    if (p.factors.empty()) {
        throw ValidationError("empty Trotter plan has no register width");
    }
    const unsigned n = p.factors.front().string.n_qubits();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &f : p.factors) {
        const double x = p.step * f.coefficient;
        const Eigen::MatrixXcd pm = matrix_of(PauliSum(n, {{1.0, f.string}}));
        const Eigen::MatrixXcd fm =
            std::cosh(x) * Eigen::MatrixXcd::Identity(dim, dim) - std::sinh(x) * pm;
        out = fm * out;
    }
    return out;
}

void SweepConfig::validate() const {
    if (sweeps < 1) {
        throw ValidationError("at least one sweep per factor is required");
    }
    if (!(tol >= 0.0)) {
        throw ValidationError("sweep tolerance must be >= 0");
    }
}

namespace {

// e^{-s lambda h}|prev> = cosh(s lambda)|prev> - sinh(s lambda) h|prev>.
StateVector propagated(const StateVector &prev, const PauliTerm &term, double s) {
    const double x = s * term.coefficient;
    StateVector hp = apply(term.string, prev);
    std::vector<cplx> amps(prev.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = std::cosh(x) * prev[i] - std::sinh(x) * hp[i];
    }
    return StateVector(prev.n_qubits(), std::move(amps));
}

void check_term(const AnsatzSpec &spec, const PauliTerm &term) {
    if (term.string.n_qubits() != spec.n_qubits) {
        throw ValidationError(fmt::format("{}-qubit term for a {}-qubit ansatz",
                                          term.string.n_qubits(), spec.n_qubits));
    }
}

} // namespace

double objective_F(const AnsatzSpec &spec, std::span<const double> theta_prev,
                   std::span<const double> alpha, const PauliTerm &term, double s) {
    check_term(spec, term);
    const StateVector prev = run(spec, theta_prev);
    const StateVector cur = run(spec, alpha);
    const double x = s * term.coefficient;
    return std::cosh(x) * inner(prev, cur).real() -
           std::sinh(x) * inner(prev, apply(term.string, cur)).real();
}

RotosolveResult rotosolve_step(double f_alpha, double f_quarter, double alpha,
                               const std::function<double(double)> &f, double period) {
    constexpr double kFlat = 1e-14;
    if (std::abs(f_alpha) < kFlat && std::abs(f_quarter) < kFlat) {
        return {alpha, true};
    }
    // Work in u = 2 pi alpha / period, where f has period 2 pi.
    const double to_u = 2.0 * std::numbers::pi / period;
    const double u = alpha * to_u;
    const double ratio_atan = f_quarter != 0.0 ? std::atan(f_alpha / f_quarter)
                                               : std::copysign(0.5 * std::numbers::pi, f_alpha);
    const double u_star = 0.5 * std::numbers::pi - ratio_atan + u;
    const double a1 = u_star / to_u;
    const double a2 = a1 + 0.5 * period;
    return {f(a2) > f(a1) ? a2 : a1, false};
}

AbsorbResult absorb_term(const AnsatzSpec &spec, std::span<const double> theta_prev,
                         const PauliTerm &term, double s, const SweepConfig &cfg) {
    cfg.validate();
    check_term(spec, term);
    const Circuit circ = build_circuit(spec);
    if (theta_prev.size() != circ.parameter_count()) {
        throw ValidationError(fmt::format("ansatz takes {} parameters, got {}",
                                          circ.parameter_count(), theta_prev.size()));
    }
    AbsorbResult out;
    out.theta.assign(theta_prev.begin(), theta_prev.end());
    const StateVector phi = propagated(circ.run(theta_prev), term, s);
    auto F = [&](const std::vector<double> &th) { return inner(phi, circ.run(th)).real(); };

    double cur = F(out.theta);
    out.objective_trace.push_back(cur);
    // Identity factors only rescale; the previous angles stay optimal.
    if (term.string.is_identity() || s == 0.0 || term.coefficient == 0.0) {
        out.objective = cur;
        return out;
    }
    // A single rotation enters psi through cos(a/2) and sin(a/2), so F has
    // period 4 pi in each angle.
    constexpr double kPeriod = 4.0 * std::numbers::pi;
    for (unsigned sweep = 0; sweep < cfg.sweeps; ++sweep) {
        const double before = cur;
        for (std::size_t k = 0; k < out.theta.size(); ++k) {
            const double a0 = out.theta[k];
            auto fk = [&](double a) {
                out.theta[k] = a;
                const double v = F(out.theta);
                out.theta[k] = a0;
                return v;
            };
            const RotosolveResult r = rotosolve_step(cur, fk(a0 + 0.25 * kPeriod), a0, fk, kPeriod);
            if (r.flat) {
                ++out.flat;
                continue;
            }
            const double cand = std::remainder(r.alpha, kPeriod);
            const double v = fk(cand);
            if (v > cur) {
                out.theta[k] = cand;
                cur = v;
            }
            out.objective_trace.push_back(cur);
        }
        if (cur - before < cfg.tol) {
            break;
        }
    }
    out.objective = cur;
    return out;
}

Trajectory evolve_trotter(const AnsatzSpec &spec, std::span<const double> theta0, const PauliSum &h,
                          double tau, std::size_t n_slices, const SweepConfig &cfg) {
    spec.validate();
    cfg.validate();
    if (theta0.size() != spec.parameter_count()) {
        throw ValidationError(fmt::format("ansatz takes {} parameters, got {}",
                                          spec.parameter_count(), theta0.size()));
    }
    const TrotterPlan p = plan(h, tau, n_slices);
    Trajectory t;
    t.dt = p.step;
    std::vector<double> theta(theta0.begin(), theta0.end());
    t.taus.push_back(0.0);
    t.thetas.push_back(theta);
    t.energies.push_back(h.empty() ? 0.0 : expectation(run(spec, theta), h));
    t.log_norms.push_back(0.0);
    if (p.factors.empty()) {
        return t;
    }
    double log_norm = 0.0;
    for (std::size_t slice = 0; slice < p.slices; ++slice) {
        for (std::size_t k = 0; k < p.terms_per_slice; ++k) {
            const PauliTerm &term = p.factors[slice * p.terms_per_slice + k];
            const double x = p.step * term.coefficient;
            const StateVector cur = run(spec, theta);
            const double hexp = inner(cur, apply(term.string, cur)).real();
            log_norm += std::log(std::cosh(x) - std::sinh(x) * hexp);

            AbsorbResult r = absorb_term(spec, theta, term, p.step, cfg);
            t.flat_directions += r.flat;
            t.objective_log.push_back(r.objective);
            theta = std::move(r.theta);
        }
        t.taus.push_back(static_cast<double>(slice + 1) * p.step);
        t.thetas.push_back(theta);
        t.energies.push_back(expectation(run(spec, theta), h));
        t.log_norms.push_back(log_norm);
    }
    return t;
}

nlohmann::json to_json(const SweepConfig &c) {
    return {{"sweeps", c.sweeps}, {"tol", c.tol}, {"seed", c.seed}};
}

SweepConfig sweep_config_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "sweep", {"sweeps", "tol", "seed"});
    SweepConfig c;
    detail::read_opt(j, "sweeps", c.sweeps);
    detail::read_opt(j, "tol", c.tol);
    detail::read_opt(j, "seed", c.seed);
    c.validate();
    return c;
}

} // namespace wick
