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
#include "wick/stateprep.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <random>

#include "json_util.hpp"
#include "parallel.hpp"
#include "wick/error.hpp"

namespace wick {

std::string encoding_name(Encoding e) {
    return e == Encoding::Amplitude ? "amplitude" : "sqrt_probability";
}

Encoding encoding_from_name(const std::string &name) {
    if (name == "amplitude") {
        return Encoding::Amplitude;
    }
    if (name == "sqrt_probability") {
        return Encoding::SqrtProbability;
    }
    throw ValidationError(fmt::format("unknown encoding '{}'", name));
}

TargetState payoff_state(const MarketParams &m, const Grid &g, Encoding enc) {
    m.validate();
    g.validate();
    const double zeta = m.zeta();
    Eigen::VectorXd w(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.x(j);
        const double s = m.strike * std::exp(x);
        w[j] = std::max(s - m.strike, 0.0) * std::exp(-zeta * x);
    }
    if (!(w.maxCoeff() > 0.0)) {
        throw DegenerateTargetError(fmt::format(
            "payoff vanishes on the whole grid [{}, {}]; no point lies above the strike", g.x_min,
            g.x_max));
    }
    TargetState t;
    t.grid = g;
    t.encoding = enc;
    if (enc == Encoding::Amplitude) {
        t.alpha0 = 1.0 / w.norm();
        t.amplitudes = w * t.alpha0;
    } else {
        t.alpha0 = 1.0 / w.sum();
        t.amplitudes = (w * t.alpha0).cwiseSqrt();
    }
    return t;
}

double fidelity(const TargetState &target, const StateVector &psi) {
    if (static_cast<std::size_t>(target.amplitudes.size()) != psi.size()) {
        throw ValidationError(fmt::format("target has {} amplitudes, state has {}",
                                          target.amplitudes.size(), psi.size()));
    }
    cplx ov{0.0, 0.0};
    for (std::size_t j = 0; j < psi.size(); ++j) {
        ov += target.amplitudes[static_cast<Eigen::Index>(j)] * psi[j];
    }
    return std::min(1.0, std::norm(ov));
}

double fidelity(const TargetState &target, const AnsatzSpec &spec, std::span<const double> theta) {
    if (spec.n_qubits != target.grid.n_qubits) {
        throw ValidationError(fmt::format("{}-qubit ansatz for a {}-qubit target", spec.n_qubits,
                                          target.grid.n_qubits));
    }
    return fidelity(target, run(spec, theta));
}

void FitConfig::validate() const {
    if (starts < 1 || max_sweeps < 1) {
        throw ValidationError("fit needs at least one start and one sweep");
    }
    if (!(tol >= 0.0) || !(floor >= 0.0 && floor <= 1.0)) {
        throw ValidationError("fit tolerance must be >= 0 and floor in [0, 1]");
    }
}

double sinusoid_argmax(double f0, double f_plus, double f_minus, double a0) {
    const double a = 0.5 * (f_plus + f_minus);
    const double b = f0 - a;
    const double c = 0.5 * (f_plus - f_minus);
    if (std::abs(b) + std::abs(c) < 1e-300) {
        return a0;
    }
    return a0 + std::atan2(c, b);
}

namespace {

struct StartResult {
    std::vector<double> theta;
    double fidelity = 0.0;
    std::vector<double> per_sweep;
};

StartResult run_start(const Circuit &circ, const TargetState &target, std::vector<double> theta,
                      const FitConfig &cfg) {
    auto f = [&](const std::vector<double> &th) { return fidelity(target, circ.run(th)); };
    StartResult out;
    double cur = f(theta);
    out.per_sweep.reserve(cfg.max_sweeps);
    for (unsigned sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        const double before = cur;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            const double a0 = theta[k];
            theta[k] = a0 + 0.5 * std::numbers::pi;
            const double fp = f(theta);
            theta[k] = a0 - 0.5 * std::numbers::pi;
            const double fm = f(theta);
            theta[k] = std::remainder(sinusoid_argmax(cur, fp, fm, a0), 2.0 * std::numbers::pi);
            const double next = f(theta);
            // Exact for a pure sinusoid; guard against round-off regressions.
            if (next < cur) {
                theta[k] = a0;
            } else {
                cur = next;
            }
        }
        out.per_sweep.push_back(cur);
        if (cur - before < cfg.tol) {
            break;
        }
    }
    out.theta = std::move(theta);
    out.fidelity = cur;
    return out;
}

} // namespace

FitResult fit(const AnsatzSpec &spec, const TargetState &target, const FitConfig &cfg) {
    cfg.validate();
    if (spec.n_qubits != target.grid.n_qubits) {
        throw ValidationError(fmt::format("{}-qubit ansatz for a {}-qubit target", spec.n_qubits,
                                          target.grid.n_qubits));
    }
    const Circuit circ = build_circuit(spec);
    const std::size_t np = circ.parameter_count();

    std::vector<StartResult> results(cfg.starts);
    detail::parallel_for(cfg.starts, [&](std::size_t s) {
        std::vector<double> theta(np, 0.0);
        if (s > 0) {
            std::mt19937_64 rng(cfg.seed + s);
            std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
            for (auto &t : theta) {
                t = u(rng);
            }
        }
        results[s] = run_start(circ, target, std::move(theta), cfg);
    });

    FitResult out;
    double best = -1.0;
    for (std::size_t s = 0; s < results.size(); ++s) {
        for (double v : results[s].per_sweep) {
            best = std::max(best, v);
            out.history.push_back(best);
        }
        if (results[s].fidelity > out.fidelity || out.theta.empty()) {
            out.fidelity = results[s].fidelity;
            out.theta = results[s].theta;
            out.best_start = static_cast<unsigned>(s);
        }
    }
    out.below_floor = out.fidelity < cfg.floor;
    return out;
}

nlohmann::json to_json(const FitConfig &c) {
    return {{"starts", c.starts}, {"max_sweeps", c.max_sweeps}, {"tol", c.tol},
            {"seed", c.seed},     {"floor", c.floor}};
}

FitConfig fit_config_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "fit", {"starts", "max_sweeps", "tol", "seed", "floor"});
    FitConfig c;
    detail::read_opt(j, "starts", c.starts);
    detail::read_opt(j, "max_sweeps", c.max_sweeps);
    detail::read_opt(j, "tol", c.tol);
    detail::read_opt(j, "seed", c.seed);
    detail::read_opt(j, "floor", c.floor);
    c.validate();
    return c;
}

} // namespace wick
