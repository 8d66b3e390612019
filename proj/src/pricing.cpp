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
#include "wick/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fmt/format.h>
#include <fstream>
#include <iterator>

#include "json_util.hpp"
#include "parallel.hpp"
#include "wick/error.hpp"

namespace wick {

std::string algorithm_name(Algorithm a) { return a == Algorithm::McLachlan ? "mclachlan" : "trotter"; }

Algorithm algorithm_from_name(const std::string &name) {
    if (name == "mclachlan") {
        return Algorithm::McLachlan;
    }
    if (name == "trotter") {
        return Algorithm::Trotter;
    }
    throw ValidationError(fmt::format("unknown algorithm '{}' (mclachlan|trotter)", name));
}

StencilSpec RunConfig::resolved_stencil() const {
    StencilSpec s = stencil;
    if (far_field_upper) {
        s.alpha_upper = far_field_alpha(market, grid);
    }
    return s;
}

AnsatzSpec RunConfig::ansatz() const {
    if (axes.random) {
        return AnsatzSpec::random(family, grid.n_qubits, depth, ansatz_seed);
    }
    AnsatzSpec s = AnsatzSpec::uniform(family, grid.n_qubits, depth, axes.fixed);
    s.seed = ansatz_seed;
    return s;
}

void RunConfig::validate() const {
    market.validate();
    grid.validate();
    stencil.validate();
    fit.validate();
    sweep.validate();
    if (far_field_upper && stencil.order != 2) {
        throw ValidationError("far-field upper boundary is defined for the order-2 stencil only");
    }
    if (grid.n_qubits > kMaxDenseQubits) {
        throw CapacityError(fmt::format("pipeline supports at most {} qubits", kMaxDenseQubits));
    }
    if (n_steps == 0) {
        throw ValidationError("n_steps must be positive");
    }
    const double t = evolution_tau();
    if (!(t > 0.0) || t > market.maturity) {
        throw RangeError(fmt::format("evolution tau must lie in (0, T = {}], got {}", market.maturity, t));
    }
    if (!axes.random && axes.fixed == Axis::I) {
        throw ValidationError("fixed ansatz axis must be X, Y or Z");
    }
}

nlohmann::json to_json(const RunConfig &c) {
    nlohmann::json st = to_json(c.stencil);
    st["far_field_upper"] = c.far_field_upper;
    return {
        {"market", to_json(c.market)},
        {"grid", to_json(c.grid)},
        {"stencil", st},
        {"ansatz",
         {{"family", family_name(c.family)},
          {"depth", c.depth},
          {"axes", c.axes.random ? std::string("random") : std::string(1, axis_char(c.axes.fixed))},
          {"seed", c.ansatz_seed}}},
        {"encoding", encoding_name(c.encoding)},
        {"fit", to_json(c.fit)},
        {"algorithm", algorithm_name(c.algorithm)},
        {"n_steps", c.n_steps},
        {"tau", c.evolution_tau()},
        {"mclachlan",
         {{"lambda_reg", c.lambda_reg},
          {"lambda_max", c.lambda_max},
          {"shots", c.mode.shots},
          {"shot_seed", c.mode.seed}}},
        {"trotter", to_json(c.sweep)},
    };
}

RunConfig run_config_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "config",
                         {"market", "grid", "stencil", "ansatz", "encoding", "fit", "algorithm",
                          "n_steps", "tau", "mclachlan", "trotter"});
    RunConfig c;
    try {
        if (j.contains("market")) {
            c.market = market_from_json(j["market"]);
        }
        if (j.contains("grid")) {
            c.grid = grid_from_json(j["grid"]);
        }
        if (j.contains("stencil")) {
            nlohmann::json st = j["stencil"];
            if (st.is_object() && st.contains("far_field_upper")) {
                c.far_field_upper = st["far_field_upper"].get<bool>();
                st.erase("far_field_upper");
            }
            c.stencil = stencil_from_json(st);
        }
        if (j.contains("ansatz")) {
            const auto &a = j["ansatz"];
            detail::require_keys(a, "ansatz", {"family", "depth", "axes", "seed", "n_qubits"});
            if (a.contains("family")) {
                c.family = family_from_name(a["family"].get<std::string>());
            }
            detail::read_opt(a, "depth", c.depth);
            detail::read_opt(a, "seed", c.ansatz_seed);
            if (a.contains("axes")) {
                const auto s = a["axes"].get<std::string>();
                if (s == "random") {
                    c.axes.random = true;
                } else if (s.size() == 1) {
                    c.axes = {false, axis_from_char(s[0])};
                } else {
                    throw ValidationError(fmt::format("ansatz axes must be 'random', 'X', 'Y' or 'Z', got '{}'", s));
                }
            }
            if (a.contains("n_qubits") && a["n_qubits"].get<unsigned>() != c.grid.n_qubits) {
                throw ValidationError("ansatz n_qubits must equal grid n_qubits");
            }
        }
        if (j.contains("encoding")) {
            c.encoding = encoding_from_name(j["encoding"].get<std::string>());
        }
        if (j.contains("fit")) {
            c.fit = fit_config_from_json(j["fit"]);
        }
        if (j.contains("algorithm")) {
            c.algorithm = algorithm_from_name(j["algorithm"].get<std::string>());
        }
        detail::read_opt(j, "n_steps", c.n_steps);
        if (j.contains("tau")) {
            c.tau = j["tau"].get<double>();
        }
        if (j.contains("mclachlan")) {
            const auto &m = j["mclachlan"];
            detail::require_keys(m, "mclachlan", {"lambda_reg", "lambda_max", "shots", "shot_seed"});
            detail::read_opt(m, "lambda_reg", c.lambda_reg);
            detail::read_opt(m, "lambda_max", c.lambda_max);
            detail::read_opt(m, "shots", c.mode.shots);
            detail::read_opt(m, "shot_seed", c.mode.seed);
        }
        if (j.contains("trotter")) {
            c.sweep = sweep_config_from_json(j["trotter"]);
        }
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(fmt::format("bad config value: {}", e.what()));
    }
    c.validate();
    return c;
}

namespace {

Eigen::VectorXd real_amplitudes(const StateVector &psi) {
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < psi.size(); ++j) {
        sum += psi[j];
    }
    const cplx rot = std::abs(sum) > 0.0 ? std::conj(sum) / std::abs(sum) : cplx{1.0, 0.0};
    Eigen::VectorXd a(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        a[static_cast<Eigen::Index>(j)] = (psi[j] * rot).real();
    }
    return a;
}

// e^{zeta x_j} times the decoded amplitude, in units of K.
Eigen::VectorXd decoded_curve(const StateVector &psi, const Grid &g, const MarketParams &m,
                              Encoding enc) {
    if (psi.n_qubits() != g.n_qubits) {
        throw ValidationError(fmt::format("{}-qubit state on a {}-qubit grid", psi.n_qubits(), g.n_qubits));
    }
    Eigen::VectorXd a = real_amplitudes(psi);
    if (enc == Encoding::SqrtProbability) {
        a = a.array().square();
    }
    const double zeta = m.zeta();
    for (std::size_t j = 0; j < g.size(); ++j) {
        a[static_cast<Eigen::Index>(j)] *= std::exp(zeta * g.x(j));
    }
    return a;
}

Eigen::VectorXd payoff_curve(const Grid &g, const MarketParams &m) {
    return (g.prices(m.strike).array() - m.strike).max(0.0);
}

template <class F>
auto staged(const char *stage, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError &) {
        throw;
    } catch (const std::exception &e) {
        throw StageError(stage, e.what());
    }
}

} // namespace

double payoff_scale(const StateVector &psi0, const Grid &g, const MarketParams &m, Encoding enc) {
    const Eigen::VectorXd q = decoded_curve(psi0, g, m, enc) * m.strike;
    const Eigen::VectorXd p = payoff_curve(g, m);
    const double qq = q.squaredNorm();
    if (!(qq > 0.0)) {
        throw ValidationError("initial state decodes to a zero curve");
    }
    return p.dot(q) / qq;
}

PriceSlice to_option_prices(const StateVector &psi, double log_norm, const Grid &g,
                            const MarketParams &m, double tau, double scale, Encoding enc) {
    if (!(tau >= 0.0) || tau > m.maturity * (1.0 + 1e-12)) {
        throw RangeError(fmt::format("tau = {} puts calendar time outside [0, T = {}]", tau, m.maturity));
    }
    PriceSlice s;
    s.tau = tau;
    s.t = std::max(0.0, m.maturity - tau);
    s.spots = g.prices(m.strike);
    s.values = decoded_curve(psi, g, m, enc) * (m.strike * scale * std::exp(log_norm));
    return s;
}

Eigen::VectorXd exact_chain_prices(const DiscreteHamiltonian &h, double tau) {
    const Grid &g = h.grid;
    const MarketParams &m = h.params;
    Eigen::VectorXd w0(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.x(j);
        w0[static_cast<Eigen::Index>(j)] = std::max(std::exp(x) - 1.0, 0.0) * std::exp(-h.zeta * x);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.matrix);
    const Eigen::VectorXd prop =
        eig.eigenvectors() *
        ((-tau * eig.eigenvalues().array()).exp() * (eig.eigenvectors().transpose() * w0).array()).matrix();
    Eigen::VectorXd out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        out[i] = m.strike * std::exp(h.zeta * g.x(j)) * prop[i];
    }
    return out;
}

SliceErrors slice_errors(const PriceSlice &s, const Eigen::VectorXd &analytic,
                         const Eigen::VectorXd &chain, const MarketParams &m) {
    SliceErrors e;
    const ErrorReport ra = compare(s.values, analytic);
    e.l2_analytic = ra.l2;
    e.mse_analytic = ra.mse;
    e.l2_exactprop = l2_error(s.values, chain);
    e.rel_l2_chain = relative_l2(s.values, chain);
    const double disc = m.strike * std::exp(-m.r * s.tau);
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < s.values.size(); ++j) {
        margin = std::min(margin, s.values[j] - std::max(s.spots[j] - disc, 0.0));
    }
    e.min_arbitrage_margin = margin;
    return e;
}

Prepared prepare(const RunConfig &config) {
    Prepared p;
    p.config = config;
    staged("config", [&] {
        config.validate();
        return 0;
    });
    p.hamiltonian = staged("hamiltonian", [&] {
        return bsm_hamiltonian(config.market, config.grid, config.resolved_stencil());
    });
    p.spec = staged("ansatz", [&] { return config.ansatz(); });
    p.target = staged("stateprep", [&] { return payoff_state(config.market, config.grid, config.encoding); });
    p.fit = staged("fit", [&] { return fit(p.spec, p.target, config.fit); });
    p.scale = staged("price", [&] {
        return payoff_scale(run(p.spec, p.fit.theta), config.grid, config.market, config.encoding);
    });
    return p;
}

Report run_prepared(const Prepared &p) {
    const RunConfig &c = p.config;
    Report r;
    r.config = to_json(c);
    r.fit_fidelity = p.fit.fidelity;
    r.fit_below_floor = p.fit.below_floor;
    const double tau = c.evolution_tau();
    r.trajectory = staged("evolve", [&] {
        if (c.algorithm == Algorithm::McLachlan) {
            EvolutionConfig ec;
            ec.total_tau = tau;
            ec.n_steps = c.n_steps;
            ec.lambda_reg = c.lambda_reg;
            ec.lambda_max = c.lambda_max;
            ec.mode = c.mode;
            return evolve(p.spec, p.fit.theta, p.hamiltonian.pauli, ec);
        }
        return evolve_trotter(p.spec, p.fit.theta, p.hamiltonian.pauli, tau, c.n_steps, c.sweep);
    });
    staged("price", [&] {
        r.prices.scale = p.scale;
        const Trajectory &t = r.trajectory;
        for (std::size_t k = 0; k < t.thetas.size(); ++k) {
            r.prices.slices.push_back(to_option_prices(run(p.spec, t.thetas[k]), t.log_norms[k], c.grid,
                                                       c.market, t.taus[k], p.scale, c.encoding));
        }
        return 0;
    });
    staged("oracle", [&] {
        const PriceSlice &last = r.prices.slices.back();
        r.analytic.resize(last.spots.size());
        for (Eigen::Index j = 0; j < last.spots.size(); ++j) {
            r.analytic[j] = bs_analytic_call(c.market, last.spots[j], last.t);
        }
        r.exact_chain = exact_chain_prices(p.hamiltonian, last.tau);
        r.final_errors = slice_errors(last, r.analytic, r.exact_chain, c.market);
        return 0;
    });
    return r;
}

Report run_pipeline(const RunConfig &config) { return run_prepared(prepare(config)); }

std::vector<StudyRow> convergence_study(const RunConfig &base, const std::vector<std::size_t> &n_steps,
                                        const std::vector<unsigned> &qubits) {
    if (n_steps.empty() || qubits.empty()) {
        throw ValidationError("convergence study needs nonempty N_T and qubit lists");
    }
    std::vector<StudyRow> rows(n_steps.size() * qubits.size());
    for (std::size_t qi = 0; qi < qubits.size(); ++qi) {
        RunConfig c = base;
        c.grid.n_qubits = qubits[qi];
        std::optional<Prepared> prep;
        std::string prep_error;
        try {
            prep = prepare(c);
        } catch (const std::exception &e) {
            prep_error = e.what();
        }
        detail::parallel_for(n_steps.size(), [&](std::size_t ti) {
            StudyRow &row = rows[qi * n_steps.size() + ti];
            row.n_qubits = qubits[qi];
            row.n_steps = n_steps[ti];
            if (!prep) {
                row.error = prep_error;
                return;
            }
            try {
                Prepared p = *prep;
                p.config.n_steps = n_steps[ti];
                p.config.validate();
                const Report r = run_prepared(p);
                row.l2_analytic = r.final_errors.l2_analytic;
                row.l2_exactprop = r.final_errors.l2_exactprop;
                row.mse = r.final_errors.mse_analytic;
            } catch (const std::exception &e) {
                row.error = e.what();
            }
        });
    }
    return rows;
}

std::string study_csv(const std::vector<StudyRow> &rows) {
    fmt::memory_buffer buf;
    auto out = std::back_inserter(buf);
    fmt::format_to(out, "n_qubits,N_T,l2_analytic,l2_exactprop,mse,error\n");
    for (const auto &r : rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        fmt::format_to(out, "{},{},{:.17g},{:.17g},{:.17g},{}\n", r.n_qubits, r.n_steps, r.l2_analytic,
                       r.l2_exactprop, r.mse, err);
    }
    return fmt::to_string(buf);
}

std::string prices_csv(const PriceCurve &c) {
    fmt::memory_buffer buf;
    auto out = std::back_inserter(buf);
    fmt::format_to(out, "slice,tau,t,S,price\n");
    for (std::size_t k = 0; k < c.slices.size(); ++k) {
        const PriceSlice &s = c.slices[k];
        for (Eigen::Index j = 0; j < s.spots.size(); ++j) {
            fmt::format_to(out, "{},{:.17g},{:.17g},{:.17g},{:.17g}\n", k, s.tau, s.t, s.spots[j], s.values[j]);
        }
    }
    return fmt::to_string(buf);
}

nlohmann::json manifest(const Report &r) {
    const SliceErrors &e = r.final_errors;
    return {
        {"config", r.config},
        {"fit", {{"fidelity", r.fit_fidelity}, {"below_floor", r.fit_below_floor}}},
        {"scale", r.prices.scale},
        {"slices", r.prices.slices.size()},
        {"diagnostics",
         {{"energy_violations", r.trajectory.energy_violations},
          {"regularization_escalations", r.trajectory.regularization_escalations},
          {"flat_directions", r.trajectory.flat_directions}}},
        {"final_errors",
         {{"l2_analytic", e.l2_analytic},
          {"l2_exactprop", e.l2_exactprop},
          {"mse_analytic", e.mse_analytic},
          {"rel_l2_chain", e.rel_l2_chain},
          {"min_arbitrage_margin", e.min_arbitrage_margin}}},
    };
}

namespace {
void write_text(const std::filesystem::path &p, const std::string &text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        throw Error(fmt::format("cannot write {}", p.string()));
    }
    f << text;
}
} // namespace

void write_report(const Report &r, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "prices.csv", prices_csv(r.prices));
    write_text(dir / "trajectory.csv", trajectory_csv(r.trajectory));
    if (!r.trajectory.objective_log.empty()) {
        write_text(dir / "objective.csv", objective_csv(r.trajectory));
    }
    write_text(dir / "manifest.json", manifest(r).dump(2) + "\n");
}

RunConfig preset(const std::string &name) {
    RunConfig c;
    c.grid = Grid{5, -1.0, 1.0};
    c.far_field_upper = true;
    c.axes = {false, Axis::Y};
    c.depth = 4;
    if (name == "fig5") {
        c.grid.n_qubits = 4;
        c.depth = 2;
        c.axes = {true, Axis::Y};
        c.n_steps = 20;
    } else if (name == "fig6") {
        c.n_steps = 100;
    } else if (name == "converge") {
        c.depth = 6;
        c.n_steps = 1000;
    } else {
        throw ValidationError(fmt::format("unknown preset '{}' (fig5|fig6|converge)", name));
    }
    c.validate();
    return c;
}

std::vector<std::string> preset_names() { return {"fig5", "fig6", "converge"}; }

} // namespace wick
