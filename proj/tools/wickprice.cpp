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
#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <optional>

#include "wick/error.hpp"
#include "wick/pricing.hpp"

namespace {

struct Overrides {
    std::string preset; ///< empty: fig6, or converge for the study
    std::string config_path;
    std::optional<unsigned> qubits;
    std::optional<unsigned> depth;
    std::optional<std::size_t> steps;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<std::string> algo;
    std::optional<double> tau;
};

void add_config_options(CLI::App *cmd, Overrides &o, bool evolution) {
    cmd->add_option("--preset", o.preset, "Built-in preset (fig5|fig6|converge)");
    cmd->add_option("--config", o.config_path, "JSON run config (overrides --preset)");
    cmd->add_option("--qubits", o.qubits, "Grid/ansatz qubit count");
    cmd->add_option("--depth", o.depth, "Ansatz depth");
    cmd->add_option("--seed", o.seed, "Seed for axes, fit starts and shots");
    if (evolution) {
        cmd->add_option("--algo", o.algo, "mclachlan|trotter")->check(CLI::IsMember({"mclachlan", "trotter"}));
        cmd->add_option("--steps", o.steps, "Time steps N_T (Trotter slices for --algo trotter)");
        cmd->add_option("--shots", o.shots, "Ancilla shots per entry (0 = exact)");
        cmd->add_option("--tau", o.tau, "Evolution length in years (default: maturity)");
    }
}

wick::RunConfig resolve(const Overrides &o) {
    wick::RunConfig c;
    try {
        if (!o.config_path.empty()) {
            std::ifstream f(o.config_path);
            if (!f) {
                throw wick::ValidationError(fmt::format("cannot open config {}", o.config_path));
            }
            c = wick::run_config_from_json(nlohmann::json::parse(f));
        } else {
            c = wick::preset(o.preset.empty() ? "fig6" : o.preset);
        }
        if (o.qubits) {
            c.grid.n_qubits = *o.qubits;
        }
        if (o.depth) {
            c.depth = *o.depth;
        }
        if (o.steps) {
            c.n_steps = *o.steps;
        }
        if (o.seed) {
            c.ansatz_seed = *o.seed;
            c.fit.seed = *o.seed;
            c.mode.seed = *o.seed;
            c.sweep.seed = *o.seed;
        }
        if (o.shots) {
            c.mode.shots = *o.shots;
        }
        if (o.algo) {
            c.algorithm = wick::algorithm_from_name(*o.algo);
        }
        if (o.tau) {
            c.tau = *o.tau;
        }
        c.validate();
    } catch (const nlohmann::json::exception &e) {
        throw wick::StageError("config", e.what());
    } catch (const wick::StageError &) {
        throw;
    } catch (const std::exception &e) {
        throw wick::StageError("config", e.what());
    }
    return c;
}

void write_file(const std::filesystem::path &p, const std::string &text) {
    std::filesystem::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        throw wick::Error(fmt::format("cannot write {}", p.string()));
    }
    f << text;
}

template <class T>
std::vector<T> parse_list(const std::string &s) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(static_cast<T>(std::stoull(item)));
        }
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Option pricing by variational imaginary-time evolution"};
    app.require_subcommand(1);
    Overrides o;
    std::string out = "out";

    auto *print_cfg = app.add_subcommand("config", "Print the resolved run config as JSON");
    add_config_options(print_cfg, o, true);

    auto *prep = app.add_subcommand("prep", "Build the payoff state and fit the ansatz to it");
    add_config_options(prep, o, false);
    prep->add_option("--out", out, "Output directory");

    auto *evolve = app.add_subcommand("evolve", "Fit, then evolve the parameters in imaginary time");
    add_config_options(evolve, o, true);
    evolve->add_option("--out", out, "Output directory");

    auto *price = app.add_subcommand("price", "Full pipeline: prices, errors and manifest");
    add_config_options(price, o, true);
    price->add_option("--out", out, "Output directory");

    std::string nt_list = "10,100,1000";
    std::string qubit_list = "2,5";
    auto *converge = app.add_subcommand("converge", "Error table over N_T and qubit counts");
    add_config_options(converge, o, true);
    converge->add_option("--nt", nt_list, "Comma-separated N_T values");
    converge->add_option("--qubit-list", qubit_list, "Comma-separated qubit counts");
    converge->add_option("--out", out, "Output directory");

    std::string kind = "bs";
    double spot = 1.0;
    double t = 0.0;
    std::size_t fd_steps = 0;
    int fd_order = 2;
    auto *oracle = app.add_subcommand("oracle", "Classical reference values");
    add_config_options(oracle, o, false);
    oracle->add_option("--kind", kind, "bs|fd|asian")->check(CLI::IsMember({"bs", "fd", "asian"}));
    oracle->add_option("--spot", spot, "Spot price (bs, asian)");
    oracle->add_option("--t", t, "Calendar time (bs)");
    oracle->add_option("--fd-steps", fd_steps, "Time steps (fd, asian); 0 = smallest stable");
    oracle->add_option("--order", fd_order, "Spatial order 2|4 (fd)");

    CLI11_PARSE(app, argc, argv);
    if (*converge && o.preset.empty()) {
        o.preset = "converge";
    }

    try {
        const wick::RunConfig cfg = resolve(o);
        if (*print_cfg) {
            std::cout << wick::to_json(cfg).dump(2) << "\n";
        } else if (*prep) {
            const wick::Prepared p = wick::prepare(cfg);
            nlohmann::json j{{"config", wick::to_json(cfg)},
                             {"theta", p.fit.theta},
                             {"fidelity", p.fit.fidelity},
                             {"below_floor", p.fit.below_floor},
                             {"scale", p.scale}};
            write_file(std::filesystem::path(out) / "prep.json", j.dump(2) + "\n");
            fmt::print("fidelity {:.6f}{}\n", p.fit.fidelity, p.fit.below_floor ? " (below floor)" : "");
        } else if (*evolve) {
            const wick::Report r = wick::run_pipeline(cfg);
            write_file(std::filesystem::path(out) / "trajectory.csv", wick::trajectory_csv(r.trajectory));
            if (!r.trajectory.objective_log.empty()) {
                write_file(std::filesystem::path(out) / "objective.csv", wick::objective_csv(r.trajectory));
            }
            write_file(std::filesystem::path(out) / "manifest.json", wick::manifest(r).dump(2) + "\n");
            fmt::print("{} steps, final energy {:.6g}\n", r.trajectory.steps(), r.trajectory.energies.back());
        } else if (*price) {
            const wick::Report r = wick::run_pipeline(cfg);
            wick::write_report(r, out);
            const auto &e = r.final_errors;
            fmt::print("l2_analytic {:.6g} l2_exactprop {:.6g} rel_l2_chain {:.6g}\n", e.l2_analytic,
                       e.l2_exactprop, e.rel_l2_chain);
        } else if (*converge) {
            const auto rows = wick::convergence_study(cfg, parse_list<std::size_t>(nt_list),
                                                      parse_list<unsigned>(qubit_list));
            const std::string csv = wick::study_csv(rows);
            write_file(std::filesystem::path(out) / "study.csv", csv);
            std::cout << csv;
        } else if (*oracle) {
            const wick::MarketParams &m = cfg.market;
            if (kind == "bs") {
                const wick::BsQuote q = wick::bs_call_quote(m, spot, t);
                fmt::print("{:.17g}{}\n", q.price, q.at_expiry ? " (at expiry)" : "");
            } else {
                wick::FdConfig fc;
                fc.kind = kind == "fd" ? wick::FdKind::BsmRescaled : wick::FdKind::Asian;
                fc.order = fd_order;
                const std::size_t n = fd_steps ? fd_steps : wick::fd_min_steps(fc, m, cfg.grid);
                const wick::FdSolution sol = wick::fd_solve(fc, m, cfg.grid, n);
                if (kind == "fd") {
                    std::cout << wick::slice_csv(sol.x, sol.values.back() * m.strike);
                } else {
                    fmt::print("{:.17g}\n", wick::asian_price_from_fd(sol, m, spot));
                }
            }
        }
    } catch (const wick::StageError &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
