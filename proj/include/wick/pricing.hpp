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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wick/fin_hamiltonian.hpp"
#include "wick/mclachlan.hpp"
#include "wick/oracle.hpp"
#include "wick/stateprep.hpp"
#include "wick/trotter.hpp"

namespace wick {

enum class Algorithm { McLachlan, Trotter };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string &name);

/// How rotation axes are assigned when the config does not list them.
struct AxisRule {
    bool random = true;    ///< uniform over {X, Y, Z} from seed
    Axis fixed = Axis::Y;  ///< used when random is false
};

struct RunConfig {
    MarketParams market;
    Grid grid;
    StencilSpec stencil;
    bool far_field_upper = false; ///< replace alpha_upper by far_field_alpha
    AnsatzFamily family = AnsatzFamily::HilbertEvolution;
    unsigned depth = 4;
    AxisRule axes;
    std::uint64_t ansatz_seed = 11;
    Encoding encoding = Encoding::Amplitude;
    FitConfig fit;
    Algorithm algorithm = Algorithm::McLachlan;
    std::size_t n_steps = 100;
    std::optional<double> tau; ///< evolution length in years; defaults to maturity
    double lambda_reg = 1e-6;
    double lambda_max = 1e-2;
    MeasureMode mode;
    SweepConfig sweep;

    double evolution_tau() const { return tau.value_or(market.maturity); }
    StencilSpec resolved_stencil() const;
    AnsatzSpec ansatz() const;
    void validate() const;
};

/// Every field written out, seeds included.
nlohmann::json to_json(const RunConfig &c);
/// Unknown keys are rejected at every level.
RunConfig run_config_from_json(const nlohmann::json &j);

struct PriceSlice {
    double tau = 0.0; ///< evolution time
    double t = 0.0;   ///< calendar time T - tau
    Eigen::VectorXd spots;
    Eigen::VectorXd values;
};

struct PriceCurve {
    double scale = 1.0;
    std::vector<PriceSlice> slices;
};

/// Maps a unit-norm state with accumulated log norm back to currency:
/// value_j = K * scale * e^{log_norm} * e^{zeta x_j} * a_j, where a is the
/// state after removing the global phase arg(sum psi). Raises RangeError
/// for tau outside [0, T].
PriceSlice to_option_prices(const StateVector &psi, double log_norm, const Grid &g,
                            const MarketParams &m, double tau, double scale = 1.0,
                            Encoding enc = Encoding::Amplitude);

/// Least-squares scale making the tau = 0 slice match max(S_j - K, 0).
double payoff_scale(const StateVector &psi0, const Grid &g, const MarketParams &m,
                    Encoding enc = Encoding::Amplitude);

/// Payoff, Hamiltonian and fitted initial angles for one config.
struct Prepared {
    RunConfig config;
    DiscreteHamiltonian hamiltonian;
    AnsatzSpec spec;
    TargetState target;
    FitResult fit;
    double scale = 1.0;
};

Prepared prepare(const RunConfig &config);

struct SliceErrors {
    double l2_analytic = 0.0;
    double l2_exactprop = 0.0;
    double mse_analytic = 0.0;
    double rel_l2_chain = 0.0;      ///< unnormalized, vs the exact-propagator chain
    double min_arbitrage_margin = 0.0; ///< min_j price_j - max(S_j - K e^{-r tau}, 0)
};

struct Report {
    nlohmann::json config;
    double fit_fidelity = 0.0;
    bool fit_below_floor = false;
    Trajectory trajectory;
    PriceCurve prices;
    Eigen::VectorXd analytic;   ///< bs_analytic_call at the final slice
    Eigen::VectorXd exact_chain; ///< K e^{zeta x} e^{-tau H} w0 at the final slice
    SliceErrors final_errors;
};

/// payoff -> fit -> evolve -> prices -> errors. Failures surface as
/// StageError tagged with the stage name.
Report run_pipeline(const RunConfig &config);
Report run_prepared(const Prepared &p);

/// Errors of a price slice against both oracles.
SliceErrors slice_errors(const PriceSlice &s, const Eigen::VectorXd &analytic,
                         const Eigen::VectorXd &chain, const MarketParams &m);

/// Classical chain K e^{zeta x} e^{-tau H} w0 with w0 the transformed payoff.
Eigen::VectorXd exact_chain_prices(const DiscreteHamiltonian &h, double tau);

struct StudyRow {
    unsigned n_qubits = 0;
    std::size_t n_steps = 0;
    double l2_analytic = 0.0;
    double l2_exactprop = 0.0;
    double mse = 0.0;
    std::string error; ///< empty on success
};

/// One pipeline per (qubits, N_T) cell; the fit is shared across N_T.
std::vector<StudyRow> convergence_study(const RunConfig &base, const std::vector<std::size_t> &n_steps,
                                        const std::vector<unsigned> &qubits);

/// n_qubits,N_T,l2_analytic,l2_exactprop,mse[,error]
std::string study_csv(const std::vector<StudyRow> &rows);

/// slice,tau,t,S,price
std::string prices_csv(const PriceCurve &c);

/// Writes prices.csv, trajectory.csv, objective.csv (Trotter) and manifest.json.
void write_report(const Report &r, const std::filesystem::path &dir);

nlohmann::json manifest(const Report &r);

/// Built-in presets: "fig5", "fig6", "converge".
RunConfig preset(const std::string &name);
std::vector<std::string> preset_names();

} // namespace wick
