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
#include <cmath>
#include <gtest/gtest.h>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "wick/error.hpp"
#include "wick/mclachlan.hpp"
#include "wick/oracle.hpp"
#include "wick/stateprep.hpp"
#include "wick/trotter.hpp"

namespace {

using namespace wick;

PauliTerm term(double c, const char *s) { return {c, PauliString::parse(s)}; }

TEST(Plan, SingleTermRepeats) {
    const TrotterPlan p = plan(PauliSum(2, {term(0.5, "XZ")}), 1.0, 4);
    ASSERT_EQ(p.factors.size(), 4u);
    EXPECT_EQ(p.terms_per_slice, 1u);
    EXPECT_DOUBLE_EQ(p.step, 0.25);
    for (const auto &f : p.factors) {
        EXPECT_EQ(f.string.str(), "XZ");
    }
}

TEST(Plan, OrderIsCanonicalAndRepeated) {
    const PauliSum h(1, {term(3.0, "Z"), term(1.0, "X"), term(2.0, "Y")});
    const TrotterPlan p = plan(h, 1.0, 2);
    ASSERT_EQ(p.factors.size(), 6u);
    const char *want[] = {"X", "Y", "Z", "X", "Y", "Z"};
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_EQ(p.factors[k].string.str(), want[k]);
    }
    EXPECT_THROW(plan(h, 1.0, 0), ValidationError);
}

TEST(Plan, MatrixAppliesFirstFactorFirst) {
    const PauliSum h(1, {term(1.0, "X"), term(1.0, "Z")});
    const TrotterPlan p = plan(h, 0.7, 1);
    const Eigen::MatrixXcd x = matrix_of(PauliSum(1, {term(1.0, "X")}));
    const Eigen::MatrixXcd z = matrix_of(PauliSum(1, {term(1.0, "Z")}));
    const Eigen::MatrixXcd want = (-0.7 * z).exp() * (-0.7 * x).exp();
    EXPECT_LT((plan_matrix(p) - want).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Plan, ErrorHalvesWithSlices) {
    const PauliSum h = bsm_hamiltonian(MarketParams{}, Grid{3, -1.0, 1.0}, StencilSpec{}).pauli;
    const Eigen::MatrixXcd exact = (-matrix_of(h)).exp();
    const double e1 = (plan_matrix(plan(h, 1.0, 16)) - exact).norm();
    const double e2 = (plan_matrix(plan(h, 1.0, 32)) - exact).norm();
    EXPECT_NEAR(std::log2(e1 / e2), 1.0, 0.3);
}

TEST(Objective, NoStepPeaksAtPrevious) {
    std::mt19937_64 rng(1);
    const AnsatzSpec spec = AnsatzSpec::random(AnsatzFamily::HilbertEvolution, 2, 2, 5);
    const auto prev = fixtures::random_angles(spec.parameter_count(), rng);
    const double at = objective_F(spec, prev, prev, term(1.0, "ZX"), 0.0);
    EXPECT_NEAR(at, 1.0, 1e-14);
    for (int k = 0; k < 5; ++k) {
        EXPECT_LE(objective_F(spec, prev, fixtures::random_angles(prev.size(), rng), term(1.0, "ZX"), 0.0),
                  at + 1e-14);
    }
}

TEST(Objective, CoshWhenExpectationVanishes) {
    // |+> on one qubit has <Z> = 0
    const AnsatzSpec spec = AnsatzSpec::uniform(AnsatzFamily::HilbertEvolution, 1, 1, Axis::Z);
    const std::vector<double> th{0.0};
    EXPECT_NEAR(objective_F(spec, th, th, term(0.8, "Z"), 0.5), std::cosh(0.4), 1e-14);
}

TEST(Objective, MatchesDenseExponential) {
    std::mt19937_64 rng(2);
    const AnsatzSpec spec = AnsatzSpec::random(AnsatzFamily::HilbertEvolution, 3, 2, 6);
    const auto prev = fixtures::random_angles(spec.parameter_count(), rng);
    const auto alpha = fixtures::random_angles(spec.parameter_count(), rng);
    const PauliTerm t = term(0.6, "XIY");
    const double s = 0.3;
    const Eigen::MatrixXcd e = (-s * matrix_of(PauliSum(3, {t}))).exp();
    const Eigen::VectorXcd phi = e * run(spec, prev).to_eigen();
    const double want = phi.dot(run(spec, alpha).to_eigen()).real();
    EXPECT_NEAR(objective_F(spec, prev, alpha, t, s), want, 1e-10);
}

TEST(Rotosolve, KnownMaxima) {
    const double two_pi = 2 * std::numbers::pi;
    auto sine = [](double x) { return std::sin(x); };
    EXPECT_NEAR(rotosolve_step(0.0, 1.0, 0.0, sine, two_pi).alpha, std::numbers::pi / 2, 1e-15);
    auto cosine = [](double x) { return std::cos(x); };
    const double a = rotosolve_step(1.0, 0.0, 0.0, cosine, two_pi).alpha;
    EXPECT_NEAR(std::cos(a), 1.0, 1e-15);
    EXPECT_TRUE(rotosolve_step(0.0, 0.0, 0.3, sine).flat);
}

TEST(Rotosolve, MatchesGridSearch) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double period : {2 * std::numbers::pi, 4 * std::numbers::pi}) {
        for (int k = 0; k < 20; ++k) {
            const double a = u(rng);
            const double b = u(rng);
            const double w = 2 * std::numbers::pi / period;
            auto f = [&](double x) { return a * std::sin(w * x) + b * std::cos(w * x); };
            const double a0 = 3 * u(rng);
            const double got = rotosolve_step(f(a0), f(a0 + period / 4), a0, f, period).alpha;
            double best = -1e300;
            for (int g = 0; g < 10000; ++g) {
                best = std::max(best, f(period * g / 10000.0));
            }
            EXPECT_NEAR(f(got), best, 1e-6);
            // the argmax itself, modulo the period
            double best_x = 0.0;
            for (int g = 0; g < 10000; ++g) {
                if (f(period * g / 10000.0) >= best) {
                    best_x = period * g / 10000.0;
                }
            }
            const double d = std::remainder(got - best_x, period);
            EXPECT_LT(std::abs(d), 1e-3 * period);
        }
    }
}

TEST(Absorb, ZeroStepKeepsAngles) {
    std::mt19937_64 rng(4);
    const AnsatzSpec spec = AnsatzSpec::uniform(AnsatzFamily::HilbertEvolution, 3, 2, Axis::Y);
    const auto prev = fixtures::random_angles(spec.parameter_count(), rng);
    const AbsorbResult r = absorb_term(spec, prev, term(1.0, "ZIZ"), 0.0);
    EXPECT_NEAR(fixtures::overlap2(run(spec, r.theta), run(spec, prev)), 1.0, 1e-9);
}

TEST(Absorb, TracksOneFactorAndTraceIsMonotone) {
    const MarketParams m;
    const Grid g{3, -1.0, 1.0};
    const PauliSum h = bsm_hamiltonian(m, g, StencilSpec{}).pauli;
    const AnsatzSpec spec = AnsatzSpec::uniform(AnsatzFamily::HilbertEvolution, 3, 3, Axis::Y);
    const FitResult f = fit(spec, payoff_state(m, g));
    const double s = 0.05;
    for (const auto &t : h.terms()) {
        if (t.string.is_identity()) {
            continue;
        }
        const AbsorbResult r = absorb_term(spec, f.theta, t, s);
        const Eigen::MatrixXcd e = (-s * matrix_of(PauliSum(3, {t}))).exp();
        const StateVector want = StateVector::from_eigen(e * run(spec, f.theta).to_eigen());
        EXPECT_GE(fixtures::overlap2(run(spec, r.theta), want), 0.999) << t.string.str();
        for (std::size_t k = 1; k < r.objective_trace.size(); ++k) {
            EXPECT_GE(r.objective_trace[k], r.objective_trace[k - 1] - 1e-12);
        }
    }
}

TEST(EvolveTrotter, EmptyHamiltonianReturnsStart) {
    const AnsatzSpec spec = AnsatzSpec::uniform(AnsatzFamily::HilbertEvolution, 2, 1, Axis::Y);
    const std::vector<double> th{0.2, 0.4};
    const Trajectory t = evolve_trotter(spec, th, PauliSum(2), 1.0, 10);
    ASSERT_EQ(t.thetas.size(), 1u);
    EXPECT_EQ(t.thetas[0], th);
}

TEST(EvolveTrotter, AgreesWithExactAndMcLachlan) {
    const MarketParams m;
    const Grid g{4, -1.0, 1.0};
    const DiscreteHamiltonian h = bsm_hamiltonian(m, g, StencilSpec{});
    const AnsatzSpec spec = AnsatzSpec::uniform(AnsatzFamily::HilbertEvolution, 4, 4, Axis::Y);
    FitConfig fc;
    fc.starts = 4;
    const FitResult f = fit(spec, payoff_state(m, g), fc);
    const double tau = 0.5;
    const Trajectory tr = evolve_trotter(spec, f.theta, h.pauli, tau, 50);
    ASSERT_EQ(tr.thetas.size(), 51u);
    const Propagated ref = exact_propagate(h.matrix, run(spec, f.theta), tau);
    const StateVector end = run(spec, tr.thetas.back());
    EXPECT_GE(fixtures::overlap2(end, ref.state), 0.98);
    EvolutionConfig cfg;
    cfg.total_tau = tau;
    cfg.n_steps = 100;
    const Trajectory mc = evolve(spec, f.theta, h.pauli, cfg);
    EXPECT_GE(fixtures::overlap2(end, run(spec, mc.thetas.back())), 0.98);
    EXPECT_NEAR(tr.log_norms.back(), ref.log_norm, 0.05);
}

TEST(SweepConfig, JsonAndValidation) {
    SweepConfig c;
    c.sweeps = 3;
    c.seed = 5;
    const SweepConfig d = sweep_config_from_json(to_json(c));
    EXPECT_EQ(d.sweeps, 3u);
    EXPECT_EQ(d.seed, 5u);
    c.sweeps = 0;
    EXPECT_THROW(c.validate(), ValidationError);
}

} // namespace
