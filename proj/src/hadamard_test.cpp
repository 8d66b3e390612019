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
#include "wick/hadamard_test.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <optional>
#include <random>

#include "wick/error.hpp"

namespace wick {

MeasureMode MeasureMode::sampled(std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw ValidationError("shot count must be positive");
    }
    return {shots, seed};
}

namespace {

// Single-axis Pauli string on the widened register.
PauliString lone_pauli(unsigned width, unsigned q, Axis a) {
    std::vector<Axis> axes(width, Axis::I);
    axes[q] = a;
    return PauliString(std::move(axes));
}

PauliString widen(const PauliString &p) {
    std::vector<Axis> axes = p.axes();
    axes.push_back(Axis::I);
    return PauliString(std::move(axes));
}

// Ancilla is qubit n. Branch 0 carries an insertion after parameter i0,
// branch 1 after i1; `tail` is applied on branch 1 at the end. Returns
// <Z_ancilla> after the closing Hadamard, estimated per `mode`.
double interfere(const AnsatzSpec &spec, std::span<const double> theta,
                 std::optional<std::size_t> i0, std::optional<std::size_t> i1,
                 const std::optional<PauliString> &tail, double phase, MeasureMode mode) {
    const Circuit sys = build_circuit(spec);
    if (theta.size() != sys.parameter_count()) {
        throw ValidationError(fmt::format("ansatz takes {} parameters, got {}",
                                          sys.parameter_count(), theta.size()));
    }
    const unsigned n = spec.n_qubits;
    const unsigned anc = n;
    StateVector psi(n + 1);
    apply_gate(psi, Gate::h(anc), 0.0);
    apply_gate(psi, Gate::fixed_rotation(Axis::Z, anc, phase), phase);

    for (const auto &g : sys.gates()) {
        apply_gate(psi, g, g.param ? theta[*g.param] : g.angle);
        if (!g.param) {
            continue;
        }
        if (i0 && *i0 == *g.param) {
            apply_gate(psi, Gate::pauli(anc, Axis::X), 0.0);
            apply_gate(psi, Gate::controlled_pauli_string(anc, lone_pauli(n + 1, g.target, g.axis)), 0.0);
            apply_gate(psi, Gate::pauli(anc, Axis::X), 0.0);
        }
        if (i1 && *i1 == *g.param) {
            apply_gate(psi, Gate::controlled_pauli_string(anc, lone_pauli(n + 1, g.target, g.axis)), 0.0);
        }
    }
    if (tail) {
        apply_gate(psi, Gate::controlled_pauli_string(anc, widen(*tail)), 0.0);
    }
    apply_gate(psi, Gate::h(anc), 0.0);

    const std::size_t bit = std::size_t{1} << anc;
    double p0 = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if ((k & bit) == 0) {
            p0 += std::norm(psi[k]);
        }
    }
    p0 = std::clamp(p0, 0.0, 1.0);
    if (mode.is_exact()) {
        return 2.0 * p0 - 1.0;
    }
    std::mt19937_64 rng(mode.seed);
    std::binomial_distribution<std::uint64_t> draw(mode.shots, p0);
    const double frac = static_cast<double>(draw(rng)) / static_cast<double>(mode.shots);
    return 2.0 * frac - 1.0;
}

void check_index(const AnsatzSpec &spec, std::size_t i) {
    if (i >= spec.parameter_count()) {
        throw ValidationError(fmt::format("parameter index {} out of range ({} parameters)", i,
                                          spec.parameter_count()));
    }
}

constexpr cplx kF{0.0, -0.5};

} // namespace

double hadamard_test_A(const AnsatzSpec &spec, std::span<const double> theta, std::size_t i,
                       std::size_t j, MeasureMode mode) {
    spec.validate();
    check_index(spec, i);
    check_index(spec, j);
    const cplx w = std::conj(kF) * kF;
    return std::abs(w) * interfere(spec, theta, i, j, std::nullopt, std::arg(w), mode);
}

double hadamard_test_C(const AnsatzSpec &spec, std::span<const double> theta, std::size_t i,
                       const PauliTerm &term, MeasureMode mode) {
    spec.validate();
    check_index(spec, i);
    if (term.string.n_qubits() != spec.n_qubits) {
        throw ValidationError(fmt::format("{}-qubit term for a {}-qubit ansatz",
                                          term.string.n_qubits(), spec.n_qubits));
    }
    if (term.coefficient == 0.0) {
        return 0.0;
    }
    const cplx w = std::conj(kF) * term.coefficient;
    return std::abs(w) * interfere(spec, theta, i, std::nullopt, term.string, std::arg(w), mode);
}

} // namespace wick
