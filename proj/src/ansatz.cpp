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
#include "wick/ansatz.hpp"

#include <fmt/format.h>
#include <random>

#include "json_util.hpp"
#include "wick/error.hpp"

namespace wick {

std::string family_name(AnsatzFamily f) {
    return f == AnsatzFamily::HilbertEvolution ? "hilbert" : "hardware_efficient";
}

AnsatzFamily family_from_name(const std::string &name) {
    if (name == "hilbert") {
        return AnsatzFamily::HilbertEvolution;
    }
    if (name == "hardware_efficient") {
        return AnsatzFamily::HardwareEfficient;
    }
    throw ValidationError(fmt::format("unknown ansatz family '{}'", name));
}

std::size_t parameter_count(AnsatzFamily f, unsigned n_qubits, unsigned depth) {
    if (f == AnsatzFamily::HilbertEvolution) {
        return std::size_t{n_qubits} * depth;
    }
    std::size_t count = 0;
    for (unsigned l = 0; l < depth; ++l) {
        for (unsigned q = l % 2; q + 1 < n_qubits; q += 2) {
            count += 2;
        }
    }
    return count;
}

AnsatzSpec AnsatzSpec::random(AnsatzFamily f, unsigned n_qubits, unsigned depth,
                              std::uint64_t seed) {
    AnsatzSpec s{f, n_qubits, depth, {}, seed, true};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(1, 3);
    const std::size_t n = wick::parameter_count(f, n_qubits, depth);
    s.axes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.axes.push_back(static_cast<Axis>(pick(rng)));
    }
    s.validate();
    return s;
}

AnsatzSpec AnsatzSpec::uniform(AnsatzFamily f, unsigned n_qubits, unsigned depth, Axis axis) {
    AnsatzSpec s{f, n_qubits, depth, {}, 0, true};
    s.axes.assign(wick::parameter_count(f, n_qubits, depth), axis);
    s.validate();
    return s;
}

std::size_t AnsatzSpec::parameter_count() const {
    return wick::parameter_count(family, n_qubits, depth);
}

void AnsatzSpec::validate() const {
    if (n_qubits < 1 || n_qubits > 20) {
        throw ValidationError(fmt::format("ansatz needs 1..20 qubits, got {}", n_qubits));
    }
    if (axes.size() != parameter_count()) {
        throw ValidationError(fmt::format("ansatz has {} parameters but {} axes", parameter_count(),
                                          axes.size()));
    }
    for (Axis a : axes) {
        if (a == Axis::I) {
            throw ValidationError("ansatz rotation axis must be X, Y or Z");
        }
    }
}

Circuit build_circuit(const AnsatzSpec &spec) {
    spec.validate();
    const unsigned n = spec.n_qubits;
    Circuit c(n);
    std::size_t p = 0;
    if (spec.family == AnsatzFamily::HilbertEvolution) {
        for (unsigned q = 0; q < n && spec.hadamards; ++q) {
            c.add(Gate::h(q));
        }
        for (unsigned l = 0; l < spec.depth; ++l) {
            for (unsigned q = 0; q < n; ++q, ++p) {
                c.add(Gate::rotation(spec.axes[p], q, p));
            }
            for (unsigned q = 0; q + 1 < n; ++q) {
                c.add(Gate::cnot(q, q + 1));
            }
        }
        return c;
    }
    for (unsigned l = 0; l < spec.depth; ++l) {
        for (unsigned q = l % 2; q + 1 < n; q += 2) {
            c.add(Gate::rotation(spec.axes[p], q, p));
            ++p;
            c.add(Gate::rotation(spec.axes[p], q + 1, p));
            ++p;
            c.add(Gate::cnot(q, q + 1));
        }
    }
    return c;
}

StateVector run(const AnsatzSpec &spec, std::span<const double> theta) {
    return build_circuit(spec).run(theta);
}

namespace {

void check_theta(const Circuit &c, std::span<const double> theta) {
    if (theta.size() != c.parameter_count()) {
        throw ValidationError(fmt::format("ansatz takes {} parameters, got {}", c.parameter_count(),
                                          theta.size()));
    }
}

StateVector insert_after(const Circuit &c, std::span<const double> theta, std::size_t i) {
    StateVector psi(c.n_qubits());
    for (const auto &g : c.gates()) {
        apply_gate(psi, g, g.param ? theta[*g.param] : g.angle);
        if (g.param && *g.param == i) {
            apply_gate(psi, Gate::pauli(g.target, g.axis), 0.0);
        }
    }
    return psi;
}

constexpr cplx kDerivativePrefactor{0.0, -0.5};

} // namespace

DerivativeState derivative_state(const AnsatzSpec &spec, std::span<const double> theta,
                                 std::size_t i) {
    const Circuit c = build_circuit(spec);
    check_theta(c, theta);
    if (i >= c.parameter_count()) {
        throw ValidationError(fmt::format("parameter index {} out of range ({} parameters)", i,
                                          c.parameter_count()));
    }
    return {kDerivativePrefactor, insert_after(c, theta, i)};
}

std::vector<DerivativeState> derivative_states(const AnsatzSpec &spec,
                                               std::span<const double> theta) {
    const Circuit c = build_circuit(spec);
    check_theta(c, theta);
    std::vector<DerivativeState> out;
    out.reserve(c.parameter_count());
    for (std::size_t i = 0; i < c.parameter_count(); ++i) {
        out.push_back({kDerivativePrefactor, insert_after(c, theta, i)});
    }
    return out;
}

nlohmann::json to_json(const AnsatzSpec &spec) {
    std::string axes;
    for (Axis a : spec.axes) {
        axes.push_back(axis_char(a));
    }
    return {{"family", family_name(spec.family)},
            {"n_qubits", spec.n_qubits},
            {"depth", spec.depth},
            {"axes", axes},
            {"seed", spec.seed},
            {"hadamards", spec.hadamards}};
}

AnsatzSpec ansatz_from_json(const nlohmann::json &j) {
    detail::require_keys(j, "ansatz", {"family", "n_qubits", "depth", "axes", "seed", "hadamards"});
    AnsatzSpec s;
    s.family = family_from_name(j.at("family").get<std::string>());
    s.n_qubits = j.at("n_qubits").get<unsigned>();
    s.depth = j.at("depth").get<unsigned>();
    detail::read_opt(j, "seed", s.seed);
    detail::read_opt(j, "hadamards", s.hadamards);
    for (char ch : j.at("axes").get<std::string>()) {
        s.axes.push_back(axis_from_char(ch));
    }
    s.validate();
    return s;
}

} // namespace wick
