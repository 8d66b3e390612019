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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "wick/circuit.hpp"

namespace wick {

enum class AnsatzFamily {
    /// H on every qubit, then `depth` layers of one rotation per qubit
    /// followed by a CNOT ladder q -> q+1.
    HilbertEvolution,
    /// `depth` layers of nearest-neighbour blocks on pairs (q, q+1) starting
    /// at offset layer % 2; a block is a rotation on each qubit then CNOT.
    HardwareEfficient,
};

std::string family_name(AnsatzFamily f);
AnsatzFamily family_from_name(const std::string &name);

struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::HilbertEvolution;
    unsigned n_qubits = 1;
    unsigned depth = 1;
    std::vector<Axis> axes; ///< one per parameter
    std::uint64_t seed = 0;
    /// HilbertEvolution only: start with H on every qubit. Off gives the
    /// bare rotation/entangler layers (e.g. a lone RY on one qubit).
    bool hadamards = true;

    /// Axes drawn uniformly from {X, Y, Z} with mt19937_64(seed).
    static AnsatzSpec random(AnsatzFamily f, unsigned n_qubits, unsigned depth, std::uint64_t seed);
    /// Every rotation on the same axis.
    static AnsatzSpec uniform(AnsatzFamily f, unsigned n_qubits, unsigned depth, Axis axis);

    std::size_t parameter_count() const;
    void validate() const;
};

/// Parameter count implied by family, width and depth.
std::size_t parameter_count(AnsatzFamily f, unsigned n_qubits, unsigned depth);

Circuit build_circuit(const AnsatzSpec &spec);

/// V(theta)|0>.
StateVector run(const AnsatzSpec &spec, std::span<const double> theta);

/// d|psi>/d theta_i = prefactor * state, with state = V~_i|0> and V~_i the
/// circuit with the rotation's Pauli inserted right after gate i.
struct DerivativeState {
    cplx prefactor;
    StateVector state;
};

DerivativeState derivative_state(const AnsatzSpec &spec, std::span<const double> theta, std::size_t i);

/// All N derivative states in parameter order.
std::vector<DerivativeState> derivative_states(const AnsatzSpec &spec, std::span<const double> theta);

nlohmann::json to_json(const AnsatzSpec &spec);
AnsatzSpec ansatz_from_json(const nlohmann::json &j);

} // namespace wick
