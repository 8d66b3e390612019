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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "wick/statevector.hpp"

namespace wick {

enum class GateKind {
    H,
    RX,
    RY,
    RZ,
    CNOT,
    Pauli,                 ///< fixed X/Y/Z on target (derivative insertion)
    ControlledPauliString, ///< string applied when control is |1>
    ControlledRotation,    ///< R_axis(theta) on target when control is |1>
};

struct Gate {
    GateKind kind = GateKind::H;
    unsigned target = 0;
    unsigned control = 0;        ///< CNOT and controlled kinds
    Axis axis = Axis::I;         ///< Pauli and rotation axis
    std::optional<std::size_t> param; ///< index into theta for rotations
    double angle = 0.0;          ///< used when param is empty
    PauliString string;          ///< ControlledPauliString only

    bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
               kind == GateKind::ControlledRotation;
    }
    bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::ControlledRotation; }

    static Gate make(GateKind k, unsigned target, unsigned control = 0, Axis a = Axis::I) {
        Gate g;
        g.kind = k;
        g.target = target;
        g.control = control;
        g.axis = a;
        return g;
    }
    static Gate h(unsigned q) { return make(GateKind::H, q); }
    static Gate cnot(unsigned c, unsigned t) { return make(GateKind::CNOT, t, c); }
    static Gate pauli(unsigned q, Axis a) { return make(GateKind::Pauli, q, 0, a); }
    static Gate rotation(Axis a, unsigned q, std::size_t param);
    static Gate fixed_rotation(Axis a, unsigned q, double angle);
    static Gate controlled_pauli_string(unsigned control, PauliString s);
};

/// Ordered gate list on a fixed register.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(unsigned n_qubits) : n_qubits_(n_qubits) {}

    unsigned n_qubits() const { return n_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t parameter_count() const { return n_params_; }

    void add(Gate g);

    /// Applies the gates to psi in order; theta supplies rotation angles.
    void apply(StateVector &psi, std::span<const double> theta) const;

    /// Runs on |0...0>.
    StateVector run(std::span<const double> theta) const;

private:
    unsigned n_qubits_ = 0;
    std::size_t n_params_ = 0;
    std::vector<Gate> gates_;
};

/// Applies one gate (angle resolved by the caller for rotations).
void apply_gate(StateVector &psi, const Gate &g, double angle);

/// exp(-i angle P / 2) as a row-major 2x2 matrix.
std::array<cplx, 4> rotation_matrix(Axis a, double angle);

} // namespace wick
