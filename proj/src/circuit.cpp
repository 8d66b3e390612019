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
#include "wick/circuit.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>

#include "wick/error.hpp"
#include "wick/simd/kernels.hpp"

namespace wick {

Gate Gate::rotation(Axis a, unsigned q, std::size_t param) {
    const GateKind k = a == Axis::X ? GateKind::RX : a == Axis::Y ? GateKind::RY : GateKind::RZ;
    if (a == Axis::I) {
        throw ValidationError("rotation axis must be X, Y or Z");
    }
    Gate g = make(k, q, 0, a);
    g.param = param;
    return g;
}

Gate Gate::fixed_rotation(Axis a, unsigned q, double angle) {
    Gate g = rotation(a, q, 0);
    g.param.reset();
    g.angle = angle;
    return g;
}

Gate Gate::controlled_pauli_string(unsigned control, PauliString s) {
    Gate g = make(GateKind::ControlledPauliString, 0, control);
    g.string = std::move(s);
    return g;
}

std::array<cplx, 4> rotation_matrix(Axis a, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    switch (a) {
    case Axis::X: return {cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0}};
    case Axis::Y: return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
    case Axis::Z: return {cplx{c, -s}, cplx{0, 0}, cplx{0, 0}, cplx{c, s}};
    case Axis::I: break;
    }
    throw ValidationError("rotation axis must be X, Y or Z");
}

namespace {

std::array<cplx, 4> pauli_matrix(Axis a) {
    switch (a) {
    case Axis::X: return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
    case Axis::Y: return {cplx{0, 0}, cplx{0, -1}, cplx{0, 1}, cplx{0, 0}};
    case Axis::Z: return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
    case Axis::I: return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
    }
    return {};
}

void check_qubit(unsigned q, unsigned n) {
    if (q >= n) {
        throw ValidationError(fmt::format("qubit {} out of range for {}-qubit register", q, n));
    }
}

void apply_cnot(StateVector &psi, unsigned c, unsigned t) {
    const std::size_t cm = std::size_t{1} << c;
    const std::size_t tm = std::size_t{1} << t;
    auto amps = psi.data();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cm) != 0 && (i & tm) == 0) {
            std::swap(amps[i], amps[i | tm]);
        }
    }
}

void apply_controlled_1q(StateVector &psi, unsigned c, unsigned t, const std::array<cplx, 4> &m) {
    const std::size_t cm = std::size_t{1} << c;
    const std::size_t tm = std::size_t{1} << t;
    auto amps = psi.data();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cm) != 0 && (i & tm) == 0) {
            const cplx a0 = amps[i];
            const cplx a1 = amps[i | tm];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i | tm] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_controlled_string(StateVector &psi, unsigned c, const PauliString &s) {
    const std::size_t cm = std::size_t{1} << c;
    if ((s.x_mask() | s.z_mask()) & cm) {
        throw ValidationError("controlled Pauli string acts on its own control");
    }
    std::vector<cplx> tmp(psi.size());
    simd::active_kernels().apply_pauli(tmp.data(), psi.amplitudes().data(), psi.size(),
                                       s.x_mask(), s.z_mask(), s.phase());
    auto amps = psi.data();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cm) != 0) {
            amps[i] = tmp[i];
        }
    }
}

} // namespace

void apply_gate(StateVector &psi, const Gate &g, double angle) {
    const unsigned n = psi.n_qubits();
    const auto &k = simd::active_kernels();
    switch (g.kind) {
    case GateKind::H: {
        check_qubit(g.target, n);
        const double h = 1.0 / std::sqrt(2.0);
        const cplx m[4] = {h, h, h, -h};
        k.apply_1q(psi.data().data(), psi.size(), g.target, m);
        return;
    }
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: {
        check_qubit(g.target, n);
        const auto m = rotation_matrix(g.axis, angle);
        k.apply_1q(psi.data().data(), psi.size(), g.target, m.data());
        return;
    }
    case GateKind::Pauli: {
        check_qubit(g.target, n);
        const auto m = pauli_matrix(g.axis);
        k.apply_1q(psi.data().data(), psi.size(), g.target, m.data());
        return;
    }
    case GateKind::CNOT:
        check_qubit(g.target, n);
        check_qubit(g.control, n);
        if (g.control == g.target) {
            throw ValidationError("CNOT control and target must differ");
        }
        apply_cnot(psi, g.control, g.target);
        return;
    case GateKind::ControlledRotation:
        check_qubit(g.target, n);
        check_qubit(g.control, n);
        if (g.control == g.target) {
            throw ValidationError("controlled rotation control and target must differ");
        }
        apply_controlled_1q(psi, g.control, g.target, rotation_matrix(g.axis, angle));
        return;
    case GateKind::ControlledPauliString:
        check_qubit(g.control, n);
        if (g.string.n_qubits() != n) {
            throw ValidationError("controlled Pauli string width does not match register");
        }
        apply_controlled_string(psi, g.control, g.string);
        return;
    }
}

void Circuit::add(Gate g) {
    check_qubit(g.target, n_qubits_);
    if (g.is_two_qubit() || g.kind == GateKind::ControlledPauliString) {
        check_qubit(g.control, n_qubits_);
    }
    if (g.kind == GateKind::CNOT && g.control == g.target) {
        throw ValidationError("CNOT control and target must differ");
    }
    if (g.param) {
        n_params_ = std::max(n_params_, *g.param + 1);
    }
    gates_.push_back(std::move(g));
}

void Circuit::apply(StateVector &psi, std::span<const double> theta) const {
    if (theta.size() != n_params_) {
        throw ValidationError(fmt::format("circuit takes {} parameters, got {}", n_params_, theta.size()));
    }
    for (const auto &g : gates_) {
        apply_gate(psi, g, g.param ? theta[*g.param] : g.angle);
    }
}

StateVector Circuit::run(std::span<const double> theta) const {
    StateVector psi(n_qubits_);
    apply(psi, theta);
    return psi;
}

} // namespace wick
