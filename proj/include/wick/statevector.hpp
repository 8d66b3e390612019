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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wick/pauli.hpp"

namespace wick {

/// Dense 2^n amplitude vector; qubit q is bit q of the basis index.
class StateVector {
public:
    StateVector() = default;
    /// |0...0>
    explicit StateVector(unsigned n_qubits);
    StateVector(unsigned n_qubits, std::vector<cplx> amplitudes);

    static StateVector from_real(const Eigen::VectorXd &amps);
    static StateVector from_eigen(const Eigen::VectorXcd &amps);

    unsigned n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }

    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> data() { return amps_; }
    const cplx &operator[](std::size_t i) const { return amps_[i]; }
    cplx &operator[](std::size_t i) { return amps_[i]; }

    double norm() const;
    /// Rescales to unit norm and returns the norm it had.
    double normalize();

    Eigen::VectorXcd to_eigen() const;

private:
    unsigned n_qubits_ = 0;
    std::vector<cplx> amps_;
};

/// <a|b>
cplx inner(const StateVector &a, const StateVector &b);

/// scale * P|psi>
StateVector apply(const PauliString &p, const StateVector &psi, cplx scale = 1.0);

/// H|psi> for H = sum_k c_k P_k.
StateVector apply(const PauliSum &h, const StateVector &psi);

/// <psi|H|psi> / <psi|psi>
double expectation(const StateVector &psi, const PauliSum &h);

/// Basis-state counts from `shots` computational-basis measurements;
/// reproducible for a given seed. counts.size() == 2^n.
std::vector<std::uint64_t> sample(const StateVector &psi, std::uint64_t shots,
                                  std::uint64_t seed);

} // namespace wick
