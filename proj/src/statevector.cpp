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
#include "wick/statevector.hpp"

#include <cmath>
#include <fmt/format.h>
#include <random>

#include "wick/error.hpp"
#include "wick/simd/kernels.hpp"

namespace wick {

StateVector::StateVector(unsigned n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > 24) {
        throw ValidationError(fmt::format("statevector needs 1..24 qubits, got {}", n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(unsigned n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > 24) {
        throw ValidationError(fmt::format("statevector needs 1..24 qubits, got {}", n_qubits));
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw ValidationError(fmt::format("{} amplitudes given for {} qubits", amps_.size(), n_qubits));
    }
}

namespace {
unsigned qubits_for(std::size_t dim) {
    unsigned n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if ((std::size_t{1} << n) != dim) {
        throw ValidationError(fmt::format("length {} is not a power of two", dim));
    }
    return n;
}
} // namespace

StateVector StateVector::from_real(const Eigen::VectorXd &amps) {
    std::vector<cplx> v(amps.size());
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        v[i] = amps[i];
    }
    const unsigned n = qubits_for(v.size());
    return StateVector(n, std::move(v));
}

StateVector StateVector::from_eigen(const Eigen::VectorXcd &amps) {
    std::vector<cplx> v(amps.data(), amps.data() + amps.size());
    const unsigned n = qubits_for(v.size());
    return StateVector(n, std::move(v));
}

double StateVector::norm() const {
    return std::sqrt(simd::active_kernels().norm2(amps_.data(), amps_.size()));
}

double StateVector::normalize() {
    const double nrm = norm();
    if (nrm == 0.0) {
        throw ValidationError("cannot normalize a zero state");
    }
    const double inv = 1.0 / nrm;
    for (auto &a : amps_) {
        a *= inv;
    }
    return nrm;
}

Eigen::VectorXcd StateVector::to_eigen() const {
    return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

cplx inner(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ValidationError(fmt::format("inner product of {}- and {}-qubit states",
                                          a.n_qubits(), b.n_qubits()));
    }
    return simd::active_kernels().cdot(a.amplitudes().data(), b.amplitudes().data(), a.size());
}

StateVector apply(const PauliString &p, const StateVector &psi, cplx scale) {
    if (p.n_qubits() != psi.n_qubits()) {
        throw ValidationError(fmt::format("{}-qubit Pauli applied to {}-qubit state",
                                          p.n_qubits(), psi.n_qubits()));
    }
    StateVector out(psi.n_qubits());
    simd::active_kernels().apply_pauli(out.data().data(), psi.amplitudes().data(), psi.size(),
                                       p.x_mask(), p.z_mask(), scale * p.phase());
    return out;
}

StateVector apply(const PauliSum &h, const StateVector &psi) {
    if (h.n_qubits() != psi.n_qubits()) {
        throw ValidationError(fmt::format("{}-qubit operator applied to {}-qubit state",
                                          h.n_qubits(), psi.n_qubits()));
    }
    const auto &k = simd::active_kernels();
    std::vector<cplx> acc(psi.size(), cplx{0.0, 0.0});
    std::vector<cplx> tmp(psi.size());
    for (const auto &t : h.terms()) {
        k.apply_pauli(tmp.data(), psi.amplitudes().data(), psi.size(), t.string.x_mask(),
                      t.string.z_mask(), t.coefficient * t.string.phase());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += tmp[i];
        }
    }
    return StateVector(psi.n_qubits(), std::move(acc));
}

double expectation(const StateVector &psi, const PauliSum &h) {
    const double nn = simd::active_kernels().norm2(psi.amplitudes().data(), psi.size());
    return inner(psi, apply(h, psi)).real() / nn;
}

std::vector<std::uint64_t> sample(const StateVector &psi, std::uint64_t shots,
                                  std::uint64_t seed) {
    if (shots == 0) {
        throw ValidationError("shot count must be positive");
    }
    std::vector<double> probs(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        probs[i] = std::norm(psi[i]);
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
    std::vector<std::uint64_t> counts(psi.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++counts[dist(rng)];
    }
    return counts;
}

} // namespace wick
