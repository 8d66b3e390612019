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
#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wick {

using cplx = std::complex<double>;
using HermitianMatrix = Eigen::MatrixXcd;

/// Largest register handled by the dense matrix routines (4^10 strings).
inline constexpr unsigned kMaxDenseQubits = 10;

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

/// Tensor product of single-qubit Paulis. axes[q] acts on qubit q, and
/// qubit q is bit q of a basis-state index. The text form lists qubit n-1
/// first, so "XZ" means X on qubit 1 and Z on qubit 0, i.e. kron(X, Z).
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::vector<Axis> axes);

    static PauliString identity(unsigned n_qubits);
    static PauliString parse(std::string_view text);

    unsigned n_qubits() const { return static_cast<unsigned>(axes_.size()); }
    Axis axis(unsigned q) const { return axes_.at(q); }
    const std::vector<Axis> &axes() const { return axes_; }

    bool is_identity() const;
    std::uint64_t x_mask() const;
    std::uint64_t z_mask() const;
    unsigned y_count() const;

    /// i^{#Y}: with it, P|j> = phase * (-1)^{|j & z|} |j ^ x>.
    cplx phase() const;

    std::string str() const;

    /// Canonical order: lexicographic over the text form with I < X < Y < Z.
    std::strong_ordering operator<=>(const PauliString &other) const;
    bool operator==(const PauliString &other) const = default;

private:
    std::vector<Axis> axes_;
};

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;
};

/// Real-weighted sum of Pauli strings on a fixed register; always Hermitian.
class PauliSum {
public:
    PauliSum() = default;
    explicit PauliSum(unsigned n_qubits, std::vector<PauliTerm> terms = {});

    unsigned n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

private:
    unsigned n_qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

/// Merges duplicate strings and sorts terms into canonical order.
PauliSum canonicalize(const PauliSum &sum);

/// Drops terms with |coefficient| <= tol, keeping order.
PauliSum prune(const PauliSum &sum, double tol);

/// Dense 2^n x 2^n matrix sum_i c_i kron(axes_i).
HermitianMatrix matrix_of(const PauliSum &sum);

/// Hilbert-Schmidt projection onto every Pauli string:
/// c_P = tr(P H) / 2^n. Terms with |c_P| <= tol are dropped; the result is
/// in canonical order.
PauliSum decompose(const HermitianMatrix &h, unsigned n_qubits, double tol = 1e-12);

/// Largest |M - M^dagger| entry.
double hermiticity_defect(const HermitianMatrix &m);

nlohmann::json to_json(const PauliSum &sum);
PauliSum pauli_sum_from_json(const nlohmann::json &j);

} // namespace wick
