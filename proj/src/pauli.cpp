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
#include "wick/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <map>

#include "wick/error.hpp"

namespace wick {

char axis_char(Axis a) {
    static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
    return kChars[static_cast<int>(a)];
}

Axis axis_from_char(char c) {
    switch (c) {
    case 'I': return Axis::I;
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
    default: throw ValidationError(fmt::format("invalid Pauli character '{}'", c));
    }
}

PauliString::PauliString(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) {
        throw ValidationError("Pauli string needs at least one qubit");
    }
    if (axes_.size() > 63) {
        throw CapacityError("Pauli string longer than 63 qubits");
    }
}

PauliString PauliString::identity(unsigned n_qubits) {
    return PauliString(std::vector<Axis>(n_qubits, Axis::I));
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Axis> axes(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        axes[text.size() - 1 - k] = axis_from_char(text[k]);
    }
    return PauliString(std::move(axes));
}

bool PauliString::is_identity() const {
    return std::all_of(axes_.begin(), axes_.end(), [](Axis a) { return a == Axis::I; });
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    for (unsigned q = 0; q < axes_.size(); ++q) {
        if (axes_[q] == Axis::X || axes_[q] == Axis::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    for (unsigned q = 0; q < axes_.size(); ++q) {
        if (axes_[q] == Axis::Z || axes_[q] == Axis::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

unsigned PauliString::y_count() const {
    return static_cast<unsigned>(std::count(axes_.begin(), axes_.end(), Axis::Y));
}

cplx PauliString::phase() const {
    static const cplx kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPowers[y_count() % 4];
}

std::string PauliString::str() const {
    std::string s(axes_.size(), 'I');
    for (std::size_t q = 0; q < axes_.size(); ++q) {
        s[axes_.size() - 1 - q] = axis_char(axes_[q]);
    }
    return s;
}

std::strong_ordering PauliString::operator<=>(const PauliString &other) const {
    if (auto c = axes_.size() <=> other.axes_.size(); c != 0) {
        return c;
    }
    for (std::size_t k = axes_.size(); k-- > 0;) {
        if (auto c = axes_[k] <=> other.axes_[k]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

PauliSum::PauliSum(unsigned n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
    if (n_qubits_ == 0) {
        throw ValidationError("PauliSum needs at least one qubit");
    }
    for (const auto &t : terms_) {
        if (t.string.n_qubits() != n_qubits_) {
            throw ValidationError(fmt::format("term {} has {} qubits, sum has {}",
                                              t.string.str(), t.string.n_qubits(), n_qubits_));
        }
        if (!std::isfinite(t.coefficient)) {
            throw ValidationError("Pauli coefficient must be finite");
        }
    }
}

PauliSum canonicalize(const PauliSum &sum) {
    std::map<PauliString, double> merged;
    for (const auto &t : sum.terms()) {
        merged[t.string] += t.coefficient;
    }
    std::vector<PauliTerm> out;
    out.reserve(merged.size());
    for (auto &[s, c] : merged) {
        out.push_back({c, s});
    }
    return PauliSum(sum.n_qubits(), std::move(out));
}

PauliSum prune(const PauliSum &sum, double tol) {
    std::vector<PauliTerm> out;
    for (const auto &t : sum.terms()) {
        if (std::abs(t.coefficient) > tol) {
            out.push_back(t);
        }
    }
    return PauliSum(sum.n_qubits(), std::move(out));
}

namespace {

void check_dense_capacity(unsigned n) {
    if (n > kMaxDenseQubits) {
        throw CapacityError(fmt::format("dense operator on {} qubits exceeds the {}-qubit cap",
                                        n, kMaxDenseQubits));
    }
}

inline bool odd_parity(std::uint64_t v) { return (std::popcount(v) & 1) != 0; }

} // namespace

HermitianMatrix matrix_of(const PauliSum &sum) {
    const unsigned n = sum.n_qubits();
    check_dense_capacity(n);
    const std::size_t dim = std::size_t{1} << n;
    HermitianMatrix m = HermitianMatrix::Zero(dim, dim);
    for (const auto &t : sum.terms()) {
        const std::uint64_t x = t.string.x_mask();
        const std::uint64_t z = t.string.z_mask();
        const cplx ph = t.coefficient * t.string.phase();
        for (std::size_t col = 0; col < dim; ++col) {
            m(col ^ x, col) += odd_parity(col & z) ? -ph : ph;
        }
    }
    return m;
}

double hermiticity_defect(const HermitianMatrix &m) {
    if (m.rows() != m.cols()) {
        throw ValidationError("matrix is not square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

PauliSum decompose(const HermitianMatrix &h, unsigned n_qubits, double tol) {
    check_dense_capacity(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (static_cast<std::size_t>(h.rows()) != dim || static_cast<std::size_t>(h.cols()) != dim) {
        throw ValidationError(fmt::format("matrix is {}x{}, expected {}x{} for {} qubits",
                                          h.rows(), h.cols(), dim, dim, n_qubits));
    }
    if (hermiticity_defect(h) > 1e-10) {
        throw ValidationError("matrix is not Hermitian within 1e-10");
    }
    const std::size_t n_strings = std::size_t{1} << (2 * n_qubits);
    std::vector<PauliTerm> terms;
    std::vector<Axis> axes(n_qubits);
    for (std::size_t code = 0; code < n_strings; ++code) {
        std::uint64_t x = 0;
        std::uint64_t z = 0;
        unsigned ny = 0;
        for (unsigned q = 0; q < n_qubits; ++q) {
            const auto a = static_cast<Axis>((code >> (2 * q)) & 3U);
            axes[q] = a;
            if (a == Axis::X || a == Axis::Y) x |= std::uint64_t{1} << q;
            if (a == Axis::Z || a == Axis::Y) z |= std::uint64_t{1} << q;
            ny += a == Axis::Y;
        }
        // tr(P H) = sum_i P(i^x, i) H(i, i^x)
        static const cplx kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const cplx ph = kPowers[ny % 4];
        cplx acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const cplx hv = h(i, i ^ x);
            acc += odd_parity(i & z) ? -hv : hv;
        }
        const double c = (ph * acc).real() / static_cast<double>(dim);
        if (std::abs(c) > tol) {
            terms.push_back({c, PauliString(axes)});
        }
    }
    return PauliSum(n_qubits, std::move(terms));
}

nlohmann::json to_json(const PauliSum &sum) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &t : sum.terms()) {
        terms.push_back({{"c", t.coefficient}, {"p", t.string.str()}});
    }
    return {{"n", sum.n_qubits()}, {"terms", std::move(terms)}};
}

PauliSum pauli_sum_from_json(const nlohmann::json &j) {
    try {
        const unsigned n = j.at("n").get<unsigned>();
        std::vector<PauliTerm> terms;
        for (const auto &t : j.at("terms")) {
            terms.push_back({t.at("c").get<double>(), PauliString::parse(t.at("p").get<std::string>())});
        }
        return PauliSum(n, std::move(terms));
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(fmt::format("malformed PauliSum JSON: {}", e.what()));
    }
}

} // namespace wick
