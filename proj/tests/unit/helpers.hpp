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

#include <numbers>
#include <random>
#include <vector>

#include "wick/statevector.hpp"

namespace wick::fixtures {

inline std::vector<double> random_angles(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    std::vector<double> t(n);
    for (auto &v : t) {
        v = u(rng);
    }
    return t;
}

inline StateVector random_state(unsigned n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(std::size_t{1} << n);
    for (auto &a : v) {
        a = {g(rng), g(rng)};
    }
    StateVector s(n, std::move(v));
    s.normalize();
    return s;
}

inline PauliSum random_sum(unsigned n, std::size_t terms, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> ax(0, 3);
    std::vector<PauliTerm> out;
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<Axis> axes(n);
        for (auto &a : axes) {
            a = static_cast<Axis>(ax(rng));
        }
        out.push_back({g(rng), PauliString(axes)});
    }
    return PauliSum(n, out);
}

/// |<a|b>|^2 for unnormalized inputs.
inline double overlap2(const StateVector &a, const StateVector &b) {
    return std::norm(inner(a, b)) / (inner(a, a).real() * inner(b, b).real());
}

} // namespace wick::fixtures
