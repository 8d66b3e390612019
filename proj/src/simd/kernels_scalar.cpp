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
#include "wick/simd/kernels.hpp"

#include <bit>

namespace wick::simd {
namespace {

cplx cdot_scalar(const cplx *a, const cplx *b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

double norm2_scalar(const cplx *a, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
    }
    return s;
}

void apply_1q_scalar(cplx *amps, std::size_t dim, unsigned q, const cplx *m) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const cplx a0 = amps[k];
            const cplx a1 = amps[k + stride];
            amps[k] = m[0] * a0 + m[1] * a1;
            amps[k + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_pauli_scalar(cplx *out, const cplx *in, std::size_t dim,
                        std::uint64_t x_mask, std::uint64_t z_mask,
                        cplx phase) {
    // P|j> = (-1)^{|j & z|} |j ^ x>  (before the i^{#Y} phase)
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t j = i ^ x_mask;
        const bool odd = (std::popcount(static_cast<std::uint64_t>(j) & z_mask) & 1) != 0;
        out[i] = odd ? -(phase * in[j]) : phase * in[j];
    }
}

void stencil5_scalar(double *out, const double *pad, const double *w,
                     const double *c, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double s = c[0] * pad[j] + c[1] * pad[j + 1] + c[2] * pad[j + 2] +
                         c[3] * pad[j + 3] + c[4] * pad[j + 4];
        out[j] = pad[j + 2] + (w ? w[j] : 1.0) * s;
    }
}

constexpr KernelTable kScalar{
    "scalar", cdot_scalar, norm2_scalar, apply_1q_scalar, apply_pauli_scalar,
    stencil5_scalar,
};

} // namespace

const KernelTable &scalar_kernels() { return kScalar; }

} // namespace wick::simd
