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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

/// Data-parallel inner loops shared by the statevector simulator and the
/// finite-difference solver. Every kernel has a portable scalar reference
/// implementation; vectorized variants are selected once at runtime and
/// must agree with the reference to rounding.
namespace wick::simd {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;

    /// sum_k conj(a[k]) * b[k]
    cplx (*cdot)(const cplx *a, const cplx *b, std::size_t n);

    /// sum_k |a[k]|^2
    double (*norm2)(const cplx *a, std::size_t n);

    /// Applies the row-major 2x2 matrix m to qubit q of a 2^n state
    /// (qubit q is bit q of the basis index). dim = 2^n.
    void (*apply_1q)(cplx *amps, std::size_t dim, unsigned q, const cplx *m);

    /// out = phase * P * in for the Pauli string with the given X and Z
    /// masks (Y sets both bits; the i^{#Y} factor is folded into phase by
    /// the caller). out and in must not alias.
    void (*apply_pauli)(cplx *out, const cplx *in, std::size_t dim,
                        std::uint64_t x_mask, std::uint64_t z_mask,
                        cplx phase);

    /// Five-point stencil update on a padded real vector:
    ///   out[j] = pad[j+2] + w[j] * sum_m c[m] * pad[j+m],  m = 0..4
    /// pad has n+4 entries; w may be null (treated as all ones).
    void (*stencil5)(double *out, const double *pad, const double *w,
                     const double *c, std::size_t n);
};

const KernelTable &scalar_kernels();

/// Null when the AVX2 variants were not compiled in.
const KernelTable *avx2_kernels();

/// The table used by the library. Picks AVX2 when compiled in and the CPU
/// reports avx2+fma; the environment variable WICK_SIMD=scalar forces the
/// reference kernels.
const KernelTable &active_kernels();

} // namespace wick::simd
