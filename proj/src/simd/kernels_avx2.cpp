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

// AVX2/FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may run before dispatch has checked the CPU.
#include "wick/simd/kernels.hpp"

#include <bit>
#include <immintrin.h>

namespace wick::simd {
namespace {

// One __m256d holds two interleaved complex doubles: [re0, im0, re1, im1].
inline __m256d load2(const cplx *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}
inline void store2(cplx *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// (mr + i mi) * v for both complex lanes of v.
inline __m256d cmul_bcast(__m256d mr, __m256d mi, __m256d v) {
    return _mm256_addsub_pd(_mm256_mul_pd(mr, v),
                            _mm256_mul_pd(mi, swap_re_im(v)));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx cdot_avx2(const cplx *a, const cplx *b, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd(); // [ar*br, ai*bi, ...]
    __m256d acc_im = _mm256_setzero_pd(); // [ar*bi, ai*br, ...]
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d va = load2(a + k);
        const __m256d vb = load2(b + k);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        acc_im = _mm256_fmadd_pd(va, swap_re_im(vb), acc_im);
    }
    alignas(32) double r[4];
    alignas(32) double i[4];
    _mm256_store_pd(r, acc_re);
    _mm256_store_pd(i, acc_im);
    double re = r[0] + r[1] + r[2] + r[3];
    double im = (i[0] - i[1]) + (i[2] - i[3]);
    for (; k < n; ++k) {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

double norm2_avx2(const cplx *a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d v = load2(a + k);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; k < n; ++k) {
        s += std::norm(a[k]);
    }
    return s;
}

void apply_1q_avx2(cplx *amps, std::size_t dim, unsigned q, const cplx *m) {
    const std::size_t stride = std::size_t{1} << q;
    if (stride < 2) {
        scalar_kernels().apply_1q(amps, dim, q, m);
        return;
    }
    const __m256d m0r = _mm256_set1_pd(m[0].real()), m0i = _mm256_set1_pd(m[0].imag());
    const __m256d m1r = _mm256_set1_pd(m[1].real()), m1i = _mm256_set1_pd(m[1].imag());
    const __m256d m2r = _mm256_set1_pd(m[2].real()), m2i = _mm256_set1_pd(m[2].imag());
    const __m256d m3r = _mm256_set1_pd(m[3].real()), m3i = _mm256_set1_pd(m[3].imag());
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; k += 2) {
            const __m256d a0 = load2(amps + k);
            const __m256d a1 = load2(amps + k + stride);
            store2(amps + k, _mm256_add_pd(cmul_bcast(m0r, m0i, a0),
                                           cmul_bcast(m1r, m1i, a1)));
            store2(amps + k + stride, _mm256_add_pd(cmul_bcast(m2r, m2i, a0),
                                                    cmul_bcast(m3r, m3i, a1)));
        }
    }
}

void apply_pauli_avx2(cplx *out, const cplx *in, std::size_t dim,
                      std::uint64_t x_mask, std::uint64_t z_mask, cplx phase) {
    if (dim < 2) {
        scalar_kernels().apply_pauli(out, in, dim, x_mask, z_mask, phase);
        return;
    }
    const __m256d pr = _mm256_set1_pd(phase.real());
    const __m256d pi = _mm256_set1_pd(phase.imag());
    const bool flip_low = (x_mask & 1U) != 0;
    const bool z_low = (z_mask & 1U) != 0;
    for (std::size_t i = 0; i < dim; i += 2) {
        // Sources for out[i], out[i+1] are j0 = i^x and j0^1, which share a
        // 2-aligned block; they come out swapped when x flips bit 0.
        const std::size_t j0 = i ^ x_mask;
        __m256d v = load2(in + (j0 & ~std::size_t{1}));
        if (flip_low) {
            v = _mm256_permute2f128_pd(v, v, 0x01);
        }
        const bool odd0 = (std::popcount(static_cast<std::uint64_t>(j0) & z_mask) & 1) != 0;
        const bool odd1 = odd0 != z_low;
        const __m256d sign = _mm256_set_pd(odd1 ? -1.0 : 1.0, odd1 ? -1.0 : 1.0,
                                           odd0 ? -1.0 : 1.0, odd0 ? -1.0 : 1.0);
        store2(out + i, _mm256_mul_pd(sign, cmul_bcast(pr, pi, v)));
    }
}

void stencil5_avx2(double *out, const double *pad, const double *w,
                   const double *c, std::size_t n) {
    const __m256d c0 = _mm256_set1_pd(c[0]), c1 = _mm256_set1_pd(c[1]),
                  c2 = _mm256_set1_pd(c[2]), c3 = _mm256_set1_pd(c[3]),
                  c4 = _mm256_set1_pd(c[4]);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d s = _mm256_mul_pd(c0, _mm256_loadu_pd(pad + j));
        s = _mm256_fmadd_pd(c1, _mm256_loadu_pd(pad + j + 1), s);
        s = _mm256_fmadd_pd(c2, _mm256_loadu_pd(pad + j + 2), s);
        s = _mm256_fmadd_pd(c3, _mm256_loadu_pd(pad + j + 3), s);
        s = _mm256_fmadd_pd(c4, _mm256_loadu_pd(pad + j + 4), s);
        const __m256d centre = _mm256_loadu_pd(pad + j + 2);
        const __m256d weight = w ? _mm256_loadu_pd(w + j) : _mm256_set1_pd(1.0);
        _mm256_storeu_pd(out + j, _mm256_fmadd_pd(weight, s, centre));
    }
    if (j < n) {
        scalar_kernels().stencil5(out + j, pad + j, w ? w + j : nullptr, c, n - j);
    }
}

constexpr KernelTable kAvx2{
    "avx2", cdot_avx2, norm2_avx2, apply_1q_avx2, apply_pauli_avx2, stencil5_avx2,
};

} // namespace

const KernelTable *avx2_kernels() { return &kAvx2; }

} // namespace wick::simd
