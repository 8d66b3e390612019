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

#include <cstdlib>
#include <string_view>

namespace wick::simd {

#ifndef WICK_HAVE_AVX2
const KernelTable *avx2_kernels() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(WICK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable &select() {
    if (const char *env = std::getenv("WICK_SIMD"); env != nullptr) {
        if (std::string_view(env) == "scalar") {
            return scalar_kernels();
        }
    }
    if (const KernelTable *t = avx2_kernels(); t != nullptr && cpu_has_avx2()) {
        return *t;
    }
    return scalar_kernels();
}

} // namespace

const KernelTable &active_kernels() {
    static const KernelTable &table = select();
    return table;
}

} // namespace wick::simd
