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
#include "wick/trajectory.hpp"

#include <fmt/format.h>
#include <iterator>

namespace wick {

std::string trajectory_csv(const Trajectory &t) {
    fmt::memory_buffer buf;
    auto out = std::back_inserter(buf);
    const std::size_t np = t.thetas.empty() ? 0 : t.thetas.front().size();
    fmt::format_to(out, "step,tau");
    for (std::size_t i = 0; i < np; ++i) {
        fmt::format_to(out, ",theta_{}", i);
    }
    fmt::format_to(out, ",energy,log_norm\n");
    for (std::size_t k = 0; k < t.thetas.size(); ++k) {
        fmt::format_to(out, "{},{:.17g}", k, t.taus[k]);
        for (double v : t.thetas[k]) {
            fmt::format_to(out, ",{:.17g}", v);
        }
        fmt::format_to(out, ",{:.17g},{:.17g}\n", t.energies[k], t.log_norms[k]);
    }
    return fmt::to_string(buf);
}

std::string objective_csv(const Trajectory &t) {
    fmt::memory_buffer buf;
    auto out = std::back_inserter(buf);
    fmt::format_to(out, "factor,objective\n");
    for (std::size_t k = 0; k < t.objective_log.size(); ++k) {
        fmt::format_to(out, "{},{:.17g}\n", k, t.objective_log[k]);
    }
    return fmt::to_string(buf);
}

} // namespace wick
