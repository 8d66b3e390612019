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

#include <algorithm>
#include <fmt/format.h>
#include <initializer_list>
#include <string_view>

#include "json.hpp"
#include "wick/error.hpp"

namespace wick::detail {

/// Rejects any key of object j not in allowed.
inline void require_keys(const nlohmann::json &j, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
        throw ValidationError(fmt::format("'{}' must be a JSON object", where));
    }
    for (const auto &item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ValidationError(fmt::format("unknown key '{}' in '{}'", item.key(), where));
        }
    }
}

template <class T>
void read_opt(const nlohmann::json &j, const char *key, T &out) {
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(fmt::format("bad value for '{}': {}", key, e.what()));
    }
}

} // namespace wick::detail
