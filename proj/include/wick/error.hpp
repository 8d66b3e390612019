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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wick {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: shape mismatch, non-Hermitian matrix, bad parameter.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Requested size exceeds what the dense routines support.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Payoff vanishes on the whole grid, so there is no state to prepare.
class DegenerateTargetError : public Error {
public:
    using Error::Error;
};

/// Metric solve failed even at the largest regularization.
class SingularMetricError : public Error {
public:
    SingularMetricError(const std::string &what, double rcond)
        : Error(what), rcond_(rcond) {}
    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

/// Explicit time stepping would be unstable at the requested step count.
class StabilityError : public Error {
public:
    StabilityError(const std::string &what, std::size_t min_steps)
        : Error(what), min_steps_(min_steps) {}
    std::size_t min_steps() const noexcept { return min_steps_; }

private:
    std::size_t min_steps_;
};

/// A time argument falls outside [0, T].
class RangeError : public Error {
public:
    using Error::Error;
};

/// Wraps a failure from one pipeline stage; what() starts with "[stage]".
class StageError : public Error {
public:
    StageError(std::string stage, const std::string &what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}
    const std::string &stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace wick
