// Copyright 2026 The orbitalsim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace orbitalsim {

/// Bad caller input: out-of-range index, dimension mismatch, bad parameter.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An operator or projector family failed a structural check
/// (hermiticity, unitarity, completeness).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The power-sum filter produced a vector too small to normalize.
class CancellationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void argument_error(const std::string &msg) {
    throw ArgumentError(msg);
}
[[noreturn]] inline void validation_error(const std::string &msg) {
    throw ValidationError(msg);
}
} // namespace detail

} // namespace orbitalsim
