// Copyright 2026 The thermoent Authors
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

#include <stdexcept>
#include <string>

namespace thermoent {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad dimensions, unknown labels, out-of-range
/// probabilities, inconsistent configurations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A Fock truncation dropped more probability than the accuracy target allows.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Propagation failed: trace drift, step-size convergence, eigensolver failure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

}  // namespace thermoent
