// Copyright 2026 The qcover Authors
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

namespace qcover {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
  public:
    using Error::Error;
};

class TranspileError : public Error {
  public:
    using Error::Error;
};

class SimulationError : public Error {
  public:
    using Error::Error;
};

/// Raised when a run exceeds its wall-clock deadline.
class TimeLimitExceeded : public SimulationError {
  public:
    using SimulationError::SimulationError;
};

class CoverageError : public Error {
  public:
    using Error::Error;
};

class MutationError : public Error {
  public:
    using Error::Error;
};

}  // namespace qcover
