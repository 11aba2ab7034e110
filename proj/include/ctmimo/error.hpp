// Copyright 2026 The ctmimo Authors.
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

#ifndef CTMIMO_ERROR_HPP_
#define CTMIMO_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ctmimo {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or precondition on caller-supplied parameters.
// The CLI maps this family to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCellCount : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InvalidRegime : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ConstraintViolation : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class AlreadySelected : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class TooLarge : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class EmptyInput : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class EmptySamples : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Runtime / numerical failures (CLI exit code 2).
class SamplingFailure : public Error {
 public:
  using Error::Error;
};

class ZeroEstimate : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctmimo

#endif  // CTMIMO_ERROR_HPP_
