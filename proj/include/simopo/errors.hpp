// Copyright 2026 The simopo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace simopo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-facing configuration (bad flag, bad config file entry, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The OPO is at or above threshold, or the cavity is unstable.
class ThresholdError : public Error {
 public:
  using Error::Error;
};

/// Quadrature did not converge under node doubling.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Root bracket without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Two objects defined over different mode bases were combined.
class BasisMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace simopo
