// Copyright 2026 The qtomo Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtomo {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The infidelity Hessian is evaluated on the surface of the Bloch ball.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Some outcome probability vanishes, so the Fisher information diverges.
class DivergentInformationError : public Error {
 public:
  DivergentInformationError(std::size_t outcome, const std::string& what)
      : Error(what), outcome_(outcome) {}
  std::size_t outcome() const noexcept { return outcome_; }

 private:
  std::size_t outcome_;
};

/// The direction e_s = s/|s| is requested for s = 0.
class UndefinedDirectionError : public Error {
 public:
  using Error::Error;
};

/// A mixed-state formula was called for a pure state or vice versa.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// The measurement does not determine the state.
class NotInformationallyCompleteError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be invertible or positive definite is not.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration or data file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtomo
