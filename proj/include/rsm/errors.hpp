// Copyright 2026 The Authors.
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

namespace rsm {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An element/step/ground-set mismatch.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An objective broke its contract (NaN, negative value, bad call count).
class ContractError : public Error {
 public:
  using Error::Error;
};

// An exhaustive routine would exceed its configured budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A linear-algebra step failed (factorization, inversion).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Invalid argument to an operation (budget violation, bad bracket, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The instance is degenerate for the requested quantity (e.g. f(M) = 0).
class DegenerateInstanceError : public Error {
 public:
  using Error::Error;
};

// A config document failed to parse or validate.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsm
