// Copyright 2026 The twinsieve Authors
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

namespace twinsieve {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A request exceeds a configured memory or size budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An exact integer result does not fit in 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A prime table is too small to certify a factorization.
class InsufficientTableError : public Error {
 public:
  using Error::Error;
};

// A system of congruences (or a residue-class choice) has no solution.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

// A bounded search gave up before finding an answer.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An object was used before it was ready (or against the wrong configuration).
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace twinsieve
