// Copyright 2026 The homog Authors
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

namespace homog {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested configuration cannot exist in the limit (it violates the age).
/// Permanent: retrying with a larger budget will not help.
class Unsatisfiable : public Error {
 public:
  using Error::Error;
};

/// An engineering cap (stage size, enumeration size, search nodes) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A bounded search finished without finding what was asked for.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

/// factor_via_conjugates found no word within the bound. Not a refutation.
class WordBoundExceeded : public Error {
 public:
  using Error::Error;
};

/// A constructed witness failed its own postcondition re-check.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace homog
