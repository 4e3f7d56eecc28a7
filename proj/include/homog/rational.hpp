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

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace homog {

/// Exact rational number. Coordinates of limit vertices are never floating point.
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" with q >= 1 and gcd(p, q) = 1; integers render as "p/1".
std::string to_string(const Rational& q);

/// Parses "p/q", "p" or "-p/q". Throws PreconditionError on malformed input.
Rational parse_rational(std::string_view text);

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

}  // namespace homog
