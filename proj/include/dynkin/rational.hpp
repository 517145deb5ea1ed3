// Copyright 2026 The Dynkin Authors
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

#ifndef DYNKIN_RATIONAL_HPP
#define DYNKIN_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "dynkin/error.hpp"

namespace dynkin {

/// Exact rational number; every probability, mass and payoff in the library
/// is one of these.
using Rational = mpq_class;

/// Parses "n", "-n" or "n/d" (d > 0) into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw DynkinError(ErrorCode::kMalformed, "empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw DynkinError(ErrorCode::kMalformed, "bad rational literal '" + s + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw DynkinError(ErrorCode::kMalformed, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Canonical "num/den" form; the denominator is always written, even when 1.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Decimal rendering with `digits` significant digits (float mode output).
inline std::string to_decimal(const Rational& q, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, q.get_d());
  return buf;
}

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// (num, den) as 64-bit integers when both fit; used by samplers for exact
/// comparisons against dyadic uniforms.
struct SmallFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline std::optional<SmallFraction> small_fraction(const Rational& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) return std::nullopt;
  return SmallFraction{q.get_num().get_si(), q.get_den().get_si()};
}

inline Rational ceil_rational(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

}  // namespace dynkin

#endif  // DYNKIN_RATIONAL_HPP
