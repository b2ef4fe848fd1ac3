// Copyright 2026 The sparselimit Authors
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

#include "sparselimit/rational.hpp"

#include <limits>

namespace sparselimit {
namespace {

__int128 Gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorKind::kInvalidArgument, "zero denominator");
  *this = FromWide(n, d);
}

Rational Rational::FromWide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = Gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
  if (n > kMax || n < -kMax || d > kMax) {
    throw Error(ErrorKind::kOverflow, "rational overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  return *this = FromWide(static_cast<__int128>(num_) * o.den_ +
                              static_cast<__int128>(o.num_) * den_,
                          static_cast<__int128>(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  // Cross-reduce first to keep intermediates small.
  __int128 g1 = Gcd128(num_, o.den_);
  __int128 g2 = Gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return *this = FromWide((num_ / g1) * static_cast<__int128>(o.num_ / g2),
                          (den_ / g2) * static_cast<__int128>(o.den_ / g1));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw Error(ErrorKind::kInvalidArgument, "division by zero");
  return *this *= Rational(o.den_, o.num_);
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace sparselimit
