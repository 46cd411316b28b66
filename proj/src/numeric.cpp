// Copyright 2026 The qdisc Authors
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

#include "qdisc/numeric.hpp"

#include "qdisc/errors.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qdisc {

BigInt factorial(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::kDomain, "non-finite value");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // mant * 2^53 is an exact integer.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (exp > 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return Rational(num, den);
}

Real to_real(const Rational& r) {
  return Real(boost::multiprecision::numerator(r)) /
         Real(boost::multiprecision::denominator(r));
}

double to_double(const Real& x) { return x.convert_to<double>(); }

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string ceil_string(const Real& x) {
  Real c = ceil(x);
  std::ostringstream os;
  if (c < Real(1e18)) {
    os << c.convert_to<long long>();
  } else {
    os << std::scientific << std::setprecision(17) << c;
  }
  return os.str();
}

}  // namespace qdisc
