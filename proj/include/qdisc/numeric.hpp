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

#ifndef QDISC_NUMERIC_HPP_
#define QDISC_NUMERIC_HPP_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace qdisc {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// 50 decimal digits with a binary exponent range of roughly +-2^30, wide
// enough for the error-parameter series and the count budgets.
using Real = boost::multiprecision::cpp_bin_float_50;

BigInt factorial(unsigned k);
BigInt binomial(unsigned n, unsigned k);

// Exact conversion of a finite double.
Rational to_rational(double x);
Real to_real(const Rational& r);
double to_double(const Real& x);

// Decimal rendering for reports, e.g. "3.25e+12".
std::string format_real(const Real& x, int digits = 12);

// Smallest integer >= x as a decimal string; scientific notation past 1e18.
std::string ceil_string(const Real& x);

}  // namespace qdisc

#endif  // QDISC_NUMERIC_HPP_
