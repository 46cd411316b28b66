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

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include "qdisc/errors.hpp"
#include "qdisc/quantum_sim.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {
namespace {

BooleanOracle first_t(std::uint64_t N, std::uint64_t t) {
  return BooleanOracle(N, [t](std::uint64_t x) { return x < t; });
}

TEST(BooleanOracle, MarkedMatchesScan) {
  BooleanOracle o(100, [](std::uint64_t x) { return x % 7 == 3; });
  EXPECT_EQ(o.marked_count_truth(), 14u);
  for (auto x : o.marked()) EXPECT_TRUE(o.evaluate(x));
  auto f = BooleanOracle::from_marked(100, {4, 9});
  EXPECT_TRUE(f.evaluate(9));
  EXPECT_FALSE(f.evaluate(5));
  EXPECT_EQ(f.marked_count_truth(), 2u);
}

TEST(Grover, CostFormula) {
  QueryLedger l;
  CostModel m;
  Rng rng(1);
  auto o = first_t(900, 100);
  auto x = grover_sample(o, l, m, rng);
  ASSERT_TRUE(x);
  EXPECT_LT(*x, 100u);
  EXPECT_EQ(l.quantum_cost, 3);
  m.grover_constant = 2;
  m.constant_scale = 0.5;
  QueryLedger l2;
  grover_sample(o, l2, m, rng);
  EXPECT_EQ(l2.quantum_cost, 3);
  QueryLedger l3;
  grover_sample(first_t(50, 50), l3, CostModel{}, rng);
  EXPECT_EQ(l3.quantum_cost, 1);
  EXPECT_EQ(l3.classical_out + l3.classical_in, 0u);
}

TEST(Grover, ExhaustedChargesBudget) {
  QueryLedger l;
  Rng rng(1);
  auto o = first_t(900, 0);
  EXPECT_FALSE(grover_sample(o, l, CostModel{}, rng));
  EXPECT_EQ(l.quantum_cost, 30);
  EXPECT_FALSE(grover_sample(o, l, CostModel{}, rng, Real(5)));
  EXPECT_EQ(l.quantum_cost, 35);
  try {
    grover_sample(o, l, CostModel{}, rng, Real(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUsage);
  }
}

TEST(Grover, UniformOverMarked) {
  const std::uint64_t N = 1000;
  BooleanOracle o(N, [](std::uint64_t x) { return x % 100 == 17; });
  ASSERT_EQ(o.marked_count_truth(), 10u);
  QueryLedger l;
  Rng rng(99);
  std::vector<int> hits(N, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++hits[*grover_sample(o, l, CostModel{}, rng)];
  const double p = 0.1, sigma = std::sqrt(draws * p * (1 - p));
  double chi2 = 0;
  for (std::uint64_t x = 0; x < N; ++x) {
    if (x % 100 != 17) {
      EXPECT_EQ(hits[x], 0);
      continue;
    }
    EXPECT_LT(std::abs(hits[x] - draws * p), 5 * sigma);
    chi2 += std::pow(hits[x] - draws * p, 2) / (draws * p);
  }
  // 9 degrees of freedom; 5 sigma upper tail is far above 40.
  EXPECT_LT(chi2, 40.0);
}

TEST(Count, BoundExamples) {
  const double pi = boost::math::constants::pi<double>();
  EXPECT_NEAR(count_error_bound(10000, 5000, Real(100)), 2 * pi * 50 + pi * pi, 1e-9);
  EXPECT_NEAR(count_error_bound(10000, 0, Real(100)), pi * pi, 1e-12);
  EXPECT_NEAR(count_error_bound(10000, 10000, Real(100)), pi * pi, 1e-12);
}

TEST(Count, ChargeFormulaAndDeterminism) {
  QueryLedger a, b;
  Rng r1(4), r2(4);
  auto o = first_t(1000, 30);
  CostModel m;
  m.constant_scale = 0.25;
  double x1 = quantum_count(o, a, m, r1, Real(40), 0.1);
  double x2 = quantum_count(o, b, m, r2, Real(40), 0.1);
  EXPECT_EQ(x1, x2);
  EXPECT_EQ(a.quantum_cost, b.quantum_cost);
  Real expect = 500 * Real(40) * log(Real(2) / Real(0.1)) * Real(0.25);
  EXPECT_LT(abs(a.quantum_cost - expect), Real(1e-30));
}

TEST(Count, ZeroMarkedWithLargeBudget) {
  const std::uint64_t N = 10000;
  const Real M = boost::math::constants::pi<Real>() * 100;
  Rng rng(8);
  QueryLedger l;
  auto o = first_t(N, 0);
  for (int i = 0; i < 2000; ++i) {
    EXPECT_LE(std::abs(quantum_count(o, l, CostModel{}, rng, M, 1e-12)), 1.0 + 1e-9);
  }
}

TEST(Count, Modes) {
  auto o = first_t(10000, 5000);
  QueryLedger l;
  Rng rng(2);
  CostModel exact;
  exact.mode = CountMode::kExact;
  EXPECT_EQ(quantum_count(o, l, exact, rng, Real(100), 0.1), 5000.0);
  CostModel adv;
  adv.mode = CountMode::kAdversarial;
  EXPECT_NEAR(quantum_count(o, l, adv, rng, Real(100), 0.1),
              5000 - count_error_bound(10000, 5000, Real(100)), 1e-9);
  EXPECT_EQ(quantum_count(first_t(10000, 1), l, adv, rng, Real(2), 0.1), 0.0);
  EXPECT_EQ(parse_count_mode("deterministic-exact"), CountMode::kExact);
  EXPECT_EQ(parse_count_mode("exact"), CountMode::kExact);
  EXPECT_EQ(parse_count_mode(to_string(CountMode::kAdversarial)), CountMode::kAdversarial);
  EXPECT_THROW(parse_count_mode("quantum"), Error);
  EXPECT_THROW(quantum_count(o, l, exact, rng, Real(0.5), 0.1), Error);
  EXPECT_THROW(quantum_count(o, l, exact, rng, Real(5), 1.5), Error);
}

TEST(Count, ViolationRateWithinEta) {
  auto o = first_t(5000, 700);
  QueryLedger l;
  Rng rng(77);
  const double eta = 0.05;
  const int trials = 10000;
  int bad = 0;
  const double B = count_error_bound(5000, 700, Real(60));
  for (int i = 0; i < trials; ++i) {
    double x = quantum_count(o, l, CostModel{}, rng, Real(60), eta);
    bad += std::abs(x - 700) > B;
  }
  const double rate = static_cast<double>(bad) / trials;
  EXPECT_LE(rate, eta + 3 * std::sqrt(eta * (1 - eta) / trials));
}

TEST(Median, Contracts) {
  EXPECT_EQ(median_amplify([] { return 7.0; }, 0.1), 7.0);
  int calls = 0;
  EXPECT_EQ(median_amplify([&] { return ++calls * 1.0; }, 0.1, 1, 1), 1.0);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(median_trials(0.1, 1), static_cast<std::uint64_t>(std::ceil(500 * std::log(20.0))));
  EXPECT_EQ(median_trials(0.1, Real(1e-9)), 1u);
  calls = 0;
  median_amplify([&] { return ++calls * 1.0; }, 0.1);
  EXPECT_EQ(static_cast<std::uint64_t>(calls), median_trials(0.1, 1));
}

TEST(Median, AmplifiesSixtyPercentRunner) {
  Rng rng(123);
  const double eta = 0.1;
  int fails = 0;
  const int meta = 2000;
  auto runner = [&] { return rng.bernoulli(0.6) ? 0.5 : (rng.bernoulli(0.5) ? -3.0 : 4.0); };
  for (int i = 0; i < meta; ++i) {
    double v = median_amplify(runner, eta);
    fails += !(v >= 0.0 && v <= 1.0);
  }
  EXPECT_LE(static_cast<double>(fails) / meta, eta);
}

}  // namespace
}  // namespace qdisc
