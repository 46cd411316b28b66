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

#include <cmath>

#include <boost/math/special_functions/binomial.hpp>
#include <gtest/gtest.h>

#include "qdisc/errors.hpp"
#include "qdisc/rng.hpp"
#include "qdisc/testers.hpp"
#include "qdisc/truth.hpp"

namespace qdisc {
namespace {

const TypeCatalog& cat21() {
  static const TypeCatalog c = enumerate_catalog(2, 1);
  return c;
}

EstimatorOptions opts(std::uint64_t seed) {
  EstimatorOptions o;
  o.seed = seed;
  o.keep_instances = false;
  return o;
}

TEST(Family, StarWitnessesHaveLargeRootInDegree) {
  auto f = star_family(2, cat21(), 0.05);
  EXPECT_EQ(f.sample_size, 160u);
  ASSERT_EQ(f.witness.size(), cat21().size());
  int witnesses = 0;
  for (const auto& t : cat21().types()) {
    EXPECT_EQ(bool(f.witness[t.id]), t.root_in_degree() >= 2) << t.id;
    witnesses += f.witness[t.id];
  }
  EXPECT_GT(witnesses, 0);
  EXPECT_FALSE(f.empty());
  EXPECT_TRUE(star_family(3, cat21(), 0.05).empty());
  EXPECT_THROW(star_family(2, cat21(), 0.0), Error);
}

TEST(Family, ClampedBinomial) {
  EXPECT_EQ(clamped_binomial(Real(3), 4), 0);
  EXPECT_EQ(clamped_binomial(Real(2.5), 3), 0);
  EXPECT_EQ(clamped_binomial(Real(10), 3), 120);
  EXPECT_EQ(clamped_binomial(Real(7), 0), 1);
  EXPECT_LT(abs(clamped_binomial(Real(4.5), 2) - Real(4.5 * 3.5 / 2)), Real(1e-40));
}

// Independent check: for integer counts, the witness mass is the
// probability that K uniformly drawn distinct vertices hit a witness.
TEST(Family, MassMatchesHypergeometric) {
  DiscFamily f;
  f.d = 1;
  f.q = 1;
  f.sample_size = 5;
  f.witness = {false, true, false};
  const std::size_t n = 40;
  for (unsigned w = 0; w <= 12; ++w) {
    std::vector<Real> x = {Real(n - w - 7), Real(w), Real(7)};
    const double miss = boost::math::binomial_coefficient<double>(n - w, 5) /
                        boost::math::binomial_coefficient<double>(n, 5);
    const Real m = family_mass(f, x, n);
    EXPECT_NEAR(m.convert_to<double>(), 1 - miss, 1e-12) << w;
    EXPECT_GE(m, 0);
    EXPECT_LE(m, 1);
  }
}

TEST(Family, ExplicitMembers) {
  DiscFamily f;
  f.d = 1;
  f.q = 1;
  f.sample_size = 2;
  f.members = {{1, 1}, {1, 2}};
  std::vector<Real> x = {Real(5), Real(3), Real(2)};
  // (C(3,2) + 3*2) / C(10,2) = 9/45.
  EXPECT_LT(abs(family_mass(f, x, 10) - Real(9) / 45), Real(1e-40));
}

TEST(Tester, EmptyFamilyAlwaysAccepts) {
  auto inst = build_reduction_instance(true, 1 << 10, 1, 2, 0.05, 3);
  ReductionOracle o(inst);
  DiscFamily f = star_family(3, cat21(), 0.05);
  auto v = test_property(o, cat21(), f, opts(1));
  EXPECT_FALSE(v.reject);
  EXPECT_EQ(v.score, 0);
}

TEST(Tester, MismatchedFamilyIsDomainError) {
  auto inst = build_reduction_instance(false, 1 << 8, 1, 2, 0.05, 3);
  ReductionOracle o(inst);
  auto f = star_family(2, cat21(), 0.05);
  f.q = 2;
  try {
    test_property(o, cat21(), f, opts(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
  f = star_family(2, cat21(), 0.05);
  f.witness.pop_back();
  EXPECT_THROW(test_property(o, cat21(), f, opts(1)), Error);
}

TEST(Tester, DeltaFormula) {
  auto f = star_family(2, cat21(), 0.05);
  const Real expect = 1 / (48 * pow(Real(2 * 160 * 20), Real(160)));
  EXPECT_LT(abs(tester_delta(cat21(), f) / expect - 1), Real(1e-40));
}

TEST(Tester, SeparatesFreeFromFar) {
  const auto f = star_family(2, cat21(), 0.05);
  int free_ok = 0, far_ok = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    for (bool far : {false, true}) {
      auto inst = build_reduction_instance(far, 1 << 12, 1, 2, 0.05, 100 + t);
      ReductionOracle o(inst);
      auto v = test_property(o, cat21(), f, opts(7 + t));
      EXPECT_EQ(v.report.ledger.classical_in, 0u);
      EXPECT_GE(v.score, 0);
      EXPECT_LE(v.score, 1);
      (far ? far_ok : free_ok) += (v.reject == far);
    }
  }
  EXPECT_GE(free_ok, 2 * trials / 3);
  EXPECT_GE(far_ok, 2 * trials / 3);
}

TEST(Baseline, NoFalseRejectionsAndBidirectionalLedger) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto inst = build_reduction_instance(false, 1 << 10, 1 + seed % 3, 2, 0.05, seed);
    BidirectionalOracle b(inst.graph);
    auto v = classical_bidirectional_star_test(b, 2, 0.05, seed);
    EXPECT_FALSE(v.reject);
    EXPECT_EQ(v.sampled, 160u);
    EXPECT_GT(v.ledger.classical_in, 0u);
    EXPECT_EQ(v.ledger.quantum_cost, 0);
  }
  int caught = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto inst = build_reduction_instance(true, 1 << 10, 1, 2, 0.05, seed);
    BidirectionalOracle b(inst.graph);
    caught += classical_bidirectional_star_test(b, 2, 0.05, seed).reject;
  }
  EXPECT_GE(caught, 45);
}

TEST(Reduction, FreeHasNoStarsAndFarHasManyDisjoint) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t N = 64 + rng.below(2000);
    const unsigned c = 1 + static_cast<unsigned>(rng.below(3));
    const double eps = rng.uniform(0.01, 0.11);
    const bool far = rng.below(2) == 1;
    auto inst = build_reduction_instance(far, N, c, 2, eps, rng.next());
    EXPECT_EQ(inst.graph.n(), N + c * N);
    if (far) {
      EXPECT_GE(count_disjoint_stars(inst.graph, 2),
                static_cast<std::uint64_t>(std::ceil(eps * N)));
    } else {
      EXPECT_EQ(count_subgraph(inst.graph, star_pattern(2)), 0u);
    }
  }
}

TEST(Reduction, OutQueryUsesAtMostOneLookup) {
  auto inst = build_reduction_instance(true, 300, 2, 2, 0.05, 9);
  ReductionOracle o(inst);
  for (Vertex v = 0; v < o.n(); ++v) {
    for (unsigned s = 1; s <= o.d(); ++s) {
      const auto before = o.lookups();
      const Vertex w = o.out_query(v, s);
      EXPECT_LE(o.lookups() - before, 1u);
      EXPECT_EQ(w, inst.graph.head(v, s));
    }
  }
}

}  // namespace
}  // namespace qdisc
