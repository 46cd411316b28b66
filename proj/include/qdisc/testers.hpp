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

#ifndef QDISC_TESTERS_HPP_
#define QDISC_TESTERS_HPP_

#include <cstdint>
#include <vector>

#include "qdisc/catalog.hpp"
#include "qdisc/digraph.hpp"
#include "qdisc/estimators.hpp"

namespace qdisc {

// A family of K-multisets of disc types. Either an explicit member list,
// or every multiset containing at least one witness type.
struct DiscFamily {
  unsigned d = 1, q = 1;
  unsigned sample_size = 1;
  // Each member lists catalog ids with repetition; size == sample_size.
  std::vector<std::vector<int>> members;
  // Indexed by catalog id. Empty means the explicit member list is used.
  std::vector<bool> witness;

  bool empty() const;
};

// All K-multisets with a type whose root has in-degree >= k, where
// K = ceil(sample_constant * k / epsilon).
DiscFamily star_family(unsigned k, const TypeCatalog& catalog, double epsilon,
                       double sample_constant = 4.0);

// C(x, j) as a falling factorial over j!, clamped to 0 when x < j.
Real clamped_binomial(const Real& x, unsigned j);

// Sum over the family of prod_i C(X_i, x_i) / C(n, K).
Real family_mass(const DiscFamily& family, const std::vector<Real>& x,
                 std::size_t n);

struct TestVerdict {
  bool reject = false;
  Real score = 0;
  EstimateReport report;
};

// Error parameter used by the tester: 1 / (48 (2 K m)^K).
Real tester_delta(const TypeCatalog& catalog, const DiscFamily& family);

TestVerdict test_property(UnidirectionalOracle& g, const TypeCatalog& catalog,
                          const DiscFamily& family,
                          const EstimatorOptions& options);

struct BaselineVerdict {
  bool reject = false;
  std::uint64_t sampled = 0;
  QueryLedger ledger;
};

// Samples ceil(c k / epsilon) vertices. Rejects iff some sampled vertex,
// or an out-neighbour of one, has in-degree >= k. Never rejects a
// k-star-free graph.
BaselineVerdict classical_bidirectional_star_test(BidirectionalOracle& g,
                                                  unsigned k, double epsilon,
                                                  std::uint64_t seed,
                                                  double c = 4.0);

struct ReductionInstance {
  bool far = false;
  std::size_t N = 0, R = 0;
  unsigned k = 2, c = 1;
  double epsilon = 0;
  std::vector<Vertex> f;
  Digraph graph;
};

ReductionInstance build_reduction_instance(bool far, std::size_t N, unsigned c,
                                           unsigned k, double epsilon,
                                           std::uint64_t seed);

// Out-neighbour access to G_f answered from the table f. Counts lookups.
class ReductionOracle final : public UnidirectionalOracle {
 public:
  explicit ReductionOracle(const ReductionInstance& inst) : inst_(inst) {}
  std::size_t n() const override { return inst_.N + inst_.R; }
  unsigned d() const override { return std::max(1u, inst_.k); }
  Vertex evaluate(Vertex v, unsigned slot) const override;
  std::uint64_t lookups() const { return lookups_; }

 private:
  const ReductionInstance& inst_;
  mutable std::uint64_t lookups_ = 0;
};

}  // namespace qdisc

#endif  // QDISC_TESTERS_HPP_
