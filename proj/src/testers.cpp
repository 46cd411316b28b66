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

#include "qdisc/testers.hpp"

#include <algorithm>
#include <cmath>

#include "qdisc/errors.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {

bool DiscFamily::empty() const {
  if (witness.empty()) return members.empty();
  return std::none_of(witness.begin(), witness.end(), [](bool b) { return b; });
}

DiscFamily star_family(unsigned k, const TypeCatalog& catalog, double epsilon,
                       double sample_constant) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(ErrorKind::kUsage, "epsilon must lie in (0,1]");
  }
  DiscFamily f;
  f.d = catalog.d();
  f.q = catalog.q();
  f.sample_size = static_cast<unsigned>(std::ceil(sample_constant * k / epsilon));
  f.witness.assign(catalog.size(), false);
  for (const auto& t : catalog.types()) {
    if (t.root_in_degree() >= k) f.witness[t.id] = true;
  }
  return f;
}

Real clamped_binomial(const Real& x, unsigned j) {
  if (x < Real(j)) return Real(0);
  Real r = 1;
  for (unsigned i = 0; i < j; ++i) r = r * (x - i) / (i + 1);
  return r;
}

namespace {

// Coefficient of z^K in prod_i sum_j C(X_i, j) z^j over ids with use[i].
Real multiset_mass(const std::vector<Real>& x, const std::vector<bool>& use,
                   unsigned K) {
  std::vector<Real> acc(K + 1, Real(0));
  acc[0] = 1;
  std::vector<Real> term(K + 1), next(K + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!use[i] || x[i] < 1) continue;
    for (unsigned j = 0; j <= K; ++j) term[j] = clamped_binomial(x[i], j);
    std::fill(next.begin(), next.end(), Real(0));
    for (unsigned a = 0; a <= K; ++a) {
      if (acc[a] == 0) continue;
      for (unsigned b = 0; a + b <= K; ++b) {
        if (term[b] == 0) break;
        next[a + b] += acc[a] * term[b];
      }
    }
    acc.swap(next);
  }
  return acc[K];
}

}  // namespace

Real family_mass(const DiscFamily& family, const std::vector<Real>& x,
                 std::size_t n) {
  const unsigned K = family.sample_size;
  const Real total = clamped_binomial(Real(n), K);
  if (total == 0) return Real(0);
  if (family.witness.empty()) {
    Real s = 0;
    for (const auto& member : family.members) {
      std::vector<int> ids = member;
      std::sort(ids.begin(), ids.end());
      Real p = 1;
      for (std::size_t i = 0; i < ids.size();) {
        std::size_t j = i;
        while (j < ids.size() && ids[j] == ids[i]) ++j;
        p *= clamped_binomial(x.at(ids[i]), static_cast<unsigned>(j - i));
        i = j;
      }
      s += p;
    }
    return s / total;
  }
  std::vector<bool> all(x.size(), true);
  std::vector<bool> plain(x.size(), true);
  for (std::size_t i = 0; i < x.size() && i < family.witness.size(); ++i) {
    plain[i] = !family.witness[i];
  }
  return (multiset_mass(x, all, K) - multiset_mass(x, plain, K)) / total;
}

Real tester_delta(const TypeCatalog& catalog, const DiscFamily& family) {
  const Real base = Real(2) * family.sample_size * catalog.m();
  return 1 / (48 * pow(base, Real(family.sample_size)));
}

TestVerdict test_property(UnidirectionalOracle& g, const TypeCatalog& catalog,
                          const DiscFamily& family,
                          const EstimatorOptions& options) {
  if (family.d != catalog.d() || family.q != catalog.q() ||
      (!family.witness.empty() && family.witness.size() != catalog.size())) {
    fail(ErrorKind::kDomain, "disc family does not match the catalog");
  }
  for (const auto& member : family.members) {
    if (member.size() != family.sample_size) {
      fail(ErrorKind::kDomain, "family member has the wrong size");
    }
    for (int id : member) {
      if (id < 0 || static_cast<std::size_t>(id) >= catalog.size()) {
        fail(ErrorKind::kDomain, "family member names an unknown type");
      }
    }
  }
  TestVerdict v;
  v.report = est_disc_star(g, catalog, tester_delta(catalog, family), options);
  v.report.algorithm = "test-property";
  const std::size_t n = g.n();
  std::vector<Real> x(catalog.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Real xi = to_real(v.report.estimates_exact[i]);
    if (xi < 0) xi = 0;
    if (xi > Real(n)) xi = Real(n);
    x[i] = xi;
  }
  v.score = family.empty() ? Real(0) : family_mass(family, x, n);
  v.reject = !(v.score < Real(0.5));
  return v;
}

BaselineVerdict classical_bidirectional_star_test(BidirectionalOracle& g,
                                                  unsigned k, double epsilon,
                                                  std::uint64_t seed,
                                                  double c) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(ErrorKind::kUsage, "epsilon must lie in (0,1]");
  }
  BaselineVerdict out;
  const QueryLedger before = g.ledger();
  Rng rng(seed);
  const unsigned d = g.d();
  const auto samples = static_cast<std::uint64_t>(std::ceil(c * k / epsilon));
  auto in_degree_at_least = [&](Vertex v) {
    unsigned deg = 0;
    for (unsigned s = 1; s <= d; ++s) {
      if (g.in_query(v, s) == kBottom) break;
      ++deg;
    }
    return deg >= k;
  };
  for (std::uint64_t j = 0; j < samples && !out.reject && g.n() > 0; ++j) {
    const Vertex v = static_cast<Vertex>(rng.below(g.n()));
    ++out.sampled;
    if (in_degree_at_least(v)) {
      out.reject = true;
      break;
    }
    for (unsigned s = 1; s <= d; ++s) {
      const Vertex w = g.out_query(v, s);
      if (w == kBottom) break;
      if (in_degree_at_least(w)) {
        out.reject = true;
        break;
      }
    }
  }
  out.ledger.classical_out = g.ledger().classical_out - before.classical_out;
  out.ledger.classical_in = g.ledger().classical_in - before.classical_in;
  out.ledger.quantum_cost = g.ledger().quantum_cost - before.quantum_cost;
  return out;
}

ReductionInstance build_reduction_instance(bool far, std::size_t N, unsigned c,
                                           unsigned k, double epsilon,
                                           std::uint64_t seed) {
  if (c < 1) fail(ErrorKind::kConstruction, "reduction constant c must be >= 1");
  ReductionInstance r;
  r.far = far;
  r.N = N;
  r.R = static_cast<std::size_t>(c) * N;
  r.k = k;
  r.c = c;
  r.epsilon = epsilon;
  r.f = make_reduction_table(far, N, r.R, k, epsilon, seed);
  r.graph = graph_from_table(r.f, r.R, k);
  return r;
}

Vertex ReductionOracle::evaluate(Vertex v, unsigned slot) const {
  if (v >= inst_.N || slot != 1) return kBottom;
  ++lookups_;
  return static_cast<Vertex>(inst_.N + inst_.f[v]);
}

}  // namespace qdisc
