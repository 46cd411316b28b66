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

#ifndef QDISC_ESTIMATORS_HPP_
#define QDISC_ESTIMATORS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdisc/catalog.hpp"
#include "qdisc/digraph.hpp"
#include "qdisc/numeric.hpp"
#include "qdisc/quantum_sim.hpp"

namespace qdisc {

// t_i = max(1, round(n^((2^(L-i) - 1) / (2^L - 1)))) for i = 0..L.
std::vector<std::uint64_t> level_sizes(std::size_t n, unsigned levels);

// max(1, round(v)) for v > 0, else 0.
std::uint64_t sample_count(double v);

struct WarmupConfig {
  std::size_t n = 0;
  unsigned d = 1;
  double delta = 0;
  double delta_prime = 0;
  double eps = 0;
  double eta = 0;
  std::vector<std::uint64_t> t;
  // c_m[i] for i in 1..d; c_m[0] unused.
  std::vector<Real> c_m;
  Real c_b;
  // Failure probability handed to Count, so that 500 ln(2/eta) = c_b.
  double count_eta = 0;
};

WarmupConfig make_warmup_config(std::size_t n, unsigned d, double delta);

// Constants that depend on the catalog only.
struct DiscConstants {
  Rational inverse_norm;
  Real eps_dq;
  Real eta_dq;
  // Before the positivity repair of beta.
  Real eta_dq_printed;
  Real alpha;
  Real beta;
};

DiscConstants make_disc_constants(const TypeCatalog& catalog);

struct DiscConfig {
  std::size_t n = 0;
  unsigned d = 1, q = 1, m = 0;
  std::size_t types = 0;
  Real delta;
  Real eps;
  Real eta;
  std::vector<std::uint64_t> t;
  // Per catalog id; entry 0 unused.
  std::vector<Real> c_upper;
  std::vector<Real> c_lower;
  std::vector<Real> c_m;
  std::vector<Real> alpha_type;
  std::vector<Real> beta_type;
  Real c_b;
  double count_eta = 0;
  DiscConstants constants;
};

DiscConfig make_disc_config(const TypeCatalog& catalog, std::size_t n,
                            const Real& delta);

// delta_i = (beta/alpha)^(i-1) delta.
Real delta_series(const DiscConstants& c, const Real& delta, std::uint64_t i);

struct EstimatorOptions {
  CostModel cost;
  std::uint64_t seed = 1;
  // Below this n the run carries a regime warning.
  std::size_t regime_floor = 1024;
  unsigned grover_retries = 3;
  bool keep_instances = true;
};

// A collected instance: root first, then vertices in order of appearance;
// edges in the type's fixed order.
struct Instance {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

struct EstimateReport {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  unsigned d = 0, q = 0;
  double delta = 0;
  // The error parameter actually used, rendered in decimal.
  std::string delta_used;
  // 1-based index into the error-parameter series, or 0.
  std::uint64_t delta_index = 0;

  // Per in-degree k (warm-up) or per catalog id (discs). Entry 0 holds
  // n minus the sum of the others.
  std::vector<Rational> estimates_exact;
  std::vector<double> estimates;

  // Per level (warm-up, 1-based) or per catalog id; entry 0 unused.
  std::vector<double> raw;
  std::vector<std::uint64_t> marked;
  std::vector<std::uint64_t> samples;
  std::vector<std::uint64_t> exhausted;
  std::vector<bool> truncated;
  std::vector<Rational> scaled;
  std::vector<Real> count_budget;
  std::vector<std::vector<Instance>> instances;

  QueryLedger ledger;
  bool failure = false;
  bool regime_warning = false;
  std::vector<std::string> flags;

  void add_flag(const std::string& f);
  bool has_flag(const std::string& f) const;
};

EstimateReport est_vertices(UnidirectionalOracle& g, double delta,
                            const EstimatorOptions& options);
EstimateReport est_vertices(UnidirectionalOracle& g, const WarmupConfig& config,
                            const EstimatorOptions& options);

EstimateReport est_disc(UnidirectionalOracle& g, const TypeCatalog& catalog,
                        const DiscConfig& config,
                        const EstimatorOptions& options);
EstimateReport est_disc(UnidirectionalOracle& g, const TypeCatalog& catalog,
                        double delta, const EstimatorOptions& options);

EstimateReport est_disc_star(UnidirectionalOracle& g,
                             const TypeCatalog& catalog, const Real& delta,
                             const EstimatorOptions& options);

struct SubgraphEstimate {
  double estimate = 0;
  Rational estimate_exact;
  PatternRooting rooting;
  EstimateReport discs;
};

SubgraphEstimate est_subgraph(UnidirectionalOracle& g,
                              const TypeCatalog& catalog, double delta,
                              const RootedGraph& h,
                              const EstimatorOptions& options);

enum class TypeClass : char { kRare = '0', kAbundant = '1', kGray = '*' };

// Entry per catalog id; entry 0 is kAbundant by convention.
std::vector<TypeClass> classify_type_vector(const Digraph& g,
                                            const TypeCatalog& catalog,
                                            const DiscConfig& config);
std::vector<TypeClass> classify_type_vector(
    const std::vector<std::uint64_t>& cnt, const TypeCatalog& catalog,
    const DiscConfig& config);
std::string to_string(const std::vector<TypeClass>& v);

// Ordered edges of an instance realize the type's prefix chain.
bool instance_respects_order(const TypeCatalog& catalog, int type_id,
                             const Instance& instance);

struct SqueezeBounds {
  std::vector<Real> upper;
  std::vector<Real> lower;
  std::vector<Real> x;
};

// Bracketing vectors of the correctness argument, recomputed from a report
// and a known type vector. Indexed by catalog id; entry 0 unused.
SqueezeBounds squeeze_bounds(const TypeCatalog& catalog,
                             const DiscConfig& config,
                             const EstimateReport& report,
                             const std::vector<TypeClass>& gamma);

// CSV with one row per estimate entry, and a JSON sidecar.
void write_report_csv(std::ostream& os, const EstimateReport& report,
                      const std::string& config_hash);
void write_report_json(std::ostream& os, const EstimateReport& report,
                       const std::string& config_hash);

}  // namespace qdisc

#endif  // QDISC_ESTIMATORS_HPP_
