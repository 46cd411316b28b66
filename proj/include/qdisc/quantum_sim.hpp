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

#ifndef QDISC_QUANTUM_SIM_HPP_
#define QDISC_QUANTUM_SIM_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdisc/digraph.hpp"
#include "qdisc/numeric.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {

enum class CountMode { kStochastic, kExact, kAdversarial };

CountMode parse_count_mode(const std::string& text);
std::string to_string(CountMode mode);

struct CostModel {
  Real grover_constant = 1;
  // Multiplies every charge and the median-trick trial count.
  Real constant_scale = 1;
  CountMode mode = CountMode::kStochastic;
};

// A predicate over the index space [0, domain_size), with a lazily computed
// marked list standing in for the quantum state.
class BooleanOracle {
 public:
  BooleanOracle(std::uint64_t domain_size,
                std::function<bool(std::uint64_t)> evaluate);
  // Oracle whose marked set is already known, e.g. from one scan shared by
  // all calls at an iteration.
  static BooleanOracle from_marked(std::uint64_t domain_size,
                                   std::vector<std::uint64_t> marked);

  std::uint64_t domain_size() const { return domain_size_; }
  bool evaluate(std::uint64_t x) const;
  // t = |f^{-1}(1)|, by a full scan on first use.
  std::uint64_t marked_count_truth() const { return marked().size(); }
  const std::vector<std::uint64_t>& marked() const;

 private:
  std::uint64_t domain_size_;
  std::function<bool(std::uint64_t)> evaluate_;
  mutable std::optional<std::vector<std::uint64_t>> marked_;
};

void charge_quantum(QueryLedger& ledger, const Real& cost);

// Uniform marked index at cost grover_constant * scale * sqrt(N/t). With no
// marked index, charges the budget (default grover_constant * scale *
// sqrt(N)) and returns nullopt.
std::optional<std::uint64_t> grover_sample(
    const BooleanOracle& oracle, QueryLedger& ledger, const CostModel& model,
    Rng& rng, std::optional<Real> budget = std::nullopt);

// 2 pi sqrt(t (N - t)) / M + pi^2 N / M^2.
double count_error_bound(std::uint64_t N, std::uint64_t t, const Real& M);

// Additive estimate of t at cost 500 * M * ln(2/eta) * scale.
double quantum_count(const BooleanOracle& oracle, QueryLedger& ledger,
                     const CostModel& model, Rng& rng, const Real& M,
                     double eta);

// ceil(500 ln(2/eta) * scale) trials, at least one.
std::uint64_t median_trials(double eta, const Real& constant_scale);

// Median of independent runner outputs (lower median for even counts).
// forced_trials overrides the trial count when set.
double median_amplify(const std::function<double()>& runner, double eta,
                      const Real& constant_scale = 1,
                      std::optional<std::uint64_t> forced_trials = std::nullopt);

}  // namespace qdisc

#endif  // QDISC_QUANTUM_SIM_HPP_
