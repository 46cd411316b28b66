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

#include "qdisc/quantum_sim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/constants/constants.hpp>

#include "qdisc/errors.hpp"

namespace qdisc {

CountMode parse_count_mode(const std::string& text) {
  if (text == "stochastic") return CountMode::kStochastic;
  if (text == "deterministic-exact" || text == "exact") return CountMode::kExact;
  if (text == "adversarial") return CountMode::kAdversarial;
  fail(ErrorKind::kUsage, "unknown count mode '" + text + "'");
}

std::string to_string(CountMode mode) {
  switch (mode) {
    case CountMode::kStochastic:
      return "stochastic";
    case CountMode::kExact:
      return "deterministic-exact";
    case CountMode::kAdversarial:
      return "adversarial";
  }
  return "unknown";
}

BooleanOracle::BooleanOracle(std::uint64_t domain_size,
                             std::function<bool(std::uint64_t)> evaluate)
    : domain_size_(domain_size), evaluate_(std::move(evaluate)) {}

BooleanOracle BooleanOracle::from_marked(std::uint64_t domain_size,
                                         std::vector<std::uint64_t> marked) {
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  if (!marked.empty() && marked.back() >= domain_size) {
    fail(ErrorKind::kUsage, "marked index outside the domain");
  }
  auto shared = std::make_shared<std::vector<std::uint64_t>>(marked);
  BooleanOracle o(domain_size, [shared](std::uint64_t x) {
    return std::binary_search(shared->begin(), shared->end(), x);
  });
  o.marked_ = std::move(marked);
  return o;
}

bool BooleanOracle::evaluate(std::uint64_t x) const {
  if (x >= domain_size_) fail(ErrorKind::kUsage, "oracle index out of range");
  return evaluate_(x);
}

const std::vector<std::uint64_t>& BooleanOracle::marked() const {
  if (!marked_) {
    std::vector<std::uint64_t> m;
    for (std::uint64_t x = 0; x < domain_size_; ++x) {
      if (evaluate_(x)) m.push_back(x);
    }
    marked_ = std::move(m);
  }
  return *marked_;
}

void charge_quantum(QueryLedger& ledger, const Real& cost) {
  if (cost < 0) fail(ErrorKind::kUsage, "negative quantum charge");
  ledger.quantum_cost += cost;
}

std::optional<std::uint64_t> grover_sample(const BooleanOracle& oracle,
                                           QueryLedger& ledger,
                                           const CostModel& model, Rng& rng,
                                           std::optional<Real> budget) {
  const auto& marked = oracle.marked();
  const Real N = Real(oracle.domain_size());
  if (marked.empty()) {
    Real charge = budget ? *budget
                         : model.grover_constant * model.constant_scale * sqrt(N);
    if (charge <= 0) {
      fail(ErrorKind::kUsage, "zero Grover budget with no marked index");
    }
    charge_quantum(ledger, charge);
    return std::nullopt;
  }
  const Real t = Real(marked.size());
  charge_quantum(ledger, model.grover_constant * model.constant_scale * sqrt(N / t));
  return marked[rng.below(marked.size())];
}

double count_error_bound(std::uint64_t N, std::uint64_t t, const Real& M) {
  const Real pi = boost::math::constants::pi<Real>();
  const Real tn = Real(t), nn = Real(N);
  Real b = 2 * pi * sqrt(tn * (nn - tn)) / M + pi * pi * nn / (M * M);
  return to_double(b);
}

double quantum_count(const BooleanOracle& oracle, QueryLedger& ledger,
                     const CostModel& model, Rng& rng, const Real& M,
                     double eta) {
  if (M < 1) fail(ErrorKind::kUsage, "Count budget M must be at least 1");
  if (!(eta > 0.0 && eta < 1.0)) {
    fail(ErrorKind::kUsage, "Count failure probability must lie in (0,1)");
  }
  charge_quantum(ledger, 500 * M * log(Real(2) / Real(eta)) * model.constant_scale);
  const std::uint64_t N = oracle.domain_size();
  const std::uint64_t t = oracle.marked_count_truth();
  const double td = static_cast<double>(t);
  switch (model.mode) {
    case CountMode::kExact:
      return td;
    case CountMode::kAdversarial:
      return std::max(0.0, td - count_error_bound(N, t, M));
    case CountMode::kStochastic:
      break;
  }
  if (rng.bernoulli(eta)) return rng.uniform(0.0, static_cast<double>(N));
  const double b = count_error_bound(N, t, M);
  return td + rng.uniform(-b, b);
}

std::uint64_t median_trials(double eta, const Real& constant_scale) {
  if (!(eta > 0.0 && eta < 1.0)) {
    fail(ErrorKind::kUsage, "failure probability must lie in (0,1)");
  }
  Real k = ceil(500 * log(Real(2) / Real(eta)) * constant_scale);
  return std::max<std::uint64_t>(1, k.convert_to<std::uint64_t>());
}

double median_amplify(const std::function<double()>& runner, double eta,
                      const Real& constant_scale,
                      std::optional<std::uint64_t> forced_trials) {
  const std::uint64_t k =
      forced_trials ? std::max<std::uint64_t>(1, *forced_trials)
                    : median_trials(eta, constant_scale);
  std::vector<double> values;
  values.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) values.push_back(runner());
  auto mid = values.begin() + static_cast<std::ptrdiff_t>((k - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

}  // namespace qdisc
