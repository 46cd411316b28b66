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

#ifndef QDISC_EXPERIMENT_HPP_
#define QDISC_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qdisc/numeric.hpp"
#include "qdisc/quantum_sim.hpp"

namespace qdisc {

struct ExperimentSpec {
  // est-vertices, est-disc, est-disc-star, est-subgraph, test-star-free,
  // scaling-sweep, catalog-dump, truth-dump, fit-exponent.
  std::string task = "est-vertices";
  // Generator spec ("kind:key=val,...") or "file:<path>".
  std::string instance = "uniform-bounded";
  std::size_t n = 1024;
  unsigned d = 2, q = 1, k = 2;
  double delta = 0.2;
  double epsilon = 0.05;
  double constant_scale = 1.0;
  CountMode mode = CountMode::kStochastic;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  // Main artifact path; the JSON sidecar is <out>.json.
  std::string out;
  // est-subgraph pattern as "0>1,2>1"; empty means the k-star.
  std::string pattern;
  // scaling-sweep: the estimator to sweep and the n grid.
  std::string sweep_task = "est-vertices";
  std::vector<std::size_t> n_values;
  // fit-exponent input.
  std::string input;
  // Tester sample constant and baseline constant.
  double sample_constant = 4.0;
  double baseline_constant = 4.0;
  unsigned threads = 0;

  // Applies "key=value"; throws a usage error on unknown keys or values.
  void set(const std::string& key, const std::string& value);
  void validate() const;
  // Canonical text of every field that affects results.
  std::string canonical() const;
};

// FNV-1a 64 of the canonical spec text, as 16 hex digits.
std::string config_hash(const ExperimentSpec& spec);

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double ci_low = 0, ci_high = 0;
  std::size_t points = 0;
};

// Least squares of log mean cost on log n. Bootstrap resamples trials
// within each n.
ExponentFit fit_exponent(const std::vector<std::size_t>& n,
                         const std::vector<Real>& cost,
                         std::uint64_t seed = 1, unsigned resamples = 1000);
// Reads trial rows of a sweep CSV.
ExponentFit fit_exponent_csv(const std::string& path, std::uint64_t seed = 1);

struct ExperimentSummary {
  std::size_t rows = 0;
  double success_rate = 0;
  std::string config_hash;
  std::vector<std::string> artifacts;
};

// Runs the task and writes its artifacts. On error no artifact is left.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

}  // namespace qdisc

#endif  // QDISC_EXPERIMENT_HPP_
