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

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qdisc/qdisc.h"

namespace {

int report(qdisc_status st) {
  std::fprintf(stderr, "qdisc: %s error: %s\n", qdisc_status_name(st),
               qdisc_last_error());
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum disc-type estimators and testers on bounded-degree digraphs"};
  app.set_version_flag("--version", std::string(qdisc_version()));

  // Flag name -> key understood by qdisc_spec_set.
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"task", "est-vertices, est-disc, est-disc-star, est-subgraph, "
               "test-star-free, scaling-sweep, catalog-dump, truth-dump, "
               "fit-exponent"},
      {"n", "number of vertices"},
      {"d", "degree bound"},
      {"q", "disc radius"},
      {"k", "star size for test-star-free and est-subgraph"},
      {"delta", "error parameter"},
      {"epsilon", "distance parameter for testers"},
      {"trials", "number of seeded trials"},
      {"seed", "base seed"},
      {"count-mode", "stochastic, deterministic-exact or adversarial"},
      {"constant-scale", "multiplier on emulated quantum constants"},
      {"instance", "generator spec kind[:key=val,...] or file:<path>"},
      {"out", "output CSV path; a JSON sidecar goes to <out>.json"},
      {"pattern", "est-subgraph pattern as 0>1,2>1"},
      {"sweep-task", "estimator swept by scaling-sweep"},
      {"n-values", "sweep grid, e.g. 1024,4096 or 2^10..2^20"},
      {"input", "sweep CSV for fit-exponent"},
      {"sample-constant", "tester sample-size constant"},
      {"baseline-constant", "classical baseline sample constant"},
      {"threads", "worker threads, 0 for all cores"},
  };
  std::vector<std::string> values(keys.size());
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    options.push_back(app.add_option("--" + keys[i].first, values[i], keys[i].second));
  }
  options[0]->required();
  CLI11_PARSE(app, argc, argv);

  qdisc_spec* spec = nullptr;
  if (qdisc_status st = qdisc_spec_create(&spec); st != QDISC_OK) return report(st);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (options[i]->count() == 0) continue;
    if (qdisc_status st = qdisc_spec_set(spec, keys[i].first.c_str(), values[i].c_str());
        st != QDISC_OK) {
      qdisc_spec_free(spec);
      return report(st);
    }
  }
  char hash[32];
  size_t rows = 0;
  double rate = 0;
  qdisc_status st = qdisc_spec_config_hash(spec, hash, sizeof hash);
  if (st == QDISC_OK) st = qdisc_spec_run(spec, &rows, &rate);
  qdisc_spec_free(spec);
  if (st != QDISC_OK) return report(st);
  std::printf("config_hash=%s rows=%zu success_rate=%.4f\n", hash, rows, rate);
  return 0;
}
