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

#ifndef QDISC_QDISC_H_
#define QDISC_QDISC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QDISC_BUILDING_SHARED)
#define QDISC_API __attribute__((visibility("default")))
#else
#define QDISC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdisc_status {
  QDISC_OK = 0,
  QDISC_E_USAGE = 1,
  QDISC_E_CONSTRUCTION = 2,
  QDISC_E_DOMAIN = 3,
  QDISC_E_ENUMERATION = 4,
  QDISC_E_CATALOG_INCOMPLETE = 5,
  QDISC_E_GUARD = 6,
  QDISC_E_IO = 7,
  QDISC_E_INSUFFICIENT_DATA = 8,
  QDISC_E_INTERNAL = 99
} qdisc_status;

typedef struct qdisc_graph qdisc_graph;
typedef struct qdisc_catalog qdisc_catalog;
typedef struct qdisc_spec qdisc_spec;

// Message of the last failed call on this thread; never NULL.
QDISC_API const char* qdisc_last_error(void);
QDISC_API const char* qdisc_status_name(qdisc_status status);
QDISC_API const char* qdisc_version(void);

// Graphs.
QDISC_API qdisc_status qdisc_graph_generate(const char* generator, size_t n,
                                            unsigned d, uint64_t seed,
                                            qdisc_graph** out);
QDISC_API qdisc_status qdisc_graph_from_edges(size_t n, unsigned d,
                                              const uint32_t* tails,
                                              const uint32_t* heads,
                                              size_t edges, qdisc_graph** out);
QDISC_API qdisc_status qdisc_graph_load(const char* path, qdisc_graph** out);
QDISC_API qdisc_status qdisc_graph_save(const qdisc_graph* g, const char* path);
QDISC_API size_t qdisc_graph_n(const qdisc_graph* g);
QDISC_API unsigned qdisc_graph_d(const qdisc_graph* g);
QDISC_API size_t qdisc_graph_edges(const qdisc_graph* g);
QDISC_API void qdisc_graph_free(qdisc_graph* g);

// Catalogs of rooted disc types.
QDISC_API qdisc_status qdisc_catalog_enumerate(unsigned d, unsigned q,
                                               qdisc_catalog** out);
QDISC_API size_t qdisc_catalog_size(const qdisc_catalog* c);
QDISC_API void qdisc_catalog_free(qdisc_catalog* c);

// Exact disc-type counts; counts has room for qdisc_catalog_size entries.
QDISC_API qdisc_status qdisc_count_disc_types(const qdisc_graph* g,
                                              const qdisc_catalog* c,
                                              uint64_t* counts, size_t len);

// Per-run cost accounting.
typedef struct qdisc_ledger {
  uint64_t classical_out;
  uint64_t classical_in;
  double quantum_cost;
} qdisc_ledger;

// Estimates of the number of vertices of each in-degree 0..d; estimates has
// room for d + 1 entries. count_mode is "stochastic", "deterministic-exact"
// or "adversarial"; NULL means stochastic.
QDISC_API qdisc_status qdisc_est_vertices(const qdisc_graph* g, double delta,
                                          uint64_t seed, const char* count_mode,
                                          double constant_scale,
                                          double* estimates, size_t len,
                                          qdisc_ledger* ledger);
// Disc-type estimates indexed by catalog id.
QDISC_API qdisc_status qdisc_est_disc_star(const qdisc_graph* g,
                                           const qdisc_catalog* c, double delta,
                                           uint64_t seed, const char* count_mode,
                                           double constant_scale,
                                           double* estimates, size_t len,
                                           qdisc_ledger* ledger);

// Experiments, configured by key/value pairs.
QDISC_API qdisc_status qdisc_spec_create(qdisc_spec** out);
QDISC_API qdisc_status qdisc_spec_set(qdisc_spec* s, const char* key,
                                      const char* value);
QDISC_API qdisc_status qdisc_spec_config_hash(const qdisc_spec* s, char* buf,
                                              size_t len);
QDISC_API qdisc_status qdisc_spec_run(const qdisc_spec* s, size_t* rows,
                                      double* success_rate);
QDISC_API void qdisc_spec_free(qdisc_spec* s);

QDISC_API qdisc_status qdisc_fit_exponent(const char* csv_path, double* slope,
                                          double* ci_low, double* ci_high);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // QDISC_QDISC_H_
