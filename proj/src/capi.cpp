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

#include "qdisc/qdisc.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "qdisc/catalog.hpp"
#include "qdisc/digraph.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/estimators.hpp"
#include "qdisc/experiment.hpp"
#include "qdisc/truth.hpp"

struct qdisc_graph {
  qdisc::Digraph g;
};

struct qdisc_catalog {
  qdisc::TypeCatalog c;
};

struct qdisc_spec {
  qdisc::ExperimentSpec s;
};

namespace {

thread_local std::string g_last_error;

qdisc_status status_of(qdisc::ErrorKind kind) {
  switch (kind) {
    case qdisc::ErrorKind::kUsage: return QDISC_E_USAGE;
    case qdisc::ErrorKind::kConstruction: return QDISC_E_CONSTRUCTION;
    case qdisc::ErrorKind::kDomain: return QDISC_E_DOMAIN;
    case qdisc::ErrorKind::kEnumeration: return QDISC_E_ENUMERATION;
    case qdisc::ErrorKind::kCatalogIncomplete: return QDISC_E_CATALOG_INCOMPLETE;
    case qdisc::ErrorKind::kGuard: return QDISC_E_GUARD;
    case qdisc::ErrorKind::kIo: return QDISC_E_IO;
    case qdisc::ErrorKind::kInsufficientData: return QDISC_E_INSUFFICIENT_DATA;
  }
  return QDISC_E_INTERNAL;
}

template <typename F>
qdisc_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return QDISC_OK;
  } catch (const qdisc::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QDISC_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QDISC_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QDISC_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) qdisc::fail(qdisc::ErrorKind::kUsage, std::string(what) + " is NULL");
}

qdisc::EstimatorOptions options(uint64_t seed, const char* mode, double scale) {
  qdisc::EstimatorOptions o;
  o.seed = seed;
  o.keep_instances = false;
  o.cost.mode = mode ? qdisc::parse_count_mode(mode) : qdisc::CountMode::kStochastic;
  if (!(scale > 0.0)) qdisc::fail(qdisc::ErrorKind::kUsage, "constant_scale must be positive");
  o.cost.constant_scale = scale;
  return o;
}

void copy_out(const qdisc::EstimateReport& r, double* estimates, size_t len,
              qdisc_ledger* ledger) {
  if (estimates) {
    if (len < r.estimates.size()) {
      qdisc::fail(qdisc::ErrorKind::kUsage, "estimate buffer too small");
    }
    for (size_t i = 0; i < r.estimates.size(); ++i) estimates[i] = r.estimates[i];
  }
  if (ledger) {
    ledger->classical_out = r.ledger.classical_out;
    ledger->classical_in = r.ledger.classical_in;
    ledger->quantum_cost = r.ledger.quantum_cost.convert_to<double>();
  }
}

}  // namespace

extern "C" {

const char* qdisc_last_error(void) { return g_last_error.c_str(); }

const char* qdisc_status_name(qdisc_status status) {
  switch (status) {
    case QDISC_OK: return "ok";
    case QDISC_E_USAGE: return "usage";
    case QDISC_E_CONSTRUCTION: return "construction";
    case QDISC_E_DOMAIN: return "domain";
    case QDISC_E_ENUMERATION: return "enumeration";
    case QDISC_E_CATALOG_INCOMPLETE: return "catalog-incomplete";
    case QDISC_E_GUARD: return "guard";
    case QDISC_E_IO: return "io";
    case QDISC_E_INSUFFICIENT_DATA: return "insufficient-data";
    case QDISC_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qdisc_version(void) { return "0.1.0"; }

qdisc_status qdisc_graph_generate(const char* generator, size_t n, unsigned d,
                                  uint64_t seed, qdisc_graph** out) {
  return guarded([&] {
    need(generator, "generator");
    need(out, "out");
    *out = new qdisc_graph{
        qdisc::generate(qdisc::GeneratorSpec::parse(generator), n, d, seed)};
  });
}

qdisc_status qdisc_graph_from_edges(size_t n, unsigned d, const uint32_t* tails,
                                    const uint32_t* heads, size_t edges,
                                    qdisc_graph** out) {
  return guarded([&] {
    need(out, "out");
    if (edges > 0) {
      need(tails, "tails");
      need(heads, "heads");
    }
    std::vector<qdisc::Edge> list;
    list.reserve(edges);
    for (size_t i = 0; i < edges; ++i) list.emplace_back(tails[i], heads[i]);
    *out = new qdisc_graph{qdisc::Digraph::from_edges(n, d, list)};
  });
}

qdisc_status qdisc_graph_load(const char* path, qdisc_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new qdisc_graph{qdisc::load_graph(path)};
  });
}

qdisc_status qdisc_graph_save(const qdisc_graph* g, const char* path) {
  return guarded([&] {
    need(g, "graph");
    need(path, "path");
    qdisc::save_graph(path, g->g);
  });
}

size_t qdisc_graph_n(const qdisc_graph* g) { return g ? g->g.n() : 0; }
unsigned qdisc_graph_d(const qdisc_graph* g) { return g ? g->g.d() : 0; }
size_t qdisc_graph_edges(const qdisc_graph* g) {
  return g ? g->g.edges().size() : 0;
}
void qdisc_graph_free(qdisc_graph* g) { delete g; }

qdisc_status qdisc_catalog_enumerate(unsigned d, unsigned q, qdisc_catalog** out) {
  return guarded([&] {
    need(out, "out");
    *out = new qdisc_catalog{qdisc::enumerate_catalog(d, q)};
  });
}

size_t qdisc_catalog_size(const qdisc_catalog* c) { return c ? c->c.size() : 0; }
void qdisc_catalog_free(qdisc_catalog* c) { delete c; }

qdisc_status qdisc_count_disc_types(const qdisc_graph* g, const qdisc_catalog* c,
                                    uint64_t* counts, size_t len) {
  return guarded([&] {
    need(g, "graph");
    need(c, "catalog");
    need(counts, "counts");
    auto cnt = qdisc::count_disc_types(g->g, c->c);
    if (len < cnt.size()) qdisc::fail(qdisc::ErrorKind::kUsage, "count buffer too small");
    std::memcpy(counts, cnt.data(), cnt.size() * sizeof(uint64_t));
  });
}

qdisc_status qdisc_est_vertices(const qdisc_graph* g, double delta, uint64_t seed,
                                const char* count_mode, double constant_scale,
                                double* estimates, size_t len,
                                qdisc_ledger* ledger) {
  return guarded([&] {
    need(g, "graph");
    qdisc::GraphOutOracle oracle(g->g);
    auto r = qdisc::est_vertices(oracle, delta, options(seed, count_mode, constant_scale));
    copy_out(r, estimates, len, ledger);
  });
}

qdisc_status qdisc_est_disc_star(const qdisc_graph* g, const qdisc_catalog* c,
                                 double delta, uint64_t seed,
                                 const char* count_mode, double constant_scale,
                                 double* estimates, size_t len,
                                 qdisc_ledger* ledger) {
  return guarded([&] {
    need(g, "graph");
    need(c, "catalog");
    qdisc::GraphOutOracle oracle(g->g);
    auto r = qdisc::est_disc_star(oracle, c->c, qdisc::Real(delta),
                                  options(seed, count_mode, constant_scale));
    copy_out(r, estimates, len, ledger);
  });
}

qdisc_status qdisc_spec_create(qdisc_spec** out) {
  return guarded([&] {
    need(out, "out");
    *out = new qdisc_spec{};
  });
}

qdisc_status qdisc_spec_set(qdisc_spec* s, const char* key, const char* value) {
  return guarded([&] {
    need(s, "spec");
    need(key, "key");
    need(value, "value");
    s->s.set(key, value);
  });
}

qdisc_status qdisc_spec_config_hash(const qdisc_spec* s, char* buf, size_t len) {
  return guarded([&] {
    need(s, "spec");
    need(buf, "buffer");
    const std::string h = qdisc::config_hash(s->s);
    if (len < h.size() + 1) qdisc::fail(qdisc::ErrorKind::kUsage, "hash buffer too small");
    std::memcpy(buf, h.c_str(), h.size() + 1);
  });
}

qdisc_status qdisc_spec_run(const qdisc_spec* s, size_t* rows, double* success_rate) {
  return guarded([&] {
    need(s, "spec");
    auto summary = qdisc::run_experiment(s->s);
    if (rows) *rows = summary.rows;
    if (success_rate) *success_rate = summary.success_rate;
  });
}

void qdisc_spec_free(qdisc_spec* s) { delete s; }

qdisc_status qdisc_fit_exponent(const char* csv_path, double* slope,
                                double* ci_low, double* ci_high) {
  return guarded([&] {
    need(csv_path, "path");
    auto f = qdisc::fit_exponent_csv(csv_path);
    if (slope) *slope = f.slope;
    if (ci_low) *ci_low = f.ci_low;
    if (ci_high) *ci_high = f.ci_high;
  });
}

}  // extern "C"
