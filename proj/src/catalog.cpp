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

#include "qdisc/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <set>

#include "qdisc/errors.hpp"

namespace qdisc {

std::size_t effective_enum_cap(std::size_t requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("QDISC_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    fail(ErrorKind::kUsage,
         std::string("QDISC_ENUM_CAP must be a positive integer, got '") +
             env + "'");
  }
  return kDefaultEnumCap;
}

std::uint64_t disc_vertex_bound(unsigned d, unsigned q) {
  std::uint64_t s = 0, p = 1;
  for (unsigned j = 0; j <= q; ++j) {
    s += p;
    p *= 2ull * d;
  }
  return s;
}

std::uint64_t disc_edge_bound(unsigned d, unsigned q) {
  return 2ull * d * disc_vertex_bound(d, q);
}

namespace {

RootedGraph without_edge(const RootedGraph& g, std::size_t index,
                         std::vector<std::uint8_t>* keep) {
  std::vector<LocalEdge> rest;
  rest.reserve(g.edges.size() - 1);
  std::vector<unsigned> deg(g.num_vertices, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i == index) continue;
    rest.push_back(g.edges[i]);
    ++deg[g.edges[i].first];
    ++deg[g.edges[i].second];
  }
  Permutation relabel(g.num_vertices, 0);
  keep->clear();
  for (unsigned v = 0; v < g.num_vertices; ++v) {
    if (v == 0 || deg[v] > 0) {
      relabel[v] = static_cast<std::uint8_t>(keep->size());
      keep->push_back(static_cast<std::uint8_t>(v));
    }
  }
  for (auto& [u, v] : rest) {
    u = relabel[u];
    v = relabel[v];
  }
  return RootedGraph(static_cast<unsigned>(keep->size()), std::move(rest));
}

// Root plus the edges selected by mask, relabelled in increasing label order.
RootedGraph edge_subgraph(const RootedGraph& host, std::uint64_t mask) {
  std::uint32_t used = 1;
  for (std::size_t i = 0; i < host.edges.size(); ++i) {
    if (mask >> i & 1u) {
      used |= 1u << host.edges[i].first;
      used |= 1u << host.edges[i].second;
    }
  }
  std::uint8_t relabel[kMaxLocalVertices] = {};
  unsigned nv = 0;
  for (unsigned v = 0; v < host.num_vertices; ++v) {
    if (used >> v & 1u) relabel[v] = static_cast<std::uint8_t>(nv++);
  }
  std::vector<LocalEdge> edges;
  for (std::size_t i = 0; i < host.edges.size(); ++i) {
    if (mask >> i & 1u) {
      edges.emplace_back(relabel[host.edges[i].first],
                         relabel[host.edges[i].second]);
    }
  }
  return RootedGraph(nv, std::move(edges));
}

}  // namespace

const std::vector<int>& TypeCatalog::with_edges(unsigned i) const {
  static const std::vector<int> kEmpty;
  return i < by_edges_.size() ? by_edges_[i] : kEmpty;
}

int TypeCatalog::find_canonical(const RootedGraph& canon) const {
  auto it = index_.find(encode(canon));
  return it == index_.end() ? -1 : it->second;
}

int TypeCatalog::classify(const RootedGraph& g) const {
  if (g.num_vertices > s_ + 1 || g.edge_count() > max_edges_) return -1;
  return find_canonical(canonicalize(g));
}

bool TypeCatalog::admits(const RootedGraph& g) const {
  int r = g.radius();
  if (r < 0 || static_cast<unsigned>(r) > q_ || g.max_degree() > d_) {
    return false;
  }
  return !filter_ || filter_(canonicalize(g));
}

int TypeCatalog::subset_type(int host, std::uint64_t mask) const {
  return classify(edge_subgraph(type(host).canon, mask));
}

std::vector<int> TypeCatalog::subset_types(int host) const {
  const RootedGraph& h = type(host).canon;
  if (h.edge_count() > 24) {
    fail(ErrorKind::kGuard, "edge-subset table too large for type " +
                                std::to_string(host));
  }
  std::vector<int> out(std::size_t{1} << h.edge_count());
  for (std::uint64_t mask = 0; mask < out.size(); ++mask) {
    out[mask] = classify(edge_subgraph(h, mask));
  }
  return out;
}

std::vector<BigInt> TypeCatalog::mu_column(int host) const {
  std::vector<BigInt> col(types_.size(), 0);
  const auto sub = subset_types(host);
  // ways[mask]: orderings of mask whose every prefix lies on the prefix chain
  // of the mask's own type. A tuple for type a is such an ordering of a mask
  // of type a.
  std::vector<std::uint64_t> ways(sub.size(), 0);
  ways[0] = 1;
  col[0] = 1;
  for (std::uint64_t mask = 1; mask < sub.size(); ++mask) {
    const int t = sub[mask];
    if (t < 0) continue;
    const int p = types_[t].parent();
    std::uint64_t total = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      const std::uint64_t smaller = mask & ~(rest & (~rest + 1));
      if (sub[smaller] == p) total += ways[smaller];
    }
    ways[mask] = total;
    col[t] += total;
  }
  return col;
}

BigInt TypeCatalog::mu(int a, int b) const {
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= size() ||
      static_cast<std::size_t>(b) >= size()) {
    fail(ErrorKind::kUsage, "type id out of range");
  }
  if (a == 0) return 1;
  if (b == 0) return 0;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->matrix) return cache_->matrix->m[a - 1][b - 1];
  }
  if (type(a).edge_count() > type(b).edge_count()) return 0;
  return mu_column(b)[a];
}

BigInt TypeCatalog::mu_total(int a) const {
  if (a == 0) fail(ErrorKind::kUsage, "mu_total is defined for nonempty types");
  const auto& m = matrix();
  BigInt s = 0;
  for (const auto& x : m.m[a - 1]) s += x;
  return s;
}

const CorrectionMatrix& TypeCatalog::matrix() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->matrix) return *cache_->matrix;
  const std::size_t n = nonempty();
  auto cm = std::make_unique<CorrectionMatrix>();
  cm->m.assign(n, std::vector<BigInt>(n, 0));
  for (std::size_t b = 1; b <= n; ++b) {
    auto col = mu_column(static_cast<int>(b));
    for (std::size_t a = 1; a <= n; ++a) cm->m[a - 1][b - 1] = col[a];
  }
  cm->inverse.assign(n, std::vector<Rational>(n, 0));
  for (std::size_t k = 0; k < n; ++k) {
    if (cm->m[k][k] < 1) {
      fail(ErrorKind::kDomain, "correction matrix has a zero diagonal entry");
    }
    cm->inverse[k][k] = Rational(1) / Rational(cm->m[k][k]);
    for (std::size_t r = k; r-- > 0;) {
      Rational acc = 0;
      for (std::size_t c = r + 1; c <= k; ++c) {
        if (cm->m[r][c] != 0 && cm->inverse[c][k] != 0) {
          acc += Rational(cm->m[r][c]) * cm->inverse[c][k];
        }
      }
      if (acc != 0) cm->inverse[r][k] = -acc / Rational(cm->m[r][r]);
    }
  }
  cm->inverse_one_norm = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Rational s = 0;
    for (std::size_t r = 0; r < n; ++r) s += abs(cm->inverse[r][c]);
    if (s > cm->inverse_one_norm) cm->inverse_one_norm = s;
  }
  cm->above.assign(n + 1, {});
  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = a; b <= n; ++b) {
      if (cm->m[a - 1][b - 1] != 0) cm->above[a].push_back(static_cast<int>(b));
    }
  }
  cache_->matrix = std::move(cm);
  return *cache_->matrix;
}

TypeCatalog enumerate_catalog(unsigned d, unsigned q,
                              const CatalogOptions& options) {
  if (d < 1) fail(ErrorKind::kUsage, "degree bound must be positive");
  const std::size_t cap = effective_enum_cap(options.cap);
  const std::uint64_t s_bound = disc_vertex_bound(d, q);
  TypeCatalog cat;
  cat.d_ = d;
  cat.q_ = q;
  cat.s_ = static_cast<unsigned>(std::min<std::uint64_t>(s_bound, 1u << 30));
  cat.m_ = static_cast<unsigned>(
      std::min<std::uint64_t>(disc_edge_bound(d, q), 1u << 30));
  cat.filter_ = options.filter;
  if (options.filter) {
    cat.family_ = options.filter_name.empty() ? "filtered" : options.filter_name;
  }

  auto admitted = [&](const RootedGraph& canon) {
    return !options.filter || options.filter(canon);
  };

  // Breadth-first growth by one edge at a time. Every admissible graph with
  // i edges has an admissible predecessor with i-1 edges, so this reaches
  // every type.
  std::vector<RootedGraph> found{RootedGraph()};
  std::set<std::string> seen{encode(found[0])};
  std::vector<RootedGraph> frontier = found;
  auto add = [&](const RootedGraph& g, std::vector<RootedGraph>& next) {
    RootedGraph c = canonicalize(g);
    if (!admitted(c)) return;
    if (seen.insert(encode(c)).second) {
      if (found.size() >= cap) {
        fail(ErrorKind::kEnumeration,
             "catalog for d=" + std::to_string(d) + ", q=" + std::to_string(q) +
                 " exceeds the enumeration cap of " + std::to_string(cap) +
                 " types (set QDISC_ENUM_CAP to raise it)");
      }
      found.push_back(c);
      next.push_back(std::move(c));
    }
  };
  while (!frontier.empty()) {
    std::vector<RootedGraph> next;
    for (const auto& g : frontier) {
      const auto dist = g.distances();
      std::vector<unsigned> in(g.num_vertices, 0), out(g.num_vertices, 0);
      for (const auto& [u, v] : g.edges) {
        ++out[u];
        ++in[v];
      }
      for (unsigned a = 0; a < g.num_vertices; ++a) {
        for (unsigned b = 0; b < g.num_vertices; ++b) {
          if (a == b || out[a] >= d || in[b] >= d || g.has_edge(a, b)) continue;
          auto edges = g.edges;
          edges.emplace_back(a, b);
          add(RootedGraph(g.num_vertices, std::move(edges)), next);
        }
      }
      if (g.num_vertices >= s_bound || g.num_vertices >= kMaxLocalVertices) {
        continue;
      }
      const auto w = static_cast<std::uint8_t>(g.num_vertices);
      for (unsigned a = 0; a < g.num_vertices; ++a) {
        if (dist[a] < 0 || static_cast<unsigned>(dist[a]) >= q) continue;
        const auto la = static_cast<std::uint8_t>(a);
        if (out[a] < d) {
          auto edges = g.edges;
          edges.emplace_back(la, w);
          add(RootedGraph(g.num_vertices + 1, std::move(edges)), next);
        }
        if (in[a] < d) {
          auto edges = g.edges;
          edges.emplace_back(w, la);
          add(RootedGraph(g.num_vertices + 1, std::move(edges)), next);
        }
      }
    }
    frontier = std::move(next);
  }

  // Linear extension: (edge count, vertex count, adjacency rows).
  std::stable_sort(found.begin(), found.end(),
                   [](const RootedGraph& x, const RootedGraph& y) {
                     if (x.edge_count() != y.edge_count()) {
                       return x.edge_count() < y.edge_count();
                     }
                     if (x.num_vertices != y.num_vertices) {
                       return x.num_vertices < y.num_vertices;
                     }
                     return x.rows() < y.rows();
                   });
  cat.types_.resize(found.size());
  for (std::size_t id = 0; id < found.size(); ++id) {
    auto& t = cat.types_[id];
    t.id = static_cast<int>(id);
    t.canon = found[id];
    cat.index_.emplace(encode(t.canon), t.id);
    cat.max_edges_ = std::max(cat.max_edges_, t.canon.edge_count());
  }
  cat.by_edges_.assign(cat.max_edges_ + 1, {});
  for (const auto& t : cat.types_) cat.by_edges_[t.edge_count()].push_back(t.id);

  // Edge orderings, parents first.
  cat.types_[0].prefix_ids = {0};
  for (std::size_t id = 1; id < cat.types_.size(); ++id) {
    auto& t = cat.types_[id];
    int best = -1;
    std::size_t best_edge = 0;
    std::vector<std::uint8_t> keep, best_keep;
    RootedGraph best_graph;
    for (std::size_t e = 0; e < t.canon.edges.size(); ++e) {
      RootedGraph smaller = without_edge(t.canon, e, &keep);
      int r = smaller.radius();
      if (r < 0 || static_cast<unsigned>(r) > q) continue;
      int pid = cat.find_canonical(canonicalize(smaller));
      if (pid < 0) continue;
      if (best < 0 || pid < best) {
        best = pid;
        best_edge = e;
        best_keep = keep;
        best_graph = smaller;
      }
    }
    if (best < 0) {
      fail(ErrorKind::kCatalogIncomplete,
           "type " + std::to_string(id) + " has no predecessor in the catalog");
    }
    const auto& parent = cat.types_[best];
    Permutation phi = smallest_isomorphism(parent.canon, best_graph);
    t.edge_order.clear();
    for (const auto& [u, v] : parent.edge_order) {
      t.edge_order.emplace_back(best_keep[phi[u]], best_keep[phi[v]]);
    }
    t.edge_order.push_back(t.canon.edges[best_edge]);
    t.prefix_ids = parent.prefix_ids;
    t.prefix_ids.push_back(t.id);
  }
  return cat;
}

TypeCatalog enumerate_star_catalog(unsigned d, std::size_t cap) {
  CatalogOptions opt;
  opt.cap = cap;
  opt.filter_name = "stars";
  opt.filter = [](const RootedGraph& g) {
    for (const auto& [u, v] : g.edges) {
      if (v != 0 || u == 0) return false;
    }
    return g.edge_count() + 1 == g.num_vertices;
  };
  return enumerate_catalog(d, 1, opt);
}

// ---------------------------------------------------------------------------
// Tuple tables

TupleClassTable build_tuple_table(const TypeCatalog& catalog, int gamma,
                                  int host) {
  if (!catalog.precedes(gamma, host)) {
    fail(ErrorKind::kDomain, "type " + std::to_string(gamma) +
                                 " does not precede type " +
                                 std::to_string(host));
  }
  const DiscType& g = catalog.type(gamma);
  const RootedGraph& h = catalog.type(host).canon;
  const auto sub = catalog.subset_types(host);
  const unsigned i = g.edge_count();
  const std::size_t e_count = h.edges.size();

  TupleClassTable table;
  table.gamma = gamma;
  table.host = host;
  table.host_automorphisms = automorphisms(h);
  table.levels.assign(i + 1, {});
  table.levels[0].push_back({});
  for (unsigned j = 1; j <= i; ++j) {
    for (const auto& prev : table.levels[j - 1]) {
      std::uint64_t mask = 0;
      for (auto e : prev) mask |= 1ull << e;
      for (std::size_t e = 0; e < e_count; ++e) {
        if (mask >> e & 1u) continue;
        if (sub[mask | (1ull << e)] != g.prefix_ids[j]) continue;
        auto next = prev;
        next.push_back(static_cast<std::uint8_t>(e));
        table.levels[j].push_back(std::move(next));
      }
    }
  }

  // Edge index images under each automorphism.
  std::map<LocalEdge, std::uint8_t> edge_index;
  for (std::size_t e = 0; e < e_count; ++e) {
    edge_index.emplace(h.edges[e], static_cast<std::uint8_t>(e));
  }
  std::vector<std::vector<std::uint8_t>> edge_image;
  for (const auto& perm : table.host_automorphisms) {
    std::vector<std::uint8_t> img(e_count);
    for (std::size_t e = 0; e < e_count; ++e) {
      img[e] = edge_index.at({perm[h.edges[e].first], perm[h.edges[e].second]});
    }
    edge_image.push_back(std::move(img));
  }

  table.class_of.assign(i + 1, {});
  table.class_size.assign(i + 1, {});
  std::vector<std::map<EdgeTuple, std::size_t>> position(i + 1);
  for (unsigned j = 0; j <= i; ++j) {
    const auto& lvl = table.levels[j];
    for (std::size_t t = 0; t < lvl.size(); ++t) position[j].emplace(lvl[t], t);
    table.class_of[j].assign(lvl.size(), -1);
    for (std::size_t t = 0; t < lvl.size(); ++t) {
      if (table.class_of[j][t] >= 0) continue;
      const int c = static_cast<int>(table.class_size[j].size());
      std::size_t size = 0;
      for (const auto& img : edge_image) {
        EdgeTuple mapped(lvl[t].size());
        for (std::size_t x = 0; x < lvl[t].size(); ++x) mapped[x] = img[lvl[t][x]];
        auto it = position[j].find(mapped);
        if (it == position[j].end()) {
          fail(ErrorKind::kDomain, "automorphism image left the tuple set");
        }
        if (table.class_of[j][it->second] < 0) {
          table.class_of[j][it->second] = c;
          ++size;
        }
      }
      table.class_size[j].push_back(size);
    }
  }

  table.kappa.assign(i + 1, {});
  for (unsigned j = 1; j <= i; ++j) {
    const std::size_t from = table.class_size[j - 1].size();
    const std::size_t to = table.class_size[j].size();
    table.kappa[j].assign(from, std::vector<std::uint64_t>(to, 0));
    std::vector<bool> have(from, false);
    for (std::size_t t = 0; t < table.levels[j - 1].size(); ++t) {
      const auto& prev = table.levels[j - 1][t];
      std::vector<std::uint64_t> counts(to, 0);
      for (std::size_t e = 0; e < e_count; ++e) {
        auto next = prev;
        next.push_back(static_cast<std::uint8_t>(e));
        auto it = position[j].find(next);
        if (it != position[j].end()) ++counts[table.class_of[j][it->second]];
      }
      const int c1 = table.class_of[j - 1][t];
      if (!have[c1]) {
        table.kappa[j][c1] = counts;
        have[c1] = true;
      } else if (table.kappa[j][c1] != counts) {
        table.kappa_well_defined = false;
      }
    }
  }
  return table;
}

Rational factor_identity_sum(const TupleClassTable& table) {
  if (table.levels.empty()) return 0;
  // value[c]: sum over chains ending in a fixed tuple of class c of the
  // product of kappa / |class|. Depends only on the class.
  std::vector<Rational> value(table.class_size[0].size(), Rational(1));
  for (std::size_t j = 1; j < table.levels.size(); ++j) {
    std::vector<Rational> next(table.class_size[j].size(), Rational(0));
    for (std::size_t c1 = 0; c1 < value.size(); ++c1) {
      const Rational weight = value[c1] * Rational(table.class_size[j - 1][c1]);
      for (std::size_t c2 = 0; c2 < next.size(); ++c2) {
        const auto k = table.kappa[j][c1][c2];
        if (k) {
          next[c2] += weight * Rational(k) /
                      Rational(table.class_size[j][c2]);
        }
      }
    }
    value = std::move(next);
  }
  Rational total = 0;
  const auto& last = table.class_size.back();
  for (std::size_t c = 0; c < value.size(); ++c) total += value[c] * Rational(last[c]);
  return total;
}

bool verify_factor_identity(const TupleClassTable& table) {
  return factor_identity_sum(table) == Rational(table.mu());
}

std::vector<Rational> solve_upper(const CorrectionMatrix& m,
                                  const std::vector<Rational>& x) {
  const std::size_t n = m.size();
  if (x.size() != n) fail(ErrorKind::kUsage, "right-hand side size mismatch");
  std::vector<Rational> y(n, 0);
  for (std::size_t r = n; r-- > 0;) {
    Rational acc = x[r];
    for (std::size_t c = r + 1; c < n; ++c) {
      if (m.m[r][c] != 0 && y[c] != 0) acc -= Rational(m.m[r][c]) * y[c];
    }
    y[r] = acc / Rational(m.m[r][r]);
  }
  return y;
}

void dump_catalog(std::ostream& os, const TypeCatalog& catalog) {
  for (const auto& t : catalog.types()) {
    os << t.id << " | " << t.edge_count() << " | " << edges_to_string(t.canon)
       << " | ";
    for (std::size_t j = 0; j < t.prefix_ids.size(); ++j) {
      if (j) os << ',';
      os << t.prefix_ids[j];
    }
    os << '\n';
  }
}

void dump_matrix(std::ostream& os, const CorrectionMatrix& m) {
  for (const auto& row : m.m) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << row[c];
    }
    os << '\n';
  }
}

}  // namespace qdisc

namespace qdisc {

PatternRooting root_pattern(const TypeCatalog& catalog, const RootedGraph& h) {
  std::vector<unsigned> order{0};
  for (unsigned u = 1; u < h.num_vertices; ++u) order.push_back(u);
  for (unsigned u : order) {
    RootedGraph rooted = reroot(h, u);
    int r = rooted.radius();
    if (r < 0 || static_cast<unsigned>(r) > catalog.q()) continue;
    int id = catalog.classify(rooted);
    if (id < 0) {
      fail(ErrorKind::kDomain,
           "pattern rooted at vertex " + std::to_string(u) +
               " is not a type of the catalog (degree or family mismatch)");
    }
    PatternRooting out;
    out.root = u;
    out.type_id = id;
    const RootedGraph canon = catalog.type(id).canon;
    out.c_h = 0;
    for (unsigned w = 0; w < h.num_vertices; ++w) {
      if (canonicalize(reroot(h, w)) == canon) ++out.c_h;
    }
    out.mu_self = catalog.mu(id, id);
    return out;
  }
  fail(ErrorKind::kDomain, "pattern has no vertex within distance " +
                               std::to_string(catalog.q()) +
                               " of all other vertices");
}

Rational pattern_count_from_discs(const TypeCatalog& catalog,
                                  const PatternRooting& rooting,
                                  const std::vector<Rational>& counts) {
  if (counts.size() != catalog.size()) {
    fail(ErrorKind::kUsage, "count vector does not match the catalog");
  }
  Rational total = 0;
  const int a = rooting.type_id;
  if (a == 0) {
    for (const auto& c : counts) total += c;
  } else {
    const auto& m = catalog.matrix();
    for (std::size_t b = 1; b < catalog.size(); ++b) {
      const BigInt& mu = m.m[a - 1][b - 1];
      if (mu != 0 && counts[b] != 0) total += Rational(mu) * counts[b];
    }
  }
  return total / (Rational(rooting.mu_self) * Rational(rooting.c_h));
}

}  // namespace qdisc
