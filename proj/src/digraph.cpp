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

#include "qdisc/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "qdisc/errors.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {

namespace {

constexpr unsigned kMaxDegree = 64;

void check_vertex(const Digraph& g, Vertex v) {
  if (v >= g.n()) {
    fail(ErrorKind::kUsage, "vertex " + std::to_string(v) +
                                " out of range (n=" + std::to_string(g.n()) +
                                ")");
  }
}

void check_slot(const Digraph& g, unsigned i) {
  if (i < 1 || i > g.d()) {
    fail(ErrorKind::kUsage, "slot " + std::to_string(i) +
                                " out of range [1," + std::to_string(g.d()) +
                                "]");
  }
}

}  // namespace

Digraph::Digraph(std::size_t n, unsigned d) : n_(n), d_(d) {
  if (d < 1 || d > kMaxDegree) {
    fail(ErrorKind::kConstruction,
         "degree bound must lie in [1," + std::to_string(kMaxDegree) + "]");
  }
  if (n >= kBottom) fail(ErrorKind::kConstruction, "too many vertices");
  out_.assign(n * d, kBottom);
  in_.assign(n * d, kBottom);
  out_deg_.assign(n, 0);
  in_deg_.assign(n, 0);
}

Digraph Digraph::from_edges(std::size_t n, unsigned d,
                            const std::vector<Edge>& edges) {
  Digraph g(n, d);
  g.edges_.reserve(edges.size());
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Digraph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) {
    fail(ErrorKind::kConstruction, "edge endpoint out of range");
  }
  if (u == v) {
    fail(ErrorKind::kConstruction,
         "self-loop at vertex " + std::to_string(u));
  }
  if (has_edge(u, v)) {
    fail(ErrorKind::kConstruction, "parallel edge " + std::to_string(u) +
                                       "->" + std::to_string(v));
  }
  if (out_deg_[u] >= d_ || in_deg_[v] >= d_) {
    fail(ErrorKind::kConstruction, "degree bound " + std::to_string(d_) +
                                       " exceeded by edge " +
                                       std::to_string(u) + "->" +
                                       std::to_string(v));
  }
  out_[std::size_t{u} * d_ + out_deg_[u]++] = v;
  in_[std::size_t{v} * d_ + in_deg_[v]++] = u;
  edges_.emplace_back(u, v);
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  for (Vertex w : out(u)) {
    if (w == v) return true;
  }
  return false;
}

bool operator==(const Digraph& a, const Digraph& b) {
  return a.n_ == b.n_ && a.d_ == b.d_ && a.out_ == b.out_ && a.in_ == b.in_ &&
         a.out_deg_ == b.out_deg_ && a.in_deg_ == b.in_deg_;
}

Vertex out_query(const Digraph& g, QueryLedger& ledger, Vertex v, unsigned i) {
  check_vertex(g, v);
  check_slot(g, i);
  ++ledger.classical_out;
  return g.head(v, i);
}

Vertex in_query(const Digraph& g, QueryLedger& ledger, Vertex v, unsigned i) {
  check_vertex(g, v);
  check_slot(g, i);
  ++ledger.classical_in;
  return g.tail_of_in(v, i);
}

Vertex UnidirectionalOracle::out_query(Vertex v, unsigned slot) {
  if (v >= n()) fail(ErrorKind::kUsage, "vertex out of range");
  if (slot < 1 || slot > d()) fail(ErrorKind::kUsage, "slot out of range");
  ++ledger_.classical_out;
  return evaluate(v, slot);
}

namespace {

template <typename OutFn, typename InFn>
RootedSubgraph bfs_disc_impl(std::size_t n, unsigned d, Vertex v, unsigned q,
                             OutFn&& out_at, InFn&& in_at) {
  if (v >= n) fail(ErrorKind::kUsage, "vertex out of range");
  RootedSubgraph disc;
  disc.root = v;
  std::unordered_map<Vertex, unsigned> dist;
  dist[v] = 0;
  disc.vertices.push_back(v);
  std::deque<Vertex> frontier{v};
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop_front();
    unsigned du = dist[u];
    if (du == q) continue;
    auto visit = [&](Vertex w) {
      if (w == kBottom) return;
      if (dist.emplace(w, du + 1).second) {
        disc.vertices.push_back(w);
        frontier.push_back(w);
      }
    };
    for (unsigned s = 1; s <= d; ++s) visit(out_at(u, s));
    for (unsigned s = 1; s <= d; ++s) visit(in_at(u, s));
  }
  // Induced edges: every out-edge between two disc vertices.
  for (Vertex u : disc.vertices) {
    for (unsigned s = 1; s <= d; ++s) {
      Vertex w = out_at(u, s);
      if (w != kBottom && dist.count(w)) disc.edges.emplace_back(u, w);
    }
  }
  return disc;
}

}  // namespace

RootedSubgraph bfs_disc(const Digraph& g, Vertex v, unsigned q) {
  return bfs_disc_impl(
      g.n(), g.d(), v, q, [&](Vertex u, unsigned s) { return g.head(u, s); },
      [&](Vertex u, unsigned s) { return g.tail_of_in(u, s); });
}

RootedSubgraph bfs_disc(BidirectionalOracle& oracle, Vertex v, unsigned q) {
  // Out-slots are cached so the induced-edge pass does not query twice.
  std::unordered_map<std::uint64_t, Vertex> seen;
  auto out_at = [&](Vertex u, unsigned s) {
    std::uint64_t key = (std::uint64_t{u} << 8) | s;
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    Vertex w = oracle.out_query(u, s);
    seen.emplace(key, w);
    return w;
  };
  auto in_at = [&](Vertex u, unsigned s) { return oracle.in_query(u, s); };
  return bfs_disc_impl(oracle.n(), oracle.d(), v, q, out_at, in_at);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(ErrorKind::kUsage, "bad value for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(ErrorKind::kUsage, "bad value for " + key + ": '" + v + "'");
  }
}

// Builds a graph from an edge list after relabelling vertices with a random
// permutation and shuffling the insertion order.
Digraph scramble(std::size_t n, unsigned d, std::vector<Edge> edges, Rng& rng) {
  std::vector<Vertex> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
  rng.shuffle(perm);
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  rng.shuffle(edges);
  return Digraph::from_edges(n, d, edges);
}

Digraph uniform_bounded(std::size_t n, unsigned d, std::size_t target,
                        Rng& rng) {
  if (target == 0) target = n * d / 2;
  if (n < 2) return Digraph(n, d);
  std::vector<Edge> edges;
  std::vector<std::uint8_t> outd(n, 0), ind(n, 0);
  std::unordered_map<std::uint64_t, bool> present;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 20 * target + 100;
  while (edges.size() < target && attempts++ < max_attempts) {
    auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n));
    if (u == v || outd[u] >= d || ind[v] >= d) continue;
    std::uint64_t key = (std::uint64_t{u} << 32) | v;
    if (!present.emplace(key, true).second) continue;
    ++outd[u];
    ++ind[v];
    edges.emplace_back(u, v);
  }
  return Digraph::from_edges(n, d, edges);
}

Digraph planted_stars(std::size_t n, unsigned d, unsigned k,
                      std::size_t count, Rng& rng) {
  if (k < 1 || k > d) {
    fail(ErrorKind::kConstruction, "planted-stars needs 1 <= k <= d");
  }
  if (count * (k + 1) > n) {
    fail(ErrorKind::kConstruction,
         "planted-stars infeasible: count*(k+1) = " +
             std::to_string(count * (k + 1)) + " > n = " + std::to_string(n));
  }
  std::vector<Edge> edges;
  Vertex next = 0;
  for (std::size_t c = 0; c < count; ++c) {
    Vertex center = next++;
    for (unsigned j = 0; j < k; ++j) edges.emplace_back(next++, center);
  }
  return scramble(n, d, std::move(edges), rng);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

Digraph disc_rich(std::size_t n, unsigned d, double delta,
                  const std::string& targets_text, Rng& rng) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    fail(ErrorKind::kConstruction, "disc-rich needs delta in (0,1]");
  }
  std::string text =
      targets_text.empty() ? (d >= 2 ? "instar" : "cycle2+path2") : targets_text;
  const auto per = static_cast<std::size_t>(std::ceil(delta * n - 1e-9));
  std::vector<Edge> edges;
  Vertex next = 0;
  auto need = [&](std::size_t extra) {
    if (next + extra > n) {
      fail(ErrorKind::kConstruction,
           "disc-rich infeasible: targets '" + text + "' at delta " +
               std::to_string(delta) + " need more than n = " +
               std::to_string(n) + " vertices");
    }
  };
  for (const auto& t : split(text, '+')) {
    if (t == "instar") {
      // per centres of each in-degree k in [d], fed round-robin from a pool of
      // shared sources, each used at most d times.
      std::size_t slots = 0;
      for (unsigned k = 1; k <= d; ++k) slots += k * per;
      std::size_t pool = (slots + d - 1) / d;
      pool = std::max<std::size_t>(pool, d);
      need(d * per + pool);
      Vertex first_center = next;
      next += static_cast<Vertex>(d * per);
      Vertex first_source = next;
      next += static_cast<Vertex>(pool);
      std::size_t cursor = 0;
      Vertex center = first_center;
      for (unsigned k = 1; k <= d; ++k) {
        for (std::size_t c = 0; c < per; ++c, ++center) {
          for (unsigned j = 0; j < k; ++j) {
            edges.emplace_back(first_source + cursor % pool, center);
            ++cursor;
          }
        }
      }
    } else if (t == "edge") {
      need(2 * per);
      for (std::size_t c = 0; c < per; ++c, next += 2) {
        edges.emplace_back(next, next + 1);
      }
    } else if (t == "cycle2") {
      if (d < 1) fail(ErrorKind::kConstruction, "cycle2 needs d >= 1");
      std::size_t pairs = (per + 1) / 2;
      need(2 * pairs);
      for (std::size_t c = 0; c < pairs; ++c, next += 2) {
        edges.emplace_back(next, next + 1);
        edges.emplace_back(next + 1, next);
      }
    } else if (t == "path2") {
      need(3 * per);
      for (std::size_t c = 0; c < per; ++c, next += 3) {
        edges.emplace_back(next, next + 1);
        edges.emplace_back(next + 1, next + 2);
      }
    } else if (t == "cycle3") {
      std::size_t triples = (per + 2) / 3;
      need(3 * triples);
      for (std::size_t c = 0; c < triples; ++c, next += 3) {
        edges.emplace_back(next, next + 1);
        edges.emplace_back(next + 1, next + 2);
        edges.emplace_back(next + 2, next);
      }
    } else {
      fail(ErrorKind::kUsage, "unknown disc-rich target '" + t + "'");
    }
  }
  return scramble(n, d, std::move(edges), rng);
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  GeneratorSpec spec;
  auto colon = text.find(':');
  std::string kind = trim(text.substr(0, colon));
  if (kind == "uniform-bounded") {
    spec.kind = Kind::kUniformBounded;
  } else if (kind == "planted-stars") {
    spec.kind = Kind::kPlantedStars;
  } else if (kind == "disc-rich") {
    spec.kind = Kind::kDiscRich;
  } else if (kind == "reduction") {
    spec.kind = Kind::kReduction;
  } else {
    fail(ErrorKind::kUsage, "unknown generator kind '" + kind + "'");
  }
  if (colon == std::string::npos) return spec;
  for (const auto& item : split(text.substr(colon + 1), ',')) {
    auto eq = item.find('=');
    std::string key = trim(item.substr(0, eq));
    std::string val = eq == std::string::npos ? "" : trim(item.substr(eq + 1));
    if (key == "edges") {
      spec.edges = parse_uint(key, val);
    } else if (key == "k") {
      spec.k = static_cast<unsigned>(parse_uint(key, val));
    } else if (key == "count") {
      spec.count = parse_uint(key, val);
    } else if (key == "delta") {
      spec.delta = parse_double(key, val);
    } else if (key == "targets") {
      spec.targets = val;
    } else if (key == "free" && val.empty()) {
      spec.far = false;
    } else if (key == "far" && val.empty()) {
      spec.far = true;
    } else if (key == "epsilon" || key == "eps") {
      spec.epsilon = parse_double(key, val);
    } else if (key == "c") {
      spec.c = static_cast<unsigned>(parse_uint(key, val));
    } else {
      fail(ErrorKind::kUsage, "unknown generator option '" + key + "'");
    }
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::kUniformBounded:
      os << "uniform-bounded:edges=" << edges;
      break;
    case Kind::kPlantedStars:
      os << "planted-stars:k=" << k << ",count=" << count;
      break;
    case Kind::kDiscRich:
      os << "disc-rich:delta=" << delta;
      if (!targets.empty()) os << ",targets=" << targets;
      break;
    case Kind::kReduction:
      os << "reduction:" << (far ? "far" : "free") << ",k=" << k
         << ",epsilon=" << epsilon << ",c=" << c;
      break;
  }
  return os.str();
}

Digraph generate(const GeneratorSpec& spec, std::size_t n, unsigned d,
                 std::uint64_t seed) {
  Rng rng(seed);
  switch (spec.kind) {
    case GeneratorSpec::Kind::kUniformBounded:
      return uniform_bounded(n, d, spec.edges, rng);
    case GeneratorSpec::Kind::kPlantedStars:
      return planted_stars(n, d, spec.k, spec.count, rng);
    case GeneratorSpec::Kind::kDiscRich:
      return disc_rich(n, d, spec.delta, spec.targets, rng);
    case GeneratorSpec::Kind::kReduction: {
      if (spec.c < 1 || n % (spec.c + 1) != 0) {
        fail(ErrorKind::kConstruction,
             "reduction instance needs n divisible by c+1");
      }
      std::size_t N = n / (spec.c + 1);
      std::size_t R = spec.c * N;
      auto f = make_reduction_table(spec.far, N, R, spec.k, spec.epsilon,
                                    rng.next());
      return graph_from_table(f, R, spec.k);
    }
  }
  fail(ErrorKind::kUsage, "unhandled generator kind");
}

std::vector<Vertex> make_reduction_table(bool far, std::size_t N,
                                         std::size_t R, unsigned k,
                                         double epsilon, std::uint64_t seed) {
  if (k < 1) fail(ErrorKind::kConstruction, "k must be positive");
  if (R == 0 && N > 0) fail(ErrorKind::kConstruction, "R must be positive");
  Rng rng(seed);
  std::size_t stars = 0;
  if (far) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
      fail(ErrorKind::kConstruction, "far kind needs epsilon in (0,1]");
    }
    stars = static_cast<std::size_t>(std::ceil(epsilon * N - 1e-9));
    if (stars * k > N || stars > R) {
      fail(ErrorKind::kConstruction,
           "far kind infeasible: ceil(epsilon*N)*k exceeds N");
    }
  }
  std::size_t rest = N - stars * k;
  if (rest > (k - 1) * (R - stars)) {
    fail(ErrorKind::kConstruction,
         "reduction infeasible: not enough targets with fewer than k "
         "preimages");
  }
  std::vector<Vertex> values(R);
  for (std::size_t r = 0; r < R; ++r) values[r] = static_cast<Vertex>(r);
  rng.shuffle(values);
  // values[0..stars) get exactly k preimages; the rest share k-1 slots each.
  std::vector<Vertex> images;
  images.reserve(N);
  for (std::size_t s = 0; s < stars; ++s) {
    for (unsigned j = 0; j < k; ++j) images.push_back(values[s]);
  }
  std::vector<Vertex> slots;
  slots.reserve((k - 1) * (R - stars));
  for (std::size_t r = stars; r < R; ++r) {
    for (unsigned j = 0; j + 1 < k; ++j) slots.push_back(values[r]);
  }
  rng.shuffle(slots);
  images.insert(images.end(), slots.begin(), slots.begin() + rest);
  rng.shuffle(images);
  return images;
}

Digraph graph_from_table(const std::vector<Vertex>& f, std::size_t R,
                         unsigned k) {
  const std::size_t N = f.size();
  std::vector<Edge> edges;
  edges.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (f[i] >= R) fail(ErrorKind::kConstruction, "table value out of range");
    edges.emplace_back(static_cast<Vertex>(i),
                       static_cast<Vertex>(N + f[i]));
  }
  return Digraph::from_edges(N + R, std::max(1u, k), edges);
}

// ---------------------------------------------------------------------------
// Text format

void write_graph(std::ostream& os, const Digraph& g) {
  os << g.n() << ' ' << g.d() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Digraph read_graph(std::istream& is) {
  std::size_t n = 0;
  unsigned d = 0;
  if (!(is >> n >> d)) fail(ErrorKind::kIo, "missing 'n d' header");
  std::vector<Edge> edges;
  long long u = 0, v = 0;
  while (is >> u >> v) {
    if (u < 0 || v < 0) fail(ErrorKind::kIo, "negative vertex id");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!is.eof()) fail(ErrorKind::kIo, "malformed edge line");
  return Digraph::from_edges(n, d, edges);
}

void save_graph(const std::string& path, const Digraph& g) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::kIo, "cannot open " + path);
  write_graph(os, g);
  if (!os) fail(ErrorKind::kIo, "write failed: " + path);
}

Digraph load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::kIo, "cannot open " + path);
  return read_graph(is);
}

}  // namespace qdisc
