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

#include "qdisc/rooted_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qdisc/errors.hpp"

namespace qdisc {

RootedGraph::RootedGraph(unsigned nv, std::vector<LocalEdge> es)
    : num_vertices(nv), edges(std::move(es)) {
  if (nv < 1 || nv > kMaxLocalVertices) {
    fail(ErrorKind::kGuard, "rooted graph must have 1.." +
                                std::to_string(kMaxLocalVertices) +
                                " vertices");
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u >= nv || v >= nv) fail(ErrorKind::kDomain, "edge endpoint out of range");
    if (u == v) fail(ErrorKind::kDomain, "self-loop in rooted graph");
    if (i > 0 && edges[i - 1] == edges[i]) {
      fail(ErrorKind::kDomain, "parallel edge in rooted graph");
    }
  }
}

bool RootedGraph::has_edge(unsigned u, unsigned v) const {
  return std::binary_search(edges.begin(), edges.end(),
                            LocalEdge(static_cast<std::uint8_t>(u),
                                      static_cast<std::uint8_t>(v)));
}

std::vector<std::uint16_t> RootedGraph::rows() const {
  std::vector<std::uint16_t> r(num_vertices, 0);
  for (const auto& [u, v] : edges) r[u] |= static_cast<std::uint16_t>(1u << v);
  return r;
}

unsigned RootedGraph::in_degree(unsigned v) const {
  unsigned c = 0;
  for (const auto& e : edges) c += e.second == v;
  return c;
}

unsigned RootedGraph::out_degree(unsigned v) const {
  unsigned c = 0;
  for (const auto& e : edges) c += e.first == v;
  return c;
}

unsigned RootedGraph::max_degree() const {
  std::vector<unsigned> in(num_vertices, 0), out(num_vertices, 0);
  for (const auto& [u, v] : edges) {
    ++out[u];
    ++in[v];
  }
  unsigned m = 0;
  for (unsigned i = 0; i < num_vertices; ++i) m = std::max({m, in[i], out[i]});
  return m;
}

std::vector<int> RootedGraph::distances() const {
  std::vector<std::uint16_t> nb(num_vertices, 0);
  for (const auto& [u, v] : edges) {
    nb[u] |= static_cast<std::uint16_t>(1u << v);
    nb[v] |= static_cast<std::uint16_t>(1u << u);
  }
  std::vector<int> dist(num_vertices, -1);
  dist[0] = 0;
  std::deque<unsigned> frontier{0};
  while (!frontier.empty()) {
    unsigned u = frontier.front();
    frontier.pop_front();
    for (unsigned w = 0; w < num_vertices; ++w) {
      if ((nb[u] >> w & 1u) && dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

int RootedGraph::radius() const {
  int r = 0;
  for (int x : distances()) {
    if (x < 0) return -1;
    r = std::max(r, x);
  }
  return r;
}

RootedGraph RootedGraph::relabel(const Permutation& perm) const {
  RootedGraph g;
  g.num_vertices = num_vertices;
  g.edges.reserve(edges.size());
  for (const auto& [u, v] : edges) g.edges.emplace_back(perm[u], perm[v]);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::string encode(const RootedGraph& g) {
  std::string key;
  key.reserve(1 + 2 * g.edges.size());
  key.push_back(static_cast<char>(g.num_vertices));
  for (const auto& [u, v] : g.edges) {
    key.push_back(static_cast<char>(u));
    key.push_back(static_cast<char>(v));
  }
  return key;
}

namespace {

// Calls fn(perm) for every permutation of 1..n-1 with perm[0] = 0, in
// lexicographic order. Stops early when fn returns false.
template <typename Fn>
void for_each_rooted_perm(unsigned n, Fn&& fn) {
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (!fn(perm)) return;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

std::vector<std::uint16_t> permuted_rows(const std::vector<std::uint16_t>& rows,
                                         const Permutation& perm) {
  std::vector<std::uint16_t> out(rows.size(), 0);
  for (unsigned u = 0; u < rows.size(); ++u) {
    std::uint16_t r = rows[u], mapped = 0;
    while (r) {
      unsigned v = static_cast<unsigned>(__builtin_ctz(r));
      r &= static_cast<std::uint16_t>(r - 1);
      mapped |= static_cast<std::uint16_t>(1u << perm[v]);
    }
    out[perm[u]] = mapped;
  }
  return out;
}

}  // namespace

RootedGraph canonicalize(const RootedGraph& g, Permutation* perm_out) {
  const auto rows = g.rows();
  std::vector<std::uint16_t> best;
  Permutation best_perm;
  for_each_rooted_perm(g.num_vertices, [&](const Permutation& perm) {
    auto cand = permuted_rows(rows, perm);
    if (best.empty() || cand < best) {
      best = std::move(cand);
      best_perm = perm;
    }
    return true;
  });
  if (perm_out) *perm_out = best_perm;
  return g.relabel(best_perm);
}

bool isomorphic(const RootedGraph& a, const RootedGraph& b) {
  if (a.num_vertices != b.num_vertices || a.edges.size() != b.edges.size()) {
    return false;
  }
  return canonicalize(a) == canonicalize(b);
}

std::vector<Permutation> automorphisms(const RootedGraph& g) {
  std::vector<Permutation> autos;
  const auto rows = g.rows();
  for_each_rooted_perm(g.num_vertices, [&](const Permutation& perm) {
    if (permuted_rows(rows, perm) == rows) autos.push_back(perm);
    return true;
  });
  return autos;
}

Permutation smallest_isomorphism(const RootedGraph& a, const RootedGraph& b) {
  if (a.num_vertices != b.num_vertices || a.edges.size() != b.edges.size()) {
    return {};
  }
  const auto ra = a.rows();
  const auto rb = b.rows();
  Permutation found;
  for_each_rooted_perm(a.num_vertices, [&](const Permutation& perm) {
    if (permuted_rows(ra, perm) == rb) {
      found = perm;
      return false;
    }
    return true;
  });
  return found;
}

RootedGraph reroot(const RootedGraph& g, unsigned u) {
  Permutation perm(g.num_vertices);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[u]);
  return g.relabel(perm);
}

RootedGraph to_rooted(const RootedSubgraph& disc) {
  if (disc.vertices.size() > kMaxLocalVertices) {
    fail(ErrorKind::kGuard, "disc has more than " +
                                std::to_string(kMaxLocalVertices) +
                                " vertices");
  }
  std::unordered_map<Vertex, std::uint8_t> local;
  for (std::size_t i = 0; i < disc.vertices.size(); ++i) {
    local.emplace(disc.vertices[i], static_cast<std::uint8_t>(i));
  }
  std::vector<LocalEdge> edges;
  edges.reserve(disc.edges.size());
  for (const auto& [u, v] : disc.edges) edges.emplace_back(local.at(u), local.at(v));
  return RootedGraph(static_cast<unsigned>(disc.vertices.size()),
                     std::move(edges));
}

std::string edges_to_string(const std::vector<LocalEdge>& edges) {
  if (edges.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) os << ',';
    os << int{edges[i].first} << '>' << int{edges[i].second};
  }
  return os.str();
}

std::string edges_to_string(const RootedGraph& g) {
  return edges_to_string(g.edges);
}

}  // namespace qdisc
