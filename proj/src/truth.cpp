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

#include "qdisc/truth.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "qdisc/errors.hpp"

namespace qdisc {

std::vector<std::uint64_t> count_indegree(const Digraph& g) {
  std::vector<std::uint64_t> hist(g.d() + 1, 0);
  for (Vertex v = 0; v < g.n(); ++v) ++hist[g.in_degree(v)];
  return hist;
}

std::vector<std::uint64_t> count_disc_types(const Digraph& g,
                                            const TypeCatalog& catalog) {
  if (g.d() > catalog.d()) {
    fail(ErrorKind::kDomain, "graph degree bound exceeds the catalog's");
  }
  std::vector<std::uint64_t> cnt(catalog.size(), 0);
  std::unordered_map<std::string, int> memo;
  for (Vertex v = 0; v < g.n(); ++v) {
    RootedGraph local = to_rooted(bfs_disc(g, v, catalog.q()));
    auto key = encode(local);
    auto it = memo.find(key);
    if (it == memo.end()) {
      int id = catalog.classify(local);
      if (id < 0) {
        fail(ErrorKind::kCatalogIncomplete,
             "disc of vertex " + std::to_string(v) + " (" +
                 edges_to_string(local) + ") is not in the catalog");
      }
      it = memo.emplace(std::move(key), id).first;
    }
    ++cnt[it->second];
  }
  return cnt;
}

namespace {

// Injective maps of pattern vertices (in BFS order) onto host vertices that
// carry every pattern edge.
class Embedder {
 public:
  Embedder(const Digraph& g, const RootedGraph& h) : g_(g), h_(h) {
    const auto dist = h.distances();
    order_.resize(h.num_vertices);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](unsigned a, unsigned b) { return dist[a] < dist[b]; });
    position_.assign(h.num_vertices, 0);
    for (unsigned i = 0; i < order_.size(); ++i) position_[order_[i]] = i;
    // Each non-first pattern vertex is reached through an earlier neighbour.
    anchor_.assign(h.num_vertices, {0, false});
    for (unsigned i = 1; i < order_.size(); ++i) {
      const unsigned x = order_[i];
      bool set = false;
      for (const auto& [u, v] : h.edges) {
        if (v == x && position_[u] < i && !set) {
          anchor_[i] = {u, true};  // anchor -> x: x is an out-neighbour
          set = true;
        } else if (u == x && position_[v] < i && !set) {
          anchor_[i] = {v, false};  // x -> anchor: x is an in-neighbour
          set = true;
        }
      }
    }
    image_.assign(h.num_vertices, kBottom);
  }

  std::uint64_t count() {
    std::uint64_t total = 0;
    for (Vertex v = 0; v < g_.n(); ++v) {
      image_[order_[0]] = v;
      total += extend(1);
    }
    return total;
  }

 private:
  bool consistent(unsigned i) const {
    const unsigned x = order_[i];
    const Vertex gx = image_[x];
    for (unsigned j = 0; j < i; ++j) {
      if (image_[order_[j]] == gx) return false;
    }
    for (const auto& [u, v] : h_.edges) {
      if (position_[u] > i || position_[v] > i) continue;
      if (u != x && v != x) continue;
      if (!g_.has_edge(image_[u], image_[v])) return false;
    }
    return true;
  }

  std::uint64_t extend(unsigned i) {
    if (i == order_.size()) return 1;
    const auto [anchor, forward] = anchor_[i];
    const Vertex ga = image_[anchor];
    auto nbrs = forward ? g_.out(ga) : g_.in(ga);
    std::uint64_t total = 0;
    for (Vertex w : nbrs) {
      image_[order_[i]] = w;
      if (consistent(i)) total += extend(i + 1);
    }
    image_[order_[i]] = kBottom;
    return total;
  }

  const Digraph& g_;
  const RootedGraph& h_;
  std::vector<unsigned> order_;
  std::vector<unsigned> position_;
  std::vector<std::pair<unsigned, bool>> anchor_;
  std::vector<Vertex> image_;
};

std::uint64_t unrooted_automorphism_count(const RootedGraph& h) {
  std::vector<std::uint8_t> perm(h.num_vertices);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    if (h.relabel(perm) == h) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

std::uint64_t count_subgraph(const Digraph& g, const RootedGraph& h) {
  if (h.num_vertices > kMaxPatternVertices) {
    fail(ErrorKind::kGuard, "pattern exceeds " +
                                std::to_string(kMaxPatternVertices) +
                                " vertices");
  }
  if (h.radius() < 0) fail(ErrorKind::kDomain, "pattern must be connected");
  Embedder embedder(g, h);
  return embedder.count() / unrooted_automorphism_count(h);
}

std::uint64_t count_disjoint_stars(const Digraph& g, unsigned k) {
  std::vector<bool> used(g.n(), false);
  std::uint64_t stars = 0;
  for (Vertex c = 0; c < g.n(); ++c) {
    if (used[c] || g.in_degree(c) < k) continue;
    std::vector<Vertex> picked;
    for (Vertex u : g.in(c)) {
      if (!used[u] && picked.size() < k) picked.push_back(u);
    }
    if (picked.size() < k) continue;
    used[c] = true;
    for (Vertex u : picked) used[u] = true;
    ++stars;
  }
  return stars;
}

bool verify_obs_identity(const Digraph& g, const TypeCatalog& catalog,
                         const RootedGraph& h) {
  const PatternRooting rooting = root_pattern(catalog, h);
  const auto cnt = count_disc_types(g, catalog);
  std::vector<Rational> counts(cnt.begin(), cnt.end());
  const Rational rhs = pattern_count_from_discs(catalog, rooting, counts);
  return rhs == Rational(count_subgraph(g, h));
}

TruthReport make_truth_report(const Digraph& g, const TypeCatalog& catalog) {
  TruthReport r;
  r.cnt = count_disc_types(g, catalog);
  r.indegree_hist = count_indegree(g);
  return r;
}

void write_truth_csv(std::ostream& os, const TypeCatalog& catalog,
                     const std::vector<std::uint64_t>& cnt) {
  os << "id,edge_count,count\n";
  for (const auto& t : catalog.types()) {
    os << t.id << ',' << t.edge_count() << ',' << cnt.at(t.id) << '\n';
  }
}

RootedGraph star_pattern(unsigned k) {
  std::vector<LocalEdge> edges;
  for (unsigned j = 1; j <= k; ++j) {
    edges.emplace_back(static_cast<std::uint8_t>(j), 0);
  }
  return RootedGraph(k + 1, std::move(edges));
}

}  // namespace qdisc
