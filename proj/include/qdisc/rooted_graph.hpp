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

#ifndef QDISC_ROOTED_GRAPH_HPP_
#define QDISC_ROOTED_GRAPH_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qdisc/digraph.hpp"

namespace qdisc {

using LocalEdge = std::pair<std::uint8_t, std::uint8_t>;
using Permutation = std::vector<std::uint8_t>;

inline constexpr unsigned kMaxLocalVertices = 16;

// A small rooted digraph on vertices 0..num_vertices-1 with root 0. Edges are
// kept sorted.
struct RootedGraph {
  unsigned num_vertices = 1;
  std::vector<LocalEdge> edges;

  RootedGraph() = default;
  RootedGraph(unsigned nv, std::vector<LocalEdge> es);

  unsigned edge_count() const { return static_cast<unsigned>(edges.size()); }
  bool has_edge(unsigned u, unsigned v) const;
  std::vector<std::uint16_t> rows() const;
  unsigned in_degree(unsigned v) const;
  unsigned out_degree(unsigned v) const;
  unsigned max_degree() const;

  // Undirected distances from the root; -1 when unreachable.
  std::vector<int> distances() const;
  // Largest root distance, or -1 if some vertex is unreachable.
  int radius() const;

  // New label of vertex v is perm[v]. perm[0] must be 0 to keep the root.
  RootedGraph relabel(const Permutation& perm) const;

  friend bool operator==(const RootedGraph&, const RootedGraph&) = default;
};

// Byte key identifying a labelled graph exactly.
std::string encode(const RootedGraph& g);

// Lexicographically minimal adjacency encoding over all root-fixing
// relabelings. If perm is non-null it receives the relabeling used.
RootedGraph canonicalize(const RootedGraph& g, Permutation* perm = nullptr);

bool isomorphic(const RootedGraph& a, const RootedGraph& b);

// Root-fixing automorphisms, identity first.
std::vector<Permutation> automorphisms(const RootedGraph& g);

// Lexicographically smallest root-fixing bijection phi with phi(a) = b,
// or empty when a and b are not isomorphic.
Permutation smallest_isomorphism(const RootedGraph& a, const RootedGraph& b);

// Same graph with vertex u as the root.
RootedGraph reroot(const RootedGraph& g, unsigned u);

// Local copy of a host-graph disc; vertex i is disc.vertices[i].
RootedGraph to_rooted(const RootedSubgraph& disc);

// "0>1,1>2", or "-" for the edgeless graph.
std::string edges_to_string(const RootedGraph& g);
std::string edges_to_string(const std::vector<LocalEdge>& edges);

}  // namespace qdisc

#endif  // QDISC_ROOTED_GRAPH_HPP_
