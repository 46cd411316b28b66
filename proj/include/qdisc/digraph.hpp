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

#ifndef QDISC_DIGRAPH_HPP_
#define QDISC_DIGRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdisc/numeric.hpp"

namespace qdisc {

using Vertex = std::uint32_t;
inline constexpr Vertex kBottom = std::numeric_limits<Vertex>::max();

using Edge = std::pair<Vertex, Vertex>;

// An edge named by its tail and 1-based out-slot.
struct EdgeRef {
  Vertex tail = 0;
  unsigned slot = 1;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

// Bounded-degree simple digraph. Immutable once built; adjacency slots keep
// insertion order.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t n, unsigned d);

  // Throws kConstruction on self-loops, parallel edges or degree overflow.
  static Digraph from_edges(std::size_t n, unsigned d,
                            const std::vector<Edge>& edges);

  std::size_t n() const { return n_; }
  unsigned d() const { return d_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Vertex> out(Vertex v) const {
    return {out_.data() + std::size_t{v} * d_, out_deg_[v]};
  }
  std::span<const Vertex> in(Vertex v) const {
    return {in_.data() + std::size_t{v} * d_, in_deg_[v]};
  }
  unsigned out_degree(Vertex v) const { return out_deg_[v]; }
  unsigned in_degree(Vertex v) const { return in_deg_[v]; }

  // Head of the slot-th out-edge, or kBottom. No range checks.
  Vertex head(Vertex v, unsigned slot) const {
    return slot <= out_deg_[v] ? out_[std::size_t{v} * d_ + slot - 1]
                               : kBottom;
  }
  Vertex tail_of_in(Vertex v, unsigned slot) const {
    return slot <= in_deg_[v] ? in_[std::size_t{v} * d_ + slot - 1] : kBottom;
  }

  bool has_edge(Vertex u, Vertex v) const;

  // Edges in insertion order.
  const std::vector<Edge>& edges() const { return edges_; }

  friend bool operator==(const Digraph& a, const Digraph& b);

 private:
  void add_edge(Vertex u, Vertex v);

  std::size_t n_ = 0;
  unsigned d_ = 1;
  std::vector<Vertex> out_;
  std::vector<Vertex> in_;
  std::vector<std::uint8_t> out_deg_;
  std::vector<std::uint8_t> in_deg_;
  std::vector<Edge> edges_;
};

struct QueryLedger {
  std::uint64_t classical_out = 0;
  std::uint64_t classical_in = 0;
  Real quantum_cost = 0;
};

// Charged queries on a concrete graph.
Vertex out_query(const Digraph& g, QueryLedger& ledger, Vertex v, unsigned i);
Vertex in_query(const Digraph& g, QueryLedger& ledger, Vertex v, unsigned i);

// The out-neighbour capability handed to quantum-model estimators. There is
// deliberately no in-neighbour access on this interface.
class UnidirectionalOracle {
 public:
  virtual ~UnidirectionalOracle() = default;
  virtual std::size_t n() const = 0;
  virtual unsigned d() const = 0;

  // Classical query: charges classical_out.
  Vertex out_query(Vertex v, unsigned slot);

  // Uncharged evaluation used only inside emulated quantum oracles, whose
  // cost is charged by the Grover and Count emulations instead.
  virtual Vertex evaluate(Vertex v, unsigned slot) const = 0;

  QueryLedger& ledger() { return ledger_; }
  const QueryLedger& ledger() const { return ledger_; }

 private:
  QueryLedger ledger_;
};

class GraphOutOracle final : public UnidirectionalOracle {
 public:
  explicit GraphOutOracle(const Digraph& g) : g_(g) {}
  std::size_t n() const override { return g_.n(); }
  unsigned d() const override { return g_.d(); }
  Vertex evaluate(Vertex v, unsigned slot) const override {
    return g_.head(v, slot);
  }

 private:
  const Digraph& g_;
};

// Both directions, for classical bidirectional testers.
class BidirectionalOracle {
 public:
  explicit BidirectionalOracle(const Digraph& g) : g_(g) {}
  std::size_t n() const { return g_.n(); }
  unsigned d() const { return g_.d(); }
  Vertex out_query(Vertex v, unsigned slot) {
    return qdisc::out_query(g_, ledger_, v, slot);
  }
  Vertex in_query(Vertex v, unsigned slot) {
    return qdisc::in_query(g_, ledger_, v, slot);
  }
  QueryLedger& ledger() { return ledger_; }

 private:
  const Digraph& g_;
  QueryLedger ledger_;
};

// A q-disc with host vertex ids. vertices[0] is the root, listed in BFS order.
struct RootedSubgraph {
  Vertex root = 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

// Truth-side traversal: reads adjacency directly, charges nothing.
RootedSubgraph bfs_disc(const Digraph& g, Vertex v, unsigned q);
// Same result, paying one classical query per adjacency slot read.
RootedSubgraph bfs_disc(BidirectionalOracle& oracle, Vertex v, unsigned q);

struct GeneratorSpec {
  enum class Kind { kUniformBounded, kPlantedStars, kDiscRich, kReduction };
  Kind kind = Kind::kUniformBounded;
  // uniform-bounded: target edge count (0 means n*d/2).
  std::size_t edges = 0;
  // planted-stars.
  unsigned k = 2;
  std::size_t count = 0;
  // disc-rich: fraction and '+'-separated targets from
  // {instar, edge, cycle2, path2, cycle3}. Empty means instar for d >= 2 and
  // cycle2+path2 for d = 1.
  double delta = 0.1;
  std::string targets;
  // reduction: free or far(epsilon), with R = c*N targets; n = (c+1)*N.
  bool far = false;
  double epsilon = 0.05;
  unsigned c = 1;

  // Parses "kind[:key=value,...]".
  static GeneratorSpec parse(const std::string& text);
  std::string to_string() const;
};

Digraph generate(const GeneratorSpec& spec, std::size_t n, unsigned d,
                 std::uint64_t seed);

// Function table f: [N] -> [R] for the occurrence-freeness reduction.
std::vector<Vertex> make_reduction_table(bool far, std::size_t N,
                                         std::size_t R, unsigned k,
                                         double epsilon, std::uint64_t seed);
// G_f on N + R vertices with edges (i, N + f(i)); degree bound max(1, k).
Digraph graph_from_table(const std::vector<Vertex>& f, std::size_t R,
                         unsigned k);

// "n d" header, then "u v" per edge in insertion order.
void write_graph(std::ostream& os, const Digraph& g);
Digraph read_graph(std::istream& is);
void save_graph(const std::string& path, const Digraph& g);
Digraph load_graph(const std::string& path);

}  // namespace qdisc

#endif  // QDISC_DIGRAPH_HPP_
