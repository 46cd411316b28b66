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

#ifndef QDISC_CATALOG_HPP_
#define QDISC_CATALOG_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qdisc/numeric.hpp"
#include "qdisc/rooted_graph.hpp"

namespace qdisc {

struct DiscType {
  int id = 0;
  RootedGraph canon;
  // The fixed edge ordering, in canonical labels.
  std::vector<LocalEdge> edge_order;
  // prefix_ids[j] is the type spanned by the root and the first j edges.
  std::vector<int> prefix_ids;

  unsigned edge_count() const { return canon.edge_count(); }
  unsigned vertex_count() const { return canon.num_vertices; }
  int parent() const {
    return prefix_ids.size() >= 2 ? prefix_ids[prefix_ids.size() - 2] : -1;
  }
  unsigned root_in_degree() const { return canon.in_degree(0); }
};

struct CorrectionMatrix {
  // Indexed by dense-star position p = id - 1 for catalog ids 1..D.
  std::vector<std::vector<BigInt>> m;
  std::vector<std::vector<Rational>> inverse;
  Rational inverse_one_norm;
  // above[a]: catalog ids b with mu(a, b) > 0, for catalog ids a >= 1.
  std::vector<std::vector<int>> above;

  std::size_t size() const { return m.size(); }
};

// Down-closed admission predicate on canonical rooted graphs.
using TypeFilter = std::function<bool(const RootedGraph&)>;

struct CatalogOptions {
  // Refuse to enumerate more types than this. 0 means the default, which
  // the QDISC_ENUM_CAP environment variable overrides.
  std::size_t cap = 0;
  TypeFilter filter;
  std::string filter_name;
};

inline constexpr std::size_t kDefaultEnumCap = 5000;

std::size_t effective_enum_cap(std::size_t requested);

// s_{d,q} = 1 + 2d + ... + (2d)^q and m_{d,q} = 2d * s_{d,q}.
std::uint64_t disc_vertex_bound(unsigned d, unsigned q);
std::uint64_t disc_edge_bound(unsigned d, unsigned q);

class TypeCatalog {
 public:
  unsigned d() const { return d_; }
  unsigned q() const { return q_; }
  // Closed-form bounds.
  unsigned m() const { return m_; }
  unsigned s() const { return s_; }
  unsigned max_edges() const { return max_edges_; }
  const std::string& family() const { return family_; }

  // Number of types including the single-vertex type.
  std::size_t size() const { return types_.size(); }
  // D: number of nonempty types.
  std::size_t nonempty() const { return types_.size() - 1; }
  const DiscType& type(int id) const { return types_.at(id); }
  const std::vector<DiscType>& types() const { return types_; }
  const std::vector<int>& with_edges(unsigned i) const;

  // Catalog id of a canonical graph, or -1.
  int find_canonical(const RootedGraph& canon) const;
  // Canonicalizes first.
  int classify(const RootedGraph& g) const;
  bool admits(const RootedGraph& g) const;

  // mu(a, b) = |W_{a,b}|, from the cached matrix when available.
  BigInt mu(int a, int b) const;
  bool precedes(int a, int b) const { return mu(a, b) > 0; }
  // Sum over b of mu(a, b).
  BigInt mu_total(int a) const;

  // Exact correction matrix over the nonempty types, built on first use.
  const CorrectionMatrix& matrix() const;

  // Catalog id of the type spanned by the root and an edge subset of type
  // `host`, or -1 if that subgraph is not an admitted type.
  int subset_type(int host, std::uint64_t mask) const;
  // subset_type for every mask of host's edges.
  std::vector<int> subset_types(int host) const;

  // Column b of mu: entry a is mu(a, b), for all catalog ids a.
  std::vector<BigInt> mu_column(int host) const;

 private:
  friend TypeCatalog enumerate_catalog(unsigned, unsigned,
                                       const CatalogOptions&);

  unsigned d_ = 1, q_ = 1, m_ = 0, s_ = 0, max_edges_ = 0;
  std::string family_ = "all";
  TypeFilter filter_;
  std::vector<DiscType> types_;
  std::vector<std::vector<int>> by_edges_;
  std::unordered_map<std::string, int> index_;

  struct Cache {
    std::mutex mu;
    std::unique_ptr<CorrectionMatrix> matrix;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

TypeCatalog enumerate_catalog(unsigned d, unsigned q,
                              const CatalogOptions& options = {});

// Types whose root has only in-edges, each from a distinct leaf.
TypeCatalog enumerate_star_catalog(unsigned d, std::size_t cap = 0);

// Tuples W = (root, e1..ej) inside a host type, with edges named by their
// index in the host's canonical edge list.
using EdgeTuple = std::vector<std::uint8_t>;

struct TupleClassTable {
  int gamma = 0;
  int host = 0;
  std::vector<std::vector<EdgeTuple>> levels;
  // Class index of each tuple, per level.
  std::vector<std::vector<int>> class_of;
  std::vector<std::vector<std::size_t>> class_size;
  // kappa[j][c1][c2]: edges extending a level-(j-1) tuple of class c1 into
  // class c2 of level j, for j >= 1.
  std::vector<std::vector<std::vector<std::uint64_t>>> kappa;
  // True if every representative of each class gave the same counts.
  bool kappa_well_defined = true;
  std::vector<Permutation> host_automorphisms;

  std::size_t mu() const { return levels.empty() ? 0 : levels.back().size(); }
};

// Throws kDomain unless gamma precedes host.
TupleClassTable build_tuple_table(const TypeCatalog& catalog, int gamma,
                                  int host);

// Sum over tuple chains of prod kappa / |class|, exactly.
Rational factor_identity_sum(const TupleClassTable& table);
bool verify_factor_identity(const TupleClassTable& table);

inline const CorrectionMatrix& build_matrix(const TypeCatalog& catalog) {
  return catalog.matrix();
}

// Solves M y = x by back-substitution; x and y are indexed like the matrix.
std::vector<Rational> solve_upper(const CorrectionMatrix& m,
                                  const std::vector<Rational>& x);

// Root choice for a subgraph pattern: a vertex within distance q of every
// other vertex, the catalog type it induces, and the number of vertices
// equivalent to it under the pattern's unrooted automorphisms.
struct PatternRooting {
  unsigned root = 0;
  int type_id = -1;
  unsigned c_h = 1;
  BigInt mu_self = 1;
};

// Prefers the pattern's own root 0, else the smallest valid label. Throws
// kDomain if no vertex qualifies or the rooted pattern is not a type.
PatternRooting root_pattern(const TypeCatalog& catalog, const RootedGraph& h);

// (1/c_H) * sum over b of mu(type, b) / mu(type, type) * counts[b], with
// counts indexed by catalog id.
Rational pattern_count_from_discs(const TypeCatalog& catalog,
                                  const PatternRooting& rooting,
                                  const std::vector<Rational>& counts);

// "id | edge_count | canonical_edges | prefix_chain" per line.
void dump_catalog(std::ostream& os, const TypeCatalog& catalog);
// Integer CSV of M.
void dump_matrix(std::ostream& os, const CorrectionMatrix& m);

}  // namespace qdisc

#endif  // QDISC_CATALOG_HPP_
