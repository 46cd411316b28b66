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

#ifndef QDISC_TRUTH_HPP_
#define QDISC_TRUTH_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qdisc/catalog.hpp"
#include "qdisc/digraph.hpp"

namespace qdisc {

inline constexpr unsigned kMaxPatternVertices = 6;

struct TruthReport {
  // Indexed by catalog id.
  std::vector<std::uint64_t> cnt;
  // Indexed by in-degree 0..d.
  std::vector<std::uint64_t> indegree_hist;
  std::map<std::string, std::uint64_t> subgraph_counts;
};

std::vector<std::uint64_t> count_indegree(const Digraph& g);

// Throws kCatalogIncomplete if some disc is not a catalog type.
std::vector<std::uint64_t> count_disc_types(const Digraph& g,
                                            const TypeCatalog& catalog);

// Unlabelled copies of h (not necessarily induced). h must be connected.
std::uint64_t count_subgraph(const Digraph& g, const RootedGraph& h);

// Vertex-disjoint k-stars, greedily: every vertex of in-degree >= k is the
// centre of a star on its first k sources, skipping used vertices.
std::uint64_t count_disjoint_stars(const Digraph& g, unsigned k);

// Compares count_subgraph with the combination of exact disc counts.
bool verify_obs_identity(const Digraph& g, const TypeCatalog& catalog,
                         const RootedGraph& h);

TruthReport make_truth_report(const Digraph& g, const TypeCatalog& catalog);

// "id,edge_count,count" rows keyed by catalog id, after a header.
void write_truth_csv(std::ostream& os, const TypeCatalog& catalog,
                     const std::vector<std::uint64_t>& cnt);

// k sources pointing at root 0.
RootedGraph star_pattern(unsigned k);

}  // namespace qdisc

#endif  // QDISC_TRUTH_HPP_
