// Copyright 2026 The gtgd Authors.
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

#ifndef GTGD_TREEWIDTH_HPP_
#define GTGD_TREEWIDTH_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtgd/graph.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/model.hpp"

namespace gtgd {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> edges;

  // Largest bag size minus one; -1 when there are no vertices.
  int width() const;
};

// Checks coverage, edge containment and connectivity of every vertex's bags.
bool is_valid_decomposition(const Graph& g, const TreeDecomposition& td,
                            std::string* why = nullptr);

// Bags of the elimination ordering, joined into one tree.
TreeDecomposition decomposition_from_order(const Graph& g,
                                           const std::vector<int>& order);
int elimination_width(const Graph& g, const std::vector<int>& order);

constexpr int kExactTreewidthLimit = 16;

// Width-optimal elimination order; exact for at most 16 vertices, otherwise
// throws Error(size_limit_exceeded).
std::vector<int> optimal_elimination_order(const Graph& g);
// Treewidth with the convention that edgeless graphs have treewidth 1.
int treewidth(const Graph& g);
// Requires k >= 1. Above the exact limit the min-degree order or the
// degeneracy bound must settle the answer; otherwise throws
// Error(size_limit_exceeded).
std::optional<TreeDecomposition> decide_tw(const Graph& g, int k);

struct TreewidthBounds {
  int lower;
  int upper;
};
// Degeneracy lower bound and min-degree elimination upper bound.
TreewidthBounds treewidth_bounds(const Graph& g);

int cq_treewidth(const CQ& q);
int ucq_treewidth(const UCQ& q);

// Decomposition-guided evaluation; throws Error(width_exceeded) when the
// query has treewidth above k.
std::set<Tuple> eval_bounded_tw(const CQ& q, const Instance& inst, int k);

std::string to_string(const TreeDecomposition& td, const Graph& g);

}  // namespace gtgd

#endif  // GTGD_TREEWIDTH_HPP_
