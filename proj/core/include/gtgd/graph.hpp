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

#ifndef GTGD_GRAPH_HPP_
#define GTGD_GRAPH_HPP_

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gtgd/model.hpp"

namespace gtgd {

// Simple undirected graph on vertices 0..n-1 with optional labels.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int add_vertex(std::string label = {});
  // Vertex with the given label, created on first use.
  int vertex(std::string_view label);
  std::optional<int> find(std::string_view label) const;
  // Self-loops are ignored.
  void add_edge(int u, int v);

  int size() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const;
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;
  const std::string& label(int v) const { return labels_[v]; }

  Graph induced(const std::vector<int>& vertices) const;
  std::vector<std::vector<int>> components() const;
  bool connected(const std::vector<int>& vertices) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_ == b.adj_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> by_label_;
};

Graph grid_graph(int rows, int cols);
Graph complete_graph(int n);
Graph cycle_graph(int n);

// Gaifman graph with vertices labelled by term names, in term order.
// Throws Error(flag_on_instance) when modulo_answer_vars is set.
Graph gaifman(const Instance& inst, bool modulo_answer_vars = false);
Graph gaifman(const std::vector<Atom>& atoms);
// modulo_answer_vars keeps only existential variables.
Graph gaifman(const CQ& q, bool modulo_answer_vars);

}  // namespace gtgd

#endif  // GTGD_GRAPH_HPP_
