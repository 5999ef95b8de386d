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

#include "gtgd/graph.hpp"

#include <algorithm>
#include <set>

#include "gtgd/error.hpp"

namespace gtgd {

Graph::Graph(int n) {
  for (int i = 0; i < n; ++i) add_vertex(std::to_string(i));
}

int Graph::add_vertex(std::string label) {
  int id = size();
  if (label.empty()) label = std::to_string(id);
  by_label_.emplace(label, id);
  labels_.push_back(std::move(label));
  adj_.emplace_back();
  return id;
}

int Graph::vertex(std::string_view label) {
  if (auto v = find(label)) return *v;
  return add_vertex(std::string(label));
}

std::optional<int> Graph::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

void Graph::add_edge(int u, int v) {
  if (u == v) return;
  auto insert = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert(adj_[u], v);
  insert(adj_[v], u);
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

bool Graph::adjacent(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  Graph g;
  std::vector<int> pos(adj_.size(), -1);
  for (int v : vertices) pos[v] = g.add_vertex(labels_[v]);
  for (int v : vertices) {
    for (int w : adj_[v]) {
      if (pos[w] >= 0) g.add_edge(pos[v], pos[w]);
    }
  }
  return g;
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(adj_.size(), false);
  for (int s = 0; s < size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (int w : adj_[comp[i]]) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool Graph::connected(const std::vector<int>& vertices) const {
  if (vertices.empty()) return false;
  std::set<int> inside(vertices.begin(), vertices.end());
  std::set<int> seen{vertices.front()};
  std::vector<int> stack{vertices.front()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj_[v]) {
      if (inside.count(w) && seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == inside.size();
}

Graph grid_graph(int rows, int cols) {
  Graph g;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      g.add_vertex("(" + std::to_string(r) + "," + std::to_string(c) + ")");
    }
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  }
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph cycle_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

namespace {

Graph gaifman_over(const std::vector<Atom>& atoms,
                   const std::vector<Term>& vertices) {
  Graph g;
  std::map<Term, int> pos;
  for (const Term& t : vertices) pos.emplace(t, g.add_vertex(std::string(t.name())));
  for (const Atom& a : atoms) {
    std::vector<int> ids;
    for (const Term& t : a.args) {
      auto it = pos.find(t);
      if (it != pos.end()) ids.push_back(it->second);
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) g.add_edge(ids[i], ids[j]);
    }
  }
  return g;
}

}  // namespace

Graph gaifman(const Instance& inst, bool modulo_answer_vars) {
  if (modulo_answer_vars) {
    throw Error(Errc::flag_on_instance, "answer-variable flag set on an instance");
  }
  return gaifman_over(inst.atoms(), inst.adom());
}

Graph gaifman(const std::vector<Atom>& atoms) {
  return gaifman_over(atoms, terms_of(atoms));
}

Graph gaifman(const CQ& q, bool modulo_answer_vars) {
  if (!modulo_answer_vars) return gaifman(q.body());
  return gaifman_over(q.body(), q.existential_vars());
}

}  // namespace gtgd
