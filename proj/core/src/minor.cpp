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

#include "gtgd/minor.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gtgd/error.hpp"

namespace gtgd {

bool is_valid_minor_map(const Graph& g, const MinorMap& m, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(m.images.size()) != m.rows * m.cols) {
    return fail("image count differs from grid size");
  }
  std::vector<int> owner(g.size(), -1);
  for (std::size_t i = 0; i < m.images.size(); ++i) {
    const auto& img = m.images[i];
    if (img.empty()) return fail("empty image");
    for (int v : img) {
      if (v < 0 || v >= g.size()) return fail("image mentions unknown vertex");
      if (owner[v] >= 0) return fail("images overlap at " + g.label(v));
      owner[v] = static_cast<int>(i);
    }
    if (!g.connected(img)) return fail("image not connected");
  }
  Graph grid = grid_graph(m.rows, m.cols);
  for (auto [a, b] : grid.edges()) {
    bool crossing = false;
    for (int u : m.images[a]) {
      for (int w : g.neighbors(u)) crossing = crossing || owner[w] == b;
    }
    if (!crossing) return fail("grid edge without crossing edge");
  }
  if (m.onto && std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    return fail("map claims onto but misses a vertex");
  }
  return true;
}

namespace {

// Injective map from grid vertices to quotient blocks preserving grid edges.
bool embed_grid(const Graph& grid, const std::vector<std::set<int>>& quotient,
                std::vector<int>& assign) {
  int m = grid.size();
  std::vector<bool> used(m, false);
  assign.assign(m, -1);
  std::function<bool(int)> rec = [&](int i) {
    if (i == m) return true;
    for (int b = 0; b < m; ++b) {
      if (used[b]) continue;
      bool ok = true;
      for (int j : grid.neighbors(i)) {
        if (j < i && !quotient[assign[j]].count(b)) ok = false;
      }
      if (!ok) continue;
      used[b] = true;
      assign[i] = b;
      if (rec(i + 1)) return true;
      used[b] = false;
    }
    assign[i] = -1;
    return false;
  };
  return rec(0);
}

std::optional<MinorMap> onto_component(const Graph& g,
                                       const std::vector<int>& comp, int rows,
                                       int cols) {
  int m = rows * cols;
  int n = static_cast<int>(comp.size());
  if (n < m) return std::nullopt;
  if (n > 14) {
    throw Error(Errc::size_limit_exceeded,
                "grid minor search limited to components of 14 vertices");
  }
  Graph grid = grid_graph(rows, cols);
  if (static_cast<std::size_t>(g.induced(comp).edge_count()) < grid.edge_count()) {
    return std::nullopt;
  }
  std::vector<int> block(n, 0);
  std::optional<MinorMap> found;
  std::function<bool(int, int)> rec = [&](int i, int blocks) {
    if (n - i < m - blocks) return false;
    if (i == n) {
      if (blocks != m) return false;
      std::vector<std::vector<int>> parts(m);
      for (int v = 0; v < n; ++v) parts[block[v]].push_back(comp[v]);
      for (auto& p : parts) {
        std::sort(p.begin(), p.end());
        if (!g.connected(p)) return false;
      }
      std::vector<int> owner(g.size(), -1);
      for (int b = 0; b < m; ++b) {
        for (int v : parts[b]) owner[v] = b;
      }
      std::vector<std::set<int>> quotient(m);
      for (int b = 0; b < m; ++b) {
        for (int v : parts[b]) {
          for (int w : g.neighbors(v)) {
            if (owner[w] >= 0 && owner[w] != b) quotient[b].insert(owner[w]);
          }
        }
      }
      std::vector<int> assign;
      if (!embed_grid(grid, quotient, assign)) return false;
      MinorMap map;
      map.rows = rows;
      map.cols = cols;
      for (int i2 = 0; i2 < m; ++i2) map.images.push_back(parts[assign[i2]]);
      found = std::move(map);
      return true;
    }
    for (int b = 0; b <= std::min(blocks, m - 1); ++b) {
      block[i] = b;
      if (rec(i + 1, std::max(blocks, b + 1))) return true;
    }
    return false;
  };
  rec(0, 0);
  return found;
}

}  // namespace

std::optional<MinorMap> grid_minor(const Graph& g, int rows, int cols,
                                   bool onto) {
  if (rows < 1 || cols < 1) {
    throw Error(Errc::precondition_violated, "grid dimensions must be positive");
  }
  if (rows * cols > 9) {
    throw Error(Errc::size_limit_exceeded, "grid minor search limited to 9 cells");
  }
  auto comps = g.components();
  for (const auto& comp : comps) {
    auto map = onto_component(g, comp, rows, cols);
    if (!map) continue;
    map->onto = onto && comps.size() == 1;
    if (!map->onto && !onto) {
      // A minimal model: shrink each image while the map stays valid.
      for (auto& img : map->images) {
        for (std::size_t i = img.size(); i-- > 0 && img.size() > 1;) {
          std::vector<int> keep = img;
          keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(i));
          std::vector<int> saved = img;
          img = keep;
          if (!is_valid_minor_map(g, *map)) img = saved;
        }
      }
    }
    return map;
  }
  return std::nullopt;
}

std::string to_string(const MinorMap& m, const Graph& g) {
  std::string out;
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      out += "(" + std::to_string(r) + "," + std::to_string(c) + ") ->";
      for (int v : m.at(r, c)) out += " " + g.label(v);
      out += "\n";
    }
  }
  return out;
}

}  // namespace gtgd
