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

#include "gtgd/treewidth.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>

#include "gtgd/error.hpp"

namespace gtgd {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

bool is_valid_decomposition(const Graph& g, const TreeDecomposition& td,
                            std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int nb = static_cast<int>(td.bags.size());
  if (nb == 0) return g.size() == 0 ? true : fail("no bags");
  if (static_cast<int>(td.edges.size()) != nb - 1) return fail("not a tree");
  std::vector<std::vector<int>> adj(nb);
  for (auto [a, b] : td.edges) {
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return fail("bad tree edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(nb, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != nb) return fail("tree not connected");
  std::vector<std::vector<int>> holder(g.size());
  for (int b = 0; b < nb; ++b) {
    for (int v : td.bags[b]) {
      if (v < 0 || v >= g.size()) return fail("bag mentions unknown vertex");
      holder[v].push_back(b);
    }
  }
  for (int v = 0; v < g.size(); ++v) {
    if (holder[v].empty()) return fail("vertex " + g.label(v) + " uncovered");
  }
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int b : holder[u]) {
      const auto& bag = td.bags[b];
      if (std::find(bag.begin(), bag.end(), v) != bag.end()) covered = true;
    }
    if (!covered) return fail("edge " + g.label(u) + "-" + g.label(v) + " uncovered");
  }
  for (int v = 0; v < g.size(); ++v) {
    std::vector<bool> in(nb, false);
    for (int b : holder[v]) in[b] = true;
    std::vector<int> st{holder[v].front()};
    std::vector<bool> vis(nb, false);
    vis[holder[v].front()] = true;
    std::size_t count = 1;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : adj[x]) {
        if (in[y] && !vis[y]) {
          vis[y] = true;
          ++count;
          st.push_back(y);
        }
      }
    }
    if (count != holder[v].size()) {
      return fail("bags of " + g.label(v) + " not connected");
    }
  }
  return true;
}

namespace {

std::vector<std::set<int>> filled_neighbourhoods(const Graph& g,
                                                 const std::vector<int>& order) {
  int n = g.size();
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::set<int>> later(n);
  for (int v : order) {
    for (int w : adj[v]) {
      if (pos[w] > pos[v]) later[v].insert(w);
    }
    for (int a : later[v]) {
      for (int b : later[v]) {
        if (a != b) adj[a].insert(b);
      }
    }
  }
  return later;
}

}  // namespace

int elimination_width(const Graph& g, const std::vector<int>& order) {
  int w = -1;
  for (const auto& s : filled_neighbourhoods(g, order)) {
    w = std::max(w, static_cast<int>(s.size()));
  }
  return w;
}

TreeDecomposition decomposition_from_order(const Graph& g,
                                           const std::vector<int>& order) {
  TreeDecomposition td;
  int n = g.size();
  if (n == 0) {
    td.bags.emplace_back();
    return td;
  }
  auto later = filled_neighbourhoods(g, order);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  // Bag i belongs to order[i].
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> bag{v};
    bag.insert(bag.end(), later[v].begin(), later[v].end());
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    if (later[v].empty()) {
      roots.push_back(i);
    } else {
      int parent = n;
      for (int w : later[v]) parent = std::min(parent, pos[w]);
      td.edges.emplace_back(i, parent);
    }
  }
  for (std::size_t r = 1; r < roots.size(); ++r) {
    td.edges.emplace_back(roots[r - 1], roots[r]);
  }
  return td;
}

std::vector<int> optimal_elimination_order(const Graph& g) {
  int n = g.size();
  if (n > kExactTreewidthLimit) {
    throw Error(Errc::size_limit_exceeded,
                "exact treewidth limited to " +
                    std::to_string(kExactTreewidthLimit) + " vertices");
  }
  if (n == 0) return {};
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [u, v] : g.edges()) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  // q(S, v): vertices outside S + v reachable from v through S.
  auto q_size = [&](std::uint32_t s, int v) {
    std::uint32_t visited = 1u << v;
    std::uint32_t frontier = 1u << v;
    std::uint32_t out = 0;
    while (frontier) {
      int x = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      std::uint32_t nx = nbr[x] & ~visited;
      visited |= nx;
      out |= nx & ~s;
      frontier |= nx & s;
    }
    return __builtin_popcount(out);
  };
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::int8_t> tw(std::size_t{1} << n, -1);
  std::vector<std::int8_t> last(std::size_t{1} << n, -1);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = 127;
    int pick = -1;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = __builtin_ctz(rest);
      std::uint32_t without = s & ~(1u << v);
      int w = std::max<int>(without ? tw[without] : -1, q_size(without, v));
      if (w < best) {
        best = w;
        pick = v;
      }
    }
    tw[s] = static_cast<std::int8_t>(best);
    last[s] = static_cast<std::int8_t>(pick);
  }
  std::vector<int> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    int v = last[s];
    order[i] = v;
    s &= ~(1u << v);
  }
  return order;
}

int treewidth(const Graph& g) {
  return std::max(1, elimination_width(g, optimal_elimination_order(g)));
}

namespace {

std::vector<std::set<int>> adjacency_sets(const Graph& g) {
  std::vector<std::set<int>> adj(static_cast<std::size_t>(g.size()));
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  return adj;
}

int degeneracy(const Graph& g) {
  auto work = adjacency_sets(g);
  int n = g.size();
  int out = 0;
  std::vector<bool> gone(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!gone[v] && (pick < 0 || work[v].size() < work[pick].size())) pick = v;
    }
    out = std::max(out, static_cast<int>(work[pick].size()));
    gone[pick] = true;
    for (int w : work[pick]) work[w].erase(pick);
    work[pick].clear();
  }
  return out;
}

std::vector<int> min_degree_order(const Graph& g) {
  auto work = adjacency_sets(g);
  int n = g.size();
  std::vector<int> order;
  std::vector<bool> gone(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!gone[v] && (pick < 0 || work[v].size() < work[pick].size())) pick = v;
    }
    order.push_back(pick);
    gone[pick] = true;
    for (int a : work[pick]) {
      for (int b : work[pick]) {
        if (a != b) work[a].insert(b);
      }
      work[a].erase(pick);
    }
    work[pick].clear();
  }
  return order;
}

}  // namespace

std::optional<TreeDecomposition> decide_tw(const Graph& g, int k) {
  if (k < 1) throw Error(Errc::precondition_violated, "k must be at least 1");
  if (g.size() > kExactTreewidthLimit) {
    std::vector<int> order = min_degree_order(g);
    if (elimination_width(g, order) <= k) return decomposition_from_order(g, order);
    if (degeneracy(g) > k) return std::nullopt;
  }
  std::vector<int> order = optimal_elimination_order(g);
  if (elimination_width(g, order) > k) return std::nullopt;
  return decomposition_from_order(g, order);
}

TreewidthBounds treewidth_bounds(const Graph& g) {
  int n = g.size();
  int upper = n == 0 ? 1 : std::max(1, elimination_width(g, min_degree_order(g)));
  return {std::max(1, degeneracy(g)), upper};
}

int cq_treewidth(const CQ& q) { return treewidth(gaifman(q, true)); }

int ucq_treewidth(const UCQ& q) {
  int w = 1;
  for (const CQ& d : q.disjuncts()) w = std::max(w, cq_treewidth(d));
  return w;
}

namespace {

using Row = std::vector<Term>;

struct BagRelation {
  std::vector<Term> vars;
  std::set<Row> rows;
};

std::vector<std::size_t> positions(const std::vector<Term>& of,
                                   const std::vector<Term>& in) {
  std::vector<std::size_t> out;
  for (const Term& v : of) {
    out.push_back(static_cast<std::size_t>(
        std::find(in.begin(), in.end(), v) - in.begin()));
  }
  return out;
}

Row project(const Row& r, const std::vector<std::size_t>& pos) {
  Row out;
  out.reserve(pos.size());
  for (std::size_t p : pos) out.push_back(r[p]);
  return out;
}

}  // namespace

std::set<Tuple> eval_bounded_tw(const CQ& q, const Instance& inst, int k) {
  Graph g = gaifman(q, true);
  auto td = decide_tw(g, std::max(k, 1));
  if (!td) {
    throw Error(Errc::width_exceeded,
                "query treewidth exceeds " + std::to_string(k));
  }
  std::vector<Term> ex = q.existential_vars();
  std::vector<Term> answers = q.answer_vars();
  std::sort(answers.begin(), answers.end());
  answers.erase(std::unique(answers.begin(), answers.end()), answers.end());

  int nb = static_cast<int>(td->bags.size());
  std::vector<std::vector<Term>> bag_vars(nb);
  for (int b = 0; b < nb; ++b) {
    for (int v : td->bags[b]) bag_vars[b].push_back(ex[v]);
    bag_vars[b].insert(bag_vars[b].end(), answers.begin(), answers.end());
    std::sort(bag_vars[b].begin(), bag_vars[b].end());
  }
  AtomIndex index(inst);

  // Candidate values per variable: intersection over atoms containing it.
  std::map<Term, std::set<Term>> domain;
  for (const Atom& a : q.body()) {
    std::map<Term, std::set<Term>> local;
    for (std::uint32_t id : index.with_pred(a.pred)) {
      const Atom& t = index.atom(id);
      if (t.args.size() != a.args.size()) continue;
      bool ok = true;
      std::map<Term, Term> bind;
      for (std::size_t p = 0; p < a.args.size() && ok; ++p) {
        auto [it, fresh] = bind.emplace(a.args[p], t.args[p]);
        ok = fresh || it->second == t.args[p];
      }
      if (!ok) continue;
      for (const auto& [v, c] : bind) local[v].insert(c);
    }
    for (const Term& v : variables_of({a})) {
      auto& l = local[v];
      auto it = domain.find(v);
      if (it == domain.end()) {
        domain.emplace(v, l);
      } else {
        std::set<Term> both;
        std::set_intersection(it->second.begin(), it->second.end(), l.begin(),
                              l.end(), std::inserter(both, both.end()));
        it->second = std::move(both);
      }
    }
  }

  std::vector<BagRelation> rel(nb);
  for (int b = 0; b < nb; ++b) {
    const auto& vars = bag_vars[b];
    std::set<Term> inside(vars.begin(), vars.end());
    std::vector<Atom> local;
    for (const Atom& a : q.body()) {
      bool all = std::all_of(a.args.begin(), a.args.end(),
                             [&](const Term& t) { return inside.count(t) != 0; });
      if (all) local.push_back(a);
    }
    std::vector<Term> covered = variables_of(local);
    std::vector<Term> free;
    for (const Term& v : vars) {
      if (!std::binary_search(covered.begin(), covered.end(), v)) free.push_back(v);
    }
    rel[b].vars = vars;
    auto extend = [&](const TermMap& h) {
      Row row(vars.size());
      std::vector<std::size_t> free_pos;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = h.find(vars[i]);
        if (it != h.end()) {
          row[i] = it->second;
        } else {
          free_pos.push_back(i);
        }
      }
      std::function<void(std::size_t)> fill = [&](std::size_t j) {
        if (j == free_pos.size()) {
          rel[b].rows.insert(row);
          return;
        }
        for (const Term& c : domain[vars[free_pos[j]]]) {
          row[free_pos[j]] = c;
          fill(j + 1);
        }
      };
      fill(0);
      return true;
    };
    if (local.empty()) {
      extend(TermMap{});
    } else {
      for_each_homomorphism(local, index, {}, extend);
    }
  }

  // Root the tree at bag 0 and semijoin children into parents bottom-up.
  std::vector<std::vector<int>> adj(nb);
  for (auto [a, c] : td->edges) {
    adj[a].push_back(c);
    adj[c].push_back(a);
  }
  std::vector<int> parent(nb, -1);
  std::vector<int> order{0};
  std::vector<bool> seen(nb, false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int y : adj[order[i]]) {
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = order[i];
        order.push_back(y);
      }
    }
  }
  for (std::size_t i = order.size(); i-- > 1;) {
    int c = order[i];
    int p = parent[c];
    std::vector<Term> shared;
    std::set_intersection(rel[c].vars.begin(), rel[c].vars.end(),
                          rel[p].vars.begin(), rel[p].vars.end(),
                          std::back_inserter(shared));
    auto pc = positions(shared, rel[c].vars);
    auto pp = positions(shared, rel[p].vars);
    std::set<Row> keys;
    for (const Row& r : rel[c].rows) keys.insert(project(r, pc));
    for (auto it = rel[p].rows.begin(); it != rel[p].rows.end();) {
      if (keys.count(project(*it, pp))) {
        ++it;
      } else {
        it = rel[p].rows.erase(it);
      }
    }
  }
  std::set<Tuple> out;
  auto pr = positions(q.answer_vars(), rel[0].vars);
  for (const Row& r : rel[0].rows) out.insert(project(r, pr));
  return out;
}

std::string to_string(const TreeDecomposition& td, const Graph& g) {
  std::string out;
  for (std::size_t b = 0; b < td.bags.size(); ++b) {
    out += "bag " + std::to_string(b) + ":";
    for (int v : td.bags[b]) out += " " + g.label(v);
    out += "\n";
  }
  for (auto [a, b] : td.edges) {
    out += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
  }
  return out;
}

}  // namespace gtgd
