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

#include "gtgd/approximation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/graph.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/omq_eval.hpp"
#include "gtgd/rewrite.hpp"
#include "gtgd/treewidth.hpp"

namespace gtgd {
namespace {

Term pool_var(int j) { return Term::variable("_p" + std::to_string(j)); }

bool is_pool(const Term& t) { return t.name().substr(0, 2) == "_p"; }

// Argument sequences over vi and pool variables covering vi, with pool
// variables introduced in order.
void guard_args(int arity, const std::vector<Term>& vi, int pool,
                std::vector<Term>& cur, int used, std::vector<std::vector<Term>>& out) {
  if (static_cast<int>(cur.size()) == arity) {
    for (const Term& v : vi) {
      if (std::find(cur.begin(), cur.end(), v) == cur.end()) return;
    }
    out.push_back(cur);
    return;
  }
  for (const Term& v : vi) {
    cur.push_back(v);
    guard_args(arity, vi, pool, cur, used, out);
    cur.pop_back();
  }
  for (int j = 1; j <= std::min(used + 1, pool); ++j) {
    cur.push_back(pool_var(j));
    guard_args(arity, vi, pool, cur, std::max(used, j), out);
    cur.pop_back();
  }
}

std::vector<Atom> atoms_over(const std::vector<Symbol>& preds, const Schema& t,
                             const std::vector<Term>& vars) {
  std::vector<Atom> out;
  for (Symbol p : preds) {
    int ar = *t.arity(p);
    std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
    for (;;) {
      std::vector<Term> args;
      for (std::size_t i : idx) args.push_back(vars[i]);
      out.emplace_back(p, std::move(args));
      int pos = ar - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == vars.size()) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Sorted atoms, least under permutations of the pool variables.
std::vector<Atom> canonical_pool(std::vector<Atom> atoms) {
  std::vector<Term> pool;
  for (const Term& t : terms_of(atoms)) {
    if (is_pool(t)) pool.push_back(t);
  }
  std::sort(atoms.begin(), atoms.end());
  std::vector<Atom> best = atoms;
  std::vector<Term> perm = pool;
  while (std::next_permutation(perm.begin(), perm.end())) {
    TermMap m;
    for (std::size_t i = 0; i < pool.size(); ++i) m[pool[i]] = perm[i];
    std::vector<Atom> cand = substitute(m, atoms);
    std::sort(cand.begin(), cand.end());
    if (cand < best) best = std::move(cand);
  }
  return best;
}

bool superset(const std::vector<Atom>& big, const std::vector<Atom>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

class Grounder {
 public:
  Grounder(const TgdSet& sigma, const Schema& t, const ApproxOptions& opts)
      : sigma_(sigma), t_(t), opts_(opts) {
    if (!is_guarded(sigma)) {
      throw Error(Errc::not_guarded, "groundings require guarded dependencies");
    }
    Schema base = schema_of(sigma);
    for (const auto& [p, ar] : base.entries()) relevant_base_.insert(p);
  }

  // Subset-minimal guarded full CQs over vi and pool variables entailing comp.
  const std::vector<std::vector<Atom>>& minimal(const std::vector<Atom>& comp,
                                                const std::vector<Term>& vi) {
    auto key = std::make_pair(comp, vi);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<Atom>> found;
    int ar = t_.max_arity();
    int pool = ar - static_cast<int>(vi.size());
    if (pool >= 0) {
      std::set<Symbol> rel = relevant_base_;
      for (const Atom& a : comp) rel.insert(a.pred);
      std::vector<Symbol> side_preds(rel.begin(), rel.end());
      for (const auto& [p, par] : t_.entries()) {
        if (par < static_cast<int>(vi.size())) continue;
        std::vector<std::vector<Term>> args;
        std::vector<Term> cur;
        guard_args(par, vi, pool, cur, 0, args);
        for (auto& a : args) search(comp, vi, Atom(p, a), side_preds, found);
      }
    }
    std::vector<std::vector<Atom>> out;
    for (auto& g : found) g = canonical_pool(g);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const auto& g : found) {
      bool dominated = std::any_of(found.begin(), found.end(), [&](const auto& h) {
        return h != g && superset(g, h);
      });
      if (!dominated) out.push_back(g);
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  // Some grounding of comp, or none.
  std::optional<std::vector<Atom>> any(const std::vector<Atom>& comp,
                                       const std::vector<Term>& vi) {
    int ar = t_.max_arity();
    int pool = ar - static_cast<int>(vi.size());
    if (pool < 0) return std::nullopt;
    std::set<Symbol> rel = relevant_base_;
    for (const Atom& a : comp) rel.insert(a.pred);
    std::vector<Term> w = vi;
    for (int j = 1; j <= pool; ++j) w.push_back(pool_var(j));
    for (const auto& [p, par] : t_.entries()) {
      if (par != ar) continue;
      std::vector<Atom> all = atoms_over(std::vector<Symbol>(rel.begin(), rel.end()), t_, w);
      all.emplace_back(p, w);
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      if (entails(all, comp, vi)) return all;
      break;
    }
    return std::nullopt;
  }

  void reset_budget() { checks_ = 0; }

 private:
  void search(const std::vector<Atom>& comp, const std::vector<Term>& vi,
              const Atom& guard, const std::vector<Symbol>& side_preds,
              std::vector<std::vector<Atom>>& found) {
    std::vector<Term> vars = terms_of(guard);
    std::vector<Atom> cands = atoms_over(side_preds, t_, vars);
    cands.erase(std::remove(cands.begin(), cands.end(), guard), cands.end());
    std::vector<Atom> full = cands;
    full.push_back(guard);
    std::sort(full.begin(), full.end());
    if (!entails(full, comp, vi)) return;
    std::size_t n = cands.size();
    auto with_guard = [&](const std::vector<bool>& keep) {
      std::vector<Atom> g{guard};
      for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) g.push_back(cands[i]);
      }
      std::sort(g.begin(), g.end());
      return g;
    };
    std::vector<std::vector<std::size_t>> minimal_sides;
    for (;;) {
      bool advanced = false;
      for (const auto& hit : hitting_sets(minimal_sides)) {
        std::vector<bool> keep(n, true);
        for (std::size_t i : hit) keep[i] = false;
        if (!entails(with_guard(keep), comp, vi)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          if (!keep[i]) continue;
          keep[i] = false;
          if (!entails(with_guard(keep), comp, vi)) keep[i] = true;
        }
        std::vector<std::size_t> side;
        for (std::size_t i = 0; i < n; ++i) {
          if (keep[i]) side.push_back(i);
        }
        minimal_sides.push_back(side);
        found.push_back(with_guard(keep));
        advanced = true;
        break;
      }
      if (!advanced) break;
    }
  }

  // Inclusion-minimal sets meeting every member of the family.
  static std::vector<std::vector<std::size_t>> hitting_sets(
      const std::vector<std::vector<std::size_t>>& family) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void()> rec = [&]() {
      for (const auto& f : family) {
        bool hit = std::any_of(f.begin(), f.end(), [&](std::size_t i) {
          return std::find(cur.begin(), cur.end(), i) != cur.end();
        });
        if (hit) continue;
        for (std::size_t i : f) {
          cur.push_back(i);
          rec();
          cur.pop_back();
        }
        return;
      }
      std::vector<std::size_t> h = cur;
      std::sort(h.begin(), h.end());
      out.push_back(std::move(h));
    };
    rec();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<std::vector<std::size_t>> minimal;
    for (const auto& h : out) {
      bool dominated = std::any_of(out.begin(), out.end(), [&](const auto& o) {
        return o != h && std::includes(h.begin(), h.end(), o.begin(), o.end());
      });
      if (!dominated) minimal.push_back(h);
    }
    return minimal;
  }

  bool entails(const std::vector<Atom>& g, const std::vector<Atom>& comp,
               const std::vector<Term>& vi) {
    auto key = std::make_tuple(g, comp, vi);
    auto it = entails_.find(key);
    if (it != entails_.end()) return it->second;
    if (++checks_ > opts_.grounding_cap) {
      throw Error(Errc::enumeration_cap_exceeded,
                  "grounding search exceeded " + std::to_string(opts_.grounding_cap) +
                      " candidate checks");
    }
    Instance d = canonical_database(g);
    Tuple answer;
    for (const Term& v : vi) answer.push_back(as_constant(v));
    bool ok;
    if (sigma_.empty()) {
      TermMap fixed;
      for (const Term& v : vi) fixed[v] = as_constant(v);
      ok = has_homomorphism(comp, d, fixed);
    } else {
      OMQ q;
      q.sigma = sigma_;
      q.query = UCQ{CQ(vi, comp)};
      ok = fpt_eval_omq(q, d, answer);
    }
    entails_.emplace(key, ok);
    return ok;
  }

  const TgdSet& sigma_;
  const Schema& t_;
  ApproxOptions opts_;
  std::set<Symbol> relevant_base_;
  std::size_t checks_ = 0;
  std::map<std::pair<std::vector<Atom>, std::vector<Term>>,
           std::vector<std::vector<Atom>>>
      cache_;
  std::map<std::tuple<std::vector<Atom>, std::vector<Atom>, std::vector<Term>>, bool>
      entails_;
};

std::vector<Term> vars_in(const std::vector<Atom>& comp, const std::vector<Term>& v) {
  std::vector<Term> out;
  for (const Term& t : variables_of(comp)) {
    if (std::binary_search(v.begin(), v.end(), t)) out.push_back(t);
  }
  return out;
}

std::vector<Atom> rename_pool(const std::vector<Atom>& g, std::size_t component) {
  TermMap m;
  for (const Term& t : terms_of(g)) {
    if (is_pool(t)) {
      m[t] = Term::variable("y" + std::to_string(component + 1) + "_" +
                            std::string(t.name().substr(2)));
    }
  }
  return substitute(m, g);
}

void assemble(const Specialization& s, const std::vector<Atom>& g0,
              const std::vector<std::vector<std::vector<Atom>>>& options,
              std::size_t cap, std::vector<Grounding>& out) {
  std::vector<std::size_t> choice(options.size(), 0);
  for (const auto& o : options) {
    if (o.empty()) return;
  }
  for (;;) {
    Grounding g;
    g.g0 = g0;
    std::vector<Atom> body = g0;
    for (std::size_t i = 0; i < options.size(); ++i) {
      g.parts.push_back(rename_pool(options[i][choice[i]], i));
      body.insert(body.end(), g.parts.back().begin(), g.parts.back().end());
    }
    g.cq = CQ(s.contraction.answer_vars(), std::move(body));
    out.push_back(std::move(g));
    if (out.size() > cap) {
      throw Error(Errc::enumeration_cap_exceeded,
                  "more than " + std::to_string(cap) + " groundings");
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == options[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
}

std::vector<Grounding> groundings_with(Grounder& gr, const Specialization& s,
                                       const ApproxOptions& opts) {
  std::vector<std::vector<std::vector<Atom>>> options;
  for (const auto& comp : v_components(s.contraction, s.v)) {
    options.push_back(gr.minimal(comp, vars_in(comp, s.v)));
  }
  std::vector<Grounding> out;
  assemble(s, v_part(s.contraction, s.v), options, opts.assembly_cap, out);
  return out;
}

}  // namespace

std::vector<Specialization> specializations(const CQ& q, std::size_t cap) {
  std::vector<Specialization> out;
  for (const Contraction& c : contractions(q, cap)) {
    std::vector<Term> answers = c.cq.answer_vars();
    std::sort(answers.begin(), answers.end());
    std::vector<Term> rest = c.cq.existential_vars();
    std::vector<std::vector<Term>> subsets;
    for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
      std::vector<Term> v = answers;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (mask >> i & 1) v.push_back(rest[i]);
      }
      std::sort(v.begin(), v.end());
      subsets.push_back(std::move(v));
    }
    std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    for (auto& v : subsets) {
      out.push_back({c.cq, std::move(v)});
      if (out.size() > cap) {
        throw Error(Errc::enumeration_cap_exceeded, "too many specializations");
      }
    }
  }
  return out;
}

std::vector<Atom> v_part(const CQ& p, const std::vector<Term>& v) {
  std::vector<Term> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Atom> out;
  for (const Atom& a : p.body()) {
    bool inside = std::all_of(a.args.begin(), a.args.end(), [&](const Term& t) {
      return std::binary_search(sorted.begin(), sorted.end(), t);
    });
    if (inside) out.push_back(a);
  }
  return out;
}

std::vector<std::vector<Atom>> v_components(const CQ& p, const std::vector<Term>& v) {
  std::vector<Term> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Term> outside;
  for (const Term& t : p.variables()) {
    if (!std::binary_search(sorted.begin(), sorted.end(), t)) outside.push_back(t);
  }
  std::vector<int> parent(outside.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  auto index = [&](const Term& t) -> int {
    auto it = std::lower_bound(outside.begin(), outside.end(), t);
    if (it == outside.end() || *it != t) return -1;
    return static_cast<int>(it - outside.begin());
  };
  for (const Atom& a : p.body()) {
    int first = -1;
    for (const Term& t : a.args) {
      int i = index(t);
      if (i < 0) continue;
      if (first < 0) {
        first = find(i);
      } else {
        parent[static_cast<std::size_t>(find(i))] = first;
        first = find(first);
      }
    }
  }
  std::map<int, std::vector<Atom>> groups;
  std::vector<int> order;
  for (const Atom& a : p.body()) {
    for (const Term& t : a.args) {
      int i = index(t);
      if (i < 0) continue;
      int root = find(i);
      if (!groups.count(root)) order.push_back(root);
      groups[root].push_back(a);
      break;
    }
  }
  std::vector<std::vector<Atom>> out;
  for (int root : order) out.push_back(dedupe_stable(groups[root]));
  return out;
}

std::vector<Grounding> groundings(const Specialization& s, const TgdSet& sigma,
                                  const Schema& t, const ApproxOptions& opts) {
  Grounder gr(sigma, t, opts);
  return groundings_with(gr, s, opts);
}

void require_arity_threshold(const Schema& t, int k) {
  int bound = t.max_arity() - 1;
  if (k < bound) {
    throw Error(Errc::k_below_arity_threshold,
                "k=" + std::to_string(k) + " is below ar(T)-1=" + std::to_string(bound) +
                    "; below this threshold approximations may need exponentially "
                    "large disjuncts and are refused");
  }
}

OMQ ucq_k_approx(const OMQ& q, int k, const ApproxOptions& opts) {
  Schema t = q.extended_schema();
  require_arity_threshold(t, k);
  Grounder gr(q.sigma, t, opts);
  // Without existential rules no marker atom is ever derived.
  bool nulls = !is_full(q.sigma);
  std::vector<CQ> out;
  for (const CQ& p : q.query.disjuncts()) {
    for (const Specialization& s : specializations(p, opts.contraction_cap)) {
      if (!nulls && s.v.size() != s.contraction.variables().size()) continue;
      gr.reset_budget();
      std::vector<std::vector<Atom>> parts;
      bool exists = true;
      for (const auto& comp : v_components(s.contraction, s.v)) {
        auto g = gr.any(comp, vars_in(comp, s.v));
        if (!g) {
          exists = false;
          break;
        }
        parts.push_back(*g);
      }
      if (!exists) continue;
      std::vector<Atom> probe = v_part(s.contraction, s.v);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        auto r = rename_pool(parts[i], i);
        probe.insert(probe.end(), r.begin(), r.end());
      }
      if (cq_treewidth(CQ(s.contraction.answer_vars(), probe)) > k) continue;
      for (Grounding& g : groundings_with(gr, s, opts)) {
        if (cq_treewidth(g.cq) <= k) out.push_back(std::move(g.cq));
      }
    }
  }
  OMQ result;
  result.data_schema = q.data_schema;
  result.sigma = q.sigma;
  result.query = normalize_ucq(UCQ(std::move(out)));
  return result;
}

Symbol null_marker(const Schema& t) {
  std::string name = "A";
  while (t.contains(Symbol(name))) name += "_";
  return Symbol(name);
}

OMQ compact_approx(const OMQ& q, int k, const ApproxOptions& opts) {
  Schema t = q.extended_schema();
  require_arity_threshold(t, k);
  Grounder gr(q.sigma, t, opts);
  Symbol marker = null_marker(t);
  OMQ result;
  result.data_schema = q.data_schema;
  for (const TGD& r : q.sigma) {
    std::vector<Atom> head = r.head();
    for (const Term& z : r.existential_vars()) head.emplace_back(marker, std::vector<Term>{z});
    result.sigma.emplace_back(r.body(), std::move(head), r.existential_vars());
  }
  // Without existential rules no marker atom is ever derived.
  bool nulls = !is_full(q.sigma);
  std::vector<CQ> out;
  for (const CQ& p : q.query.disjuncts()) {
    for (const Specialization& s : specializations(p, opts.contraction_cap)) {
      if (!nulls && s.v.size() != s.contraction.variables().size()) continue;
      gr.reset_budget();
      std::vector<Atom> probe = v_part(s.contraction, s.v);
      bool exists = true;
      std::size_t i = 0;
      for (const auto& comp : v_components(s.contraction, s.v)) {
        auto g = gr.any(comp, vars_in(comp, s.v));
        if (!g) {
          exists = false;
          break;
        }
        auto r = rename_pool(*g, i++);
        probe.insert(probe.end(), r.begin(), r.end());
      }
      if (!exists || cq_treewidth(CQ(s.contraction.answer_vars(), probe)) > k) continue;
      std::vector<Atom> body = s.contraction.body();
      for (const Term& x : s.contraction.variables()) {
        if (!std::binary_search(s.v.begin(), s.v.end(), x)) {
          body.emplace_back(marker, std::vector<Term>{x});
        }
      }
      out.emplace_back(s.contraction.answer_vars(), std::move(body));
    }
  }
  result.query = normalize_ucq(UCQ(std::move(out)));
  return result;
}

CQS cqs_k_approx(const CQS& s, int k, const ApproxOptions& opts) {
  SetClassification c = classify_set(s.sigma);
  if (!c.frontier_guarded) {
    throw Error(Errc::not_frontier_guarded, "CQS approximation requires frontier-guarded dependencies");
  }
  int r = s.schema().max_arity();
  int bound = r * std::max(c.m, 1) - 1;
  if (k < bound) {
    throw Error(Errc::k_below_threshold,
                "k=" + std::to_string(k) + " is below r*m-1=" + std::to_string(bound));
  }
  std::vector<CQ> out;
  for (const CQ& p : s.query.disjuncts()) {
    for (const Contraction& con : contractions(p, opts.contraction_cap)) {
      if (cq_treewidth(con.cq) <= k) out.push_back(con.cq);
    }
  }
  CQS result;
  result.sigma = s.sigma;
  result.query = normalize_ucq(UCQ(std::move(out)));
  return result;
}

}  // namespace gtgd
