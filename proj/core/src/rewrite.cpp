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

#include "gtgd/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"

namespace gtgd {
namespace {

class UnionFind {
 public:
  int add(const Term& t) {
    auto [it, fresh] = ids_.emplace(t, static_cast<int>(parent_.size()));
    if (fresh) {
      parent_.push_back(it->second);
      terms_.push_back(t);
    }
    return it->second;
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      x = parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
    }
    return x;
  }
  void unite(const Term& a, const Term& b) {
    int x = find(add(a));
    int y = find(add(b));
    if (x != y) parent_[static_cast<std::size_t>(y)] = x;
  }
  std::map<int, std::vector<Term>> classes() {
    std::map<int, std::vector<Term>> out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      out[find(static_cast<int>(i))].push_back(terms_[i]);
    }
    return out;
  }

 private:
  std::map<Term, int> ids_;
  std::vector<int> parent_;
  std::vector<Term> terms_;
};

TGD rename_apart(const TGD& t) {
  TermMap m;
  for (const Term& v : variables_of(t.body())) {
    m[v] = Term::variable("_r_" + std::string(v.name()));
  }
  for (const Term& v : t.head_vars()) {
    m.emplace(v, Term::variable("_r_" + std::string(v.name())));
  }
  std::vector<Term> ex;
  for (const Term& z : t.existential_vars()) ex.push_back(m.at(z));
  return TGD(substitute(m, t.body()), substitute(m, t.head()), ex);
}

class Rewriter {
 public:
  Rewriter(const TgdSet& sigma, const RewriteOptions& opts) : opts_(opts) {
    for (const TGD& t : sigma) rules_.push_back(rename_apart(t));
  }

  bool overflow() const { return overflow_; }

  UCQ run(const UCQ& q) {
    for (const CQ& c : q.disjuncts()) add(canonical_variables(c));
    while (!queue_.empty() && !overflow_) {
      std::size_t i = queue_.front();
      queue_.pop_front();
      if (dropped_[i]) continue;
      CQ current = all_[i];
      for (const TGD& r : rules_) step(current, r);
    }
    std::vector<CQ> out;
    for (std::size_t i = 0; i < all_.size(); ++i) {
      if (!dropped_[i]) out.push_back(all_[i]);
    }
    return UCQ(std::move(out));
  }

 private:
  void step(const CQ& q, const TGD& r) {
    const auto& body = q.body();
    std::size_t n = body.size();
    if (n > 20) {
      throw Error(Errc::size_limit_exceeded, "disjunct too large to rewrite");
    }
    std::set<Term> answers(q.answer_vars().begin(), q.answer_vars().end());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) chosen.push_back(i);
      }
      std::vector<std::size_t> target(chosen.size(), 0);
      assign(q, r, answers, mask, chosen, target, 0);
    }
  }

  void assign(const CQ& q, const TGD& r, const std::set<Term>& answers,
              std::uint32_t mask, const std::vector<std::size_t>& chosen,
              std::vector<std::size_t>& target, std::size_t pos) {
    if (pos == chosen.size()) {
      unify(q, r, answers, mask, chosen, target);
      return;
    }
    const Atom& a = q.body()[chosen[pos]];
    for (std::size_t h = 0; h < r.head().size(); ++h) {
      const Atom& b = r.head()[h];
      if (a.pred != b.pred || a.arity() != b.arity()) continue;
      target[pos] = h;
      assign(q, r, answers, mask, chosen, target, pos + 1);
    }
  }

  void unify(const CQ& q, const TGD& r, const std::set<Term>& answers,
             std::uint32_t mask, const std::vector<std::size_t>& chosen,
             const std::vector<std::size_t>& target) {
    UnionFind uf;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const Atom& a = q.body()[chosen[i]];
      const Atom& b = r.head()[target[i]];
      for (std::size_t p = 0; p < a.arity(); ++p) uf.unite(a.args[p], b.args[p]);
    }
    std::set<Term> separating = answers;
    for (std::size_t i = 0; i < q.body().size(); ++i) {
      if (mask >> i & 1) continue;
      for (const Term& t : q.body()[i].args) separating.insert(t);
    }
    const auto& ex = r.existential_vars();
    TermMap u;
    for (const auto& [root, members] : uf.classes()) {
      int existentials = 0;
      bool blocked = false;
      for (const Term& t : members) {
        if (std::binary_search(ex.begin(), ex.end(), t)) {
          ++existentials;
        } else if (t.is_constant() || separating.count(t) ||
                   std::binary_search(r.frontier().begin(), r.frontier().end(), t)) {
          blocked = true;
        }
      }
      if (existentials > 1 || (existentials == 1 && blocked)) return;
      if (existentials == 1) continue;
      Term rep = members.front();
      auto rank = [&](const Term& t) {
        if (t.is_constant()) return 0;
        if (answers.count(t)) return 1;
        if (t.name().substr(0, 3) != "_r_") return 2;
        return 3;
      };
      for (const Term& t : members) {
        if (rank(t) < rank(rep) || (rank(t) == rank(rep) && t < rep)) rep = t;
      }
      for (const Term& t : members) u[t] = rep;
    }
    std::vector<Atom> body = substitute(u, r.body());
    for (std::size_t i = 0; i < q.body().size(); ++i) {
      if (!(mask >> i & 1)) body.push_back(substitute(u, q.body()[i]));
    }
    std::vector<Term> ans;
    for (const Term& x : q.answer_vars()) ans.push_back(substitute(u, x));
    add(canonical_variables(CQ(std::move(ans), std::move(body))));
  }

  void add(const CQ& raw) {
    CQ c = canonical_variables(core(raw));
    CQ key = c.normalized();
    if (!seen_.insert(key).second) return;
    for (std::size_t i = 0; i < all_.size(); ++i) {
      if (dropped_[i]) continue;
      if (opts_.prune_subsumed ? contained_in(c, all_[i]) : isomorphic(c, all_[i])) {
        return;
      }
    }
    if (opts_.prune_subsumed) {
      for (std::size_t i = 0; i < all_.size(); ++i) {
        if (!dropped_[i] && contained_in(all_[i], c)) dropped_[i] = true;
      }
    }
    if (all_.size() >= opts_.cap) {
      overflow_ = true;
      return;
    }
    all_.push_back(c);
    dropped_.push_back(false);
    queue_.push_back(all_.size() - 1);
  }

  RewriteOptions opts_;
  bool overflow_ = false;
  TgdSet rules_;
  std::vector<CQ> all_;
  std::vector<bool> dropped_;
  std::set<CQ> seen_;
  std::deque<std::size_t> queue_;
};

}  // namespace

CQ canonical_variables(const CQ& q) {
  std::set<std::string> reserved;
  for (const Term& x : q.answer_vars()) reserved.insert(std::string(x.name()));
  TermMap m;
  for (const Term& x : q.answer_vars()) m[x] = x;
  int next = 0;
  for (const Atom& a : q.body()) {
    for (const Term& t : a.args) {
      if (!t.is_variable() || m.count(t)) continue;
      std::string name;
      do {
        name = "v" + std::to_string(++next);
      } while (reserved.count(name));
      m[t] = Term::variable(name);
    }
  }
  return CQ(q.answer_vars(), substitute(m, q.body()));
}

UCQ ucq_rewrite(const TgdSet& sigma, const UCQ& q, const RewriteOptions& opts) {
  PartialRewriting r = ucq_rewrite_partial(sigma, q, opts);
  if (!r.complete) {
    throw Error(Errc::rewriting_cap_exceeded,
                "rewriting exceeded " + std::to_string(opts.cap) + " disjuncts");
  }
  return std::move(r.ucq);
}

PartialRewriting ucq_rewrite_partial(const TgdSet& sigma, const UCQ& q,
                                     const RewriteOptions& opts) {
  Rewriter r(sigma, opts);
  PartialRewriting out;
  out.ucq = r.run(q);
  out.complete = !r.overflow();
  return out;
}

UCQ ucq_rewrite_linear(const TgdSet& sigma, const UCQ& q, const RewriteOptions& opts) {
  if (!is_linear(sigma)) {
    throw Error(Errc::not_linear, "linear rewriting requires single-atom bodies");
  }
  return ucq_rewrite(sigma, q, opts);
}

UCQ normalize_ucq(const UCQ& q) {
  std::vector<CQ> cores;
  for (const CQ& c : q.disjuncts()) cores.push_back(canonical_variables(core(c)));
  std::vector<bool> drop(cores.size(), false);
  for (std::size_t i = 0; i < cores.size(); ++i) {
    for (std::size_t j = 0; j < cores.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      // Keep the earlier of two equivalent disjuncts.
      if (contained_in(cores[i], cores[j]) &&
          (j < i || !contained_in(cores[j], cores[i]))) {
        drop[i] = true;
      }
    }
  }
  std::vector<CQ> out;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    if (!drop[i]) out.push_back(cores[i]);
  }
  return UCQ(std::move(out));
}

}  // namespace gtgd
