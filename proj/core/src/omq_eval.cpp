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

#include "gtgd/omq_eval.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/linearize.hpp"

namespace gtgd {
namespace {

constexpr int kUnused = -1;
constexpr int kHidden = 0;

// A partial match of disjunct j: the atoms in `mask` are mapped, f gives per
// variable a visible term index, kHidden for a null below the current node,
// or kUnused. Hidden variables have all their atoms in `mask`.
struct Match {
  std::uint32_t j = 0;
  std::uint64_t mask = 0;
  std::vector<int> f;

  friend bool operator<(const Match& a, const Match& b) {
    if (a.j != b.j) return a.j < b.j;
    if (a.mask != b.mask) return a.mask < b.mask;
    return a.f < b.f;
  }
  friend bool operator==(const Match& a, const Match& b) {
    return a.j == b.j && a.mask == b.mask && a.f == b.f;
  }
};

using MatchSet = std::set<Match>;

struct Disjunct {
  std::vector<Symbol> preds;
  std::vector<std::vector<int>> args;
  std::vector<std::uint64_t> occurs;
  std::vector<bool> answer;
  std::vector<int> answer_order;
  std::uint64_t full = 0;
  std::size_t vars = 0;
};

class ForestEvaluator {
 public:
  explicit ForestEvaluator(const UCQ& q) {
    for (const CQ& c : q.disjuncts()) {
      if (c.body().size() > 64) {
        throw Error(Errc::size_limit_exceeded, "disjunct with more than 64 atoms");
      }
      Disjunct d;
      std::vector<Term> vars = c.variables();
      auto index = [&](const Term& t) {
        if (!t.is_variable()) {
          throw Error(Errc::precondition_violated,
                      "query constant " + std::string(t.name()));
        }
        return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), t) -
                                vars.begin());
      };
      d.vars = vars.size();
      d.occurs.assign(vars.size(), 0);
      d.answer.assign(vars.size(), false);
      for (std::size_t i = 0; i < c.body().size(); ++i) {
        const Atom& a = c.body()[i];
        d.preds.push_back(a.pred);
        std::vector<int> args;
        for (const Term& t : a.args) {
          int v = index(t);
          args.push_back(v);
          d.occurs[static_cast<std::size_t>(v)] |= std::uint64_t{1} << i;
        }
        d.args.push_back(std::move(args));
        d.full |= std::uint64_t{1} << i;
      }
      for (const Term& x : c.answer_vars()) {
        int v = index(x);
        d.answer[static_cast<std::size_t>(v)] = true;
        d.answer_order.push_back(v);
      }
      disjuncts_.push_back(std::move(d));
    }
  }

  const std::vector<Disjunct>& disjuncts() const { return disjuncts_; }

  // Single-atom matches onto the atom pred(vals).
  void match_atom(Symbol pred, const std::vector<int>& vals, MatchSet& out) const {
    for (std::uint32_t j = 0; j < disjuncts_.size(); ++j) {
      const Disjunct& d = disjuncts_[j];
      for (std::size_t i = 0; i < d.preds.size(); ++i) {
        if (d.preds[i] != pred || d.args[i].size() != vals.size()) continue;
        Match m{j, std::uint64_t{1} << i, std::vector<int>(d.vars, kUnused)};
        bool ok = true;
        for (std::size_t p = 0; p < vals.size() && ok; ++p) {
          int& slot = m.f[static_cast<std::size_t>(d.args[i][p])];
          ok = slot == kUnused || slot == vals[p];
          slot = vals[p];
        }
        if (ok) out.insert(std::move(m));
      }
    }
  }

  // Extends a by the atoms of b outside a; a's assignment wins.
  bool join(const Match& a, const Match& b, Match& out) const {
    std::uint64_t extra = b.mask & ~a.mask;
    if (extra == 0) return false;
    const Disjunct& d = disjuncts_[a.j];
    for (std::size_t i = 0; i < d.args.size(); ++i) {
      if (!(extra >> i & 1)) continue;
      for (int v : d.args[i]) {
        int fa = a.f[static_cast<std::size_t>(v)];
        if (fa == kUnused) continue;
        if (fa == kHidden || b.f[static_cast<std::size_t>(v)] != fa) return false;
      }
    }
    out.j = a.j;
    out.mask = a.mask | b.mask;
    out.f = a.f;
    for (std::size_t v = 0; v < out.f.size(); ++v) {
      if (out.f[v] == kUnused) out.f[v] = b.f[v];
    }
    return true;
  }

  void close(MatchSet& set) const {
    std::vector<Match> items(set.begin(), set.end());
    Match m;
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t k = 0; k <= i; ++k) {
        for (int dir = 0; dir < 2; ++dir) {
          const Match& a = dir ? items[k] : items[i];
          const Match& b = dir ? items[i] : items[k];
          if (a.j != b.j || !join(a, b, m)) continue;
          if (set.insert(m).second) items.push_back(m);
        }
      }
    }
  }

  // Matches of the full disjunct combined from `items` by covering the
  // lowest unmatched atom first.
  std::vector<Match> complete(const MatchSet& items) const {
    std::vector<std::vector<Match>> by_j(disjuncts_.size());
    for (const Match& m : items) by_j[m.j].push_back(m);
    std::vector<Match> out;
    MatchSet seen;
    std::function<void(const Match&)> extend = [&](const Match& cur) {
      if (!seen.insert(cur).second) return;
      const Disjunct& d = disjuncts_[cur.j];
      if (cur.mask == d.full) {
        out.push_back(cur);
        return;
      }
      int bit = std::countr_one(cur.mask);
      Match next;
      for (const Match& b : by_j[cur.j]) {
        if ((b.mask >> bit & 1) && join(cur, b, next)) extend(next);
      }
    };
    for (const auto& group : by_j) {
      for (const Match& m : group) {
        if (m.mask & 1) extend(m);
      }
    }
    return out;
  }

  // Values above `visible` become hidden; matches that cannot hide them drop.
  bool hide_above(Match& m, int visible) const {
    const Disjunct& d = disjuncts_[m.j];
    for (std::size_t v = 0; v < m.f.size(); ++v) {
      if (m.f[v] <= visible) continue;
      if (d.answer[v] || (d.occurs[v] & ~m.mask) != 0) return false;
      m.f[v] = kHidden;
    }
    return true;
  }

 private:
  std::vector<Disjunct> disjuncts_;
};

void translate(const MatchSet& from, const std::vector<int>& args, MatchSet& to) {
  for (Match m : from) {
    for (int& x : m.f) {
      if (x > 0) x = args[static_cast<std::size_t>(x - 1)];
    }
    to.insert(std::move(m));
  }
}

std::vector<int> guard_values(const SigmaType& t) {
  std::vector<int> out;
  for (const Term& x : t.guard.args) out.push_back(pattern_index(x));
  return out;
}

std::vector<MatchSet> match_table(const Linearization& lin, const ForestEvaluator& ev) {
  std::vector<MatchSet> table(lin.size());
  for (std::size_t s = 0; s < lin.size(); ++s) {
    ev.match_atom(lin.type(s).guard.pred, guard_values(lin.type(s)), table[s]);
    ev.close(table[s]);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < lin.size(); ++s) {
      int k = lin.type(s).arity();
      MatchSet next = table[s];
      for (const TypeSuccessor& app : lin.successors(s)) {
        MatchSet local;
        for (std::size_t c = 0; c < app.children.size(); ++c) {
          translate(table[app.children[c]], app.terms[c], local);
        }
        if (local.empty()) continue;
        if (app.fresh > 0) ev.close(local);
        for (Match m : local) {
          if (ev.hide_above(m, k)) next.insert(std::move(m));
        }
      }
      if (next.size() == table[s].size()) continue;
      ev.close(next);
      table[s] = std::move(next);
      changed = true;
    }
  }
  return table;
}

OmqAnswers forest_answers(const OMQ& q, const Instance& d, const FptOptions& opts) {
  if (std::all_of(q.sigma.begin(), q.sigma.end(), [](const TGD& t) { return t.is_full(); })) {
    return {eval(q.query, ground_chase(d, q.sigma)), "exact", 0};
  }
  BaseDatabase base = linearize_with_base(d, q.sigma, false, opts.type_cap);
  ForestEvaluator ev(q.query);
  std::vector<MatchSet> table = match_table(base.sigma_star, ev);

  std::vector<Term> adom = d.adom();
  auto value = [&](const Term& t) {
    return static_cast<int>(std::lower_bound(adom.begin(), adom.end(), t) -
                            adom.begin()) + 1;
  };
  MatchSet root;
  for (const Atom& a : base.passthrough) {
    std::vector<int> vals;
    for (const Term& t : a.args) vals.push_back(value(t));
    ev.match_atom(a.pred, vals, root);
  }
  for (const auto& [id, args] : base.roots) {
    std::vector<int> vals;
    for (const Term& t : args) vals.push_back(value(t));
    translate(table[id], vals, root);
  }

  OmqAnswers out;
  out.status = "exact";
  for (const Match& m : ev.complete(root)) {
    const Disjunct& dj = ev.disjuncts()[m.j];
    Tuple t;
    for (int v : dj.answer_order) {
      t.push_back(adom[static_cast<std::size_t>(m.f[static_cast<std::size_t>(v)] - 1)]);
    }
    out.answers.insert(std::move(t));
  }
  return out;
}

OmqAnswers bounded_answers(const OMQ& q, const Instance& d, const FptOptions& opts) {
  BaseDatabase base = linearize_with_base(d, q.sigma, true, opts.type_cap);
  std::uint64_t g = opts.level_bound;
  if (g == 0) {
    std::size_t size = 1;
    for (const CQ& c : q.query.disjuncts()) size = std::max(size, c.body().size());
    g = std::max<std::uint64_t>(1, base.sigma_star.size() * size);
  }
  ChaseResult run = chase(base.instance, base.sigma_star.rules(),
                          ChaseBudget::levels(g, opts.atom_cap));
  std::vector<Term> adom = d.adom();
  OmqAnswers out;
  for (const Tuple& t : eval(q.query, run.instance)) {
    bool over_adom = std::all_of(t.begin(), t.end(), [&](const Term& x) {
      return std::binary_search(adom.begin(), adom.end(), x);
    });
    if (over_adom) out.answers.insert(t);
  }
  out.levels = 0;
  for (int l : run.instance.levels()) {
    out.levels = std::max<std::uint64_t>(out.levels, static_cast<std::uint64_t>(l));
  }
  if (run.terminated) {
    out.status = "stable";
  } else if (run.instance.size() >= opts.atom_cap) {
    out.status = "no-at-depth";
  } else {
    out.status = "exact";
  }
  return out;
}

}  // namespace

std::vector<std::vector<TypeMatch>> type_matches(const Linearization& lin,
                                                 const UCQ& q) {
  ForestEvaluator ev(q);
  std::vector<std::vector<TypeMatch>> out;
  for (const MatchSet& set : match_table(lin, ev)) {
    std::vector<TypeMatch> row;
    for (const Match& m : set) row.push_back({m.j, m.mask, m.f});
    out.push_back(std::move(row));
  }
  return out;
}

OmqAnswers fpt_answers(const OMQ& q, const Instance& d, const FptOptions& opts) {
  if (!is_guarded(q.sigma)) {
    throw Error(Errc::not_guarded, "OMQ evaluation requires guarded dependencies");
  }
  if (!q.data_schema.empty()) {
    for (const Atom& a : d) {
      auto ar = q.data_schema.arity(a.pred);
      if (!ar || *ar != static_cast<int>(a.arity())) {
        throw Error(Errc::schema_mismatch,
                    "database atom outside the data schema: " + to_string(a));
      }
    }
  }
  if (opts.strategy == FptStrategy::level_bounded) return bounded_answers(q, d, opts);
  return forest_answers(q, d, opts);
}

bool fpt_eval_omq(const OMQ& q, const Instance& d, const Tuple& answer,
                  const FptOptions& opts) {
  if (answer.size() != q.query.arity()) {
    throw Error(Errc::arity_mismatch, "answer tuple arity differs from the query");
  }
  OmqAnswers r = fpt_answers(q, d, opts);
  if (r.answers.count(answer)) return true;
  if (r.status == "no-at-depth") {
    throw Error(Errc::budget_exceeded,
                "no-at-depth: atom cap reached after " + std::to_string(r.levels) +
                    " levels");
  }
  return false;
}

}  // namespace gtgd
