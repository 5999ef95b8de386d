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

#include "gtgd/decision.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <set>

#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/rewrite.hpp"
#include "gtgd/treewidth.hpp"
#include "gtgd/witness.hpp"

namespace gtgd {
namespace {

Tuple answer_constants(const CQ& c) {
  Tuple out;
  for (const Term& x : c.answer_vars()) out.push_back(as_constant(x));
  return out;
}

// Whether t answers (sigma, q) on d; nullopt when the budget cannot tell.
std::optional<bool> omq_holds(const TgdSet& sigma, const UCQ& q, const Instance& d,
                              const Tuple& t, const DecisionBudget& b) {
  if (q.empty()) return false;
  if (is_guarded(sigma)) {
    OMQ local;
    local.sigma = sigma;
    local.query = q;
    try {
      return fpt_eval_omq(local, d, t, b.fpt);
    } catch (const Error& e) {
      if (e.code() == Errc::budget_exceeded || e.code() == Errc::type_space_cap_exceeded) {
        return std::nullopt;
      }
      throw;
    }
  }
  ChaseResult r = chase(d, sigma, ChaseBudget::levels(b.chase_levels, b.atom_cap));
  if (holds(q, r.instance, t)) return true;
  if (r.terminated) return false;
  return std::nullopt;
}

bool entails_rule(const TgdSet& sigma, const TGD& rule, const DecisionBudget& b) {
  Instance body = canonical_database(rule.body());
  std::vector<Term> frontier = rule.frontier();
  CQ head(frontier, rule.head());
  Tuple t;
  for (const Term& x : frontier) t.push_back(as_constant(x));
  return omq_holds(sigma, UCQ{head}, body, t, b).value_or(false);
}

bool over_schema(const CQ& c, const Schema& s) {
  return std::all_of(c.body().begin(), c.body().end(), [&](const Atom& a) {
    auto ar = s.arity(a.pred);
    return ar && *ar == static_cast<int>(a.arity());
  });
}

Verdict yes(std::string detail) {
  Verdict v;
  v.answer = Answer::yes;
  v.detail = std::move(detail);
  return v;
}

Verdict no(Instance d, Tuple t, std::string detail) {
  Verdict v;
  v.answer = Answer::no;
  v.counterexample = std::move(d);
  v.tuple = std::move(t);
  v.detail = std::move(detail);
  return v;
}

std::vector<std::string> rule_strings(const TgdSet& sigma) {
  std::vector<std::string> out;
  for (const TGD& t : sigma) out.push_back(to_string(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Verdict contains_one(const CQ& p1, const CQS& s2, const DecisionBudget& b) {
  Instance d = canonical_database(p1);
  Tuple t = answer_constants(p1);
  std::optional<bool> in = omq_holds(s2.sigma, s2.query, d, t, b);
  if (in == true) return yes("chase of the disjunct satisfies the right side");
  ChaseResult run = chase(d, s2.sigma, ChaseBudget::fixpoint(std::min<std::uint64_t>(b.atom_cap, 5000)));
  if (run.terminated) {
    if (!holds(s2.query, run.instance, t)) {
      return no(run.instance, t, "terminating chase of the disjunct");
    }
    return yes("terminating chase of the disjunct satisfies the right side");
  }
  ModelSearchOptions opts;
  opts.dom_cap = b.dom_cap;
  opts.node_cap = b.node_cap;
  ModelFilter ok = [&](const Instance& m, const std::vector<Atom>&) {
    return !holds(s2.query, m, t);
  };
  ModelSearchResult found = search_model(d, s2.sigma, ok, opts);
  if (found.model) return no(*found.model, t, "finite model of the dependencies");
  if (in == false) {
    Verdict v;
    v.answer = Answer::no;
    v.tuple = t;
    v.detail = "no finite counterexample within " + std::to_string(b.dom_cap) + " elements";
    return v;
  }
  Verdict v;
  v.detail = "chase depth " + std::to_string(b.chase_levels) + " and model search inconclusive";
  return v;
}

}  // namespace

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown-at-budget";
  }
  return "unknown-at-budget";
}

Verdict cqs_contains(const CQS& s1, const CQS& s2, const DecisionBudget& budget) {
  if (rule_strings(s1.sigma) != rule_strings(s2.sigma)) {
    throw Error(Errc::differing_sigma, "containment of CQSs requires equal dependencies");
  }
  if (!s1.query.empty() && !s2.query.empty() && s1.query.arity() != s2.query.arity()) {
    throw Error(Errc::arity_mismatch, "queries of different arity");
  }
  std::vector<std::future<Verdict>> parts;
  for (const CQ& p1 : s1.query.disjuncts()) {
    parts.push_back(std::async(std::launch::async, contains_one, std::cref(p1),
                               std::cref(s2), std::cref(budget)));
  }
  std::vector<Verdict> results;
  for (auto& f : parts) results.push_back(f.get());
  for (Verdict& v : results) {
    if (v.answer == Answer::no) return std::move(v);
  }
  for (Verdict& v : results) {
    if (v.answer == Answer::unknown) return std::move(v);
  }
  return yes("every disjunct maps into the right side over its chase");
}

Verdict omq_contains(const OMQ& q1, const OMQ& q2, const DecisionBudget& budget) {
  if (!(q1.data_schema == q2.data_schema)) {
    throw Error(Errc::schema_mismatch, "OMQs over different data schemas");
  }
  if (!q1.query.empty() && !q2.query.empty() && q1.query.arity() != q2.query.arity()) {
    throw Error(Errc::arity_mismatch, "queries of different arity");
  }
  if (q1.query.empty()) return yes("left query is empty");
  Schema s = q1.data_schema;
  if (s.empty()) {
    s = q1.extended_schema();
    s.merge(q2.extended_schema());
  }

  RewriteOptions ro;
  ro.cap = budget.rewrite_cap;
  PartialRewriting rewriting = ucq_rewrite_partial(q1.sigma, q1.query, ro);
  std::vector<CQ> candidates;
  for (const CQ& c : rewriting.ucq.disjuncts()) {
    if (over_schema(c, s)) candidates.push_back(c);
  }
  bool undecided = false;
  for (const CQ& c : candidates) {
    Instance d = canonical_database(c);
    Tuple t = answer_constants(c);
    std::optional<bool> in = omq_holds(q2.sigma, q2.query, d, t, budget);
    if (in == false) return no(d, t, "database of a rewriting disjunct of the left side");
    if (!in) undecided = true;
  }
  if (rewriting.complete && !undecided) {
    return yes("every disjunct of the complete rewriting of the left side answers the right side");
  }

  bool implied = std::all_of(q1.sigma.begin(), q1.sigma.end(), [&](const TGD& r) {
    return entails_rule(q2.sigma, r, budget);
  });
  if (implied) {
    bool all = true;
    for (const CQ& p1 : q1.query.disjuncts()) {
      Instance d = canonical_database(p1);
      Tuple t = answer_constants(p1);
      std::optional<bool> in = omq_holds(q2.sigma, q2.query, d, t, budget);
      if (in == true) continue;
      all = false;
      if (in == false && over_schema(p1, s)) {
        return no(d, t, "database of a disjunct of the left side");
      }
    }
    if (all) {
      return yes("right dependencies entail the left ones and every left disjunct answers the right side");
    }
  }

  std::size_t examined = 0;
  for (const CQ& c : candidates) {
    for (const Contraction& con : contractions(c)) {
      if (++examined > budget.search_cap) break;
      Instance d = canonical_database(con.cq);
      Tuple t = answer_constants(con.cq);
      if (omq_holds(q2.sigma, q2.query, d, t, budget) == false) {
        return no(d, t, "contraction of a rewriting disjunct of the left side");
      }
    }
  }
  Verdict v;
  v.detail = "no counterexample among " + std::to_string(examined) + " candidate databases";
  return v;
}

Verdict omq_equiv_k(const OMQ& q, int k, const DecisionBudget& budget) {
  require_arity_threshold(q.extended_schema(), k);
  OMQ compact = compact_approx(q, k, budget.approx);
  Verdict v = omq_contains(q, compact, budget);
  if (v.answer != Answer::yes) return v;
  try {
    v.witness_omq = ucq_k_approx(q, k, budget.approx);
  } catch (const Error& e) {
    if (e.code() != Errc::enumeration_cap_exceeded) throw;
    v.witness_omq = compact;
  }
  v.witness_ucq = v.witness_omq->query;
  return v;
}

Verdict cqs_equiv_k(const CQS& s, int k, const DecisionBudget& budget) {
  CQS approx = cqs_k_approx(s, k, budget.approx);
  Verdict v = cqs_contains(s, approx, budget);
  if (v.answer == Answer::yes) v.witness_ucq = approx.query;
  return v;
}

CQ sigma_minimal_cq(const CQ& q, const TgdSet& sigma, const DecisionBudget& budget) {
  CQ best = core(q);
  if (sigma.empty()) return best;
  Instance d = canonical_database(q);
  Instance closure;
  if (is_guarded(sigma)) {
    closure = ground_chase(d, sigma);
  } else {
    std::vector<Term> adom = d.adom();
    closure = restrict(chase(d, sigma, ChaseBudget::levels(budget.chase_levels, budget.atom_cap)).instance,
                       std::set<Term>(adom.begin(), adom.end()));
  }
  std::vector<Term> answers = q.answer_vars();
  std::sort(answers.begin(), answers.end());
  std::vector<Term> rest;
  for (const Term& v : q.variables()) {
    if (!std::binary_search(answers.begin(), answers.end(), v)) rest.push_back(v);
  }
  if (rest.size() > 20) {
    throw Error(Errc::budget_exceeded, "too many variables for the minimal search");
  }
  std::size_t limit = best.variables().size();
  Tuple t = answer_constants(q);
  for (std::size_t extra = 0; answers.size() + extra < limit; ++extra) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) == extra) masks.push_back(mask);
    }
    for (std::uint32_t mask : masks) {
      std::set<Term> keep;
      for (const Term& x : answers) keep.insert(as_constant(x));
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (mask >> i & 1) keep.insert(as_constant(rest[i]));
      }
      std::vector<Atom> atoms = freeze_inverse(restrict(closure, keep).atoms());
      if (atoms.empty()) continue;
      if (variables_of(atoms).size() != keep.size()) continue;
      CQ p(q.answer_vars(), atoms);
      Instance dp = canonical_database(p);
      if (omq_holds(sigma, UCQ{q}, dp, t, budget) == true) return core(p);
    }
  }
  return best;
}

bool cq_k_equiv_baseline(const CQ& q, int k) { return cq_treewidth(core(q)) <= k; }

}  // namespace gtgd
