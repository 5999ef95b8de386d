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

#include "gtgd/hom.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "gtgd/error.hpp"

namespace gtgd {

std::size_t AtomIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.term * 0x9e3779b97f4a7c15ULL;
  h ^= (static_cast<std::uint64_t>(k.pred) << 20) ^ k.pos;
  h *= 0xbf58476d1ce4e5b9ULL;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

AtomIndex::AtomIndex(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (std::uint32_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    by_pred_[a.pred.id()].push_back(i);
    for (std::size_t p = 0; p < a.args.size(); ++p) {
      by_arg_[Key{a.pred.id(), static_cast<std::uint32_t>(p), a.args[p].key()}]
          .push_back(i);
    }
  }
}

namespace {
const std::vector<std::uint32_t> kNone;
}  // namespace

const std::vector<std::uint32_t>& AtomIndex::with_pred(Symbol p) const {
  auto it = by_pred_.find(p.id());
  return it == by_pred_.end() ? kNone : it->second;
}

const std::vector<std::uint32_t>& AtomIndex::with_arg(Symbol p, std::size_t pos,
                                                      const Term& t) const {
  auto it = by_arg_.find(Key{p.id(), static_cast<std::uint32_t>(pos), t.key()});
  return it == by_arg_.end() ? kNone : it->second;
}

namespace {

class Search {
 public:
  Search(const std::vector<Atom>& source, const AtomIndex& target,
         const TermMap& fixed, const HomCallback& fn)
      : target_(target), fixed_(fixed), fn_(fn) {
    terms_ = terms_of(source);
    value_.assign(terms_.size(), std::nullopt);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      auto it = fixed.find(terms_[i]);
      if (it != fixed.end()) value_[i] = it->second;
    }
    for (const Atom& a : source) {
      std::vector<int> ids;
      for (const Term& t : a.args) ids.push_back(slot(t));
      atoms_.push_back({a.pred, std::move(ids)});
    }
    done_.assign(atoms_.size(), false);
  }

  bool run() { return step(0); }

 private:
  struct SourceAtom {
    Symbol pred;
    std::vector<int> slots;
  };

  int slot(const Term& t) const {
    return static_cast<int>(std::lower_bound(terms_.begin(), terms_.end(), t) -
                            terms_.begin());
  }

  const std::vector<std::uint32_t>& candidates(const SourceAtom& a) const {
    const std::vector<std::uint32_t>* best = &target_.with_pred(a.pred);
    for (std::size_t p = 0; p < a.slots.size(); ++p) {
      const auto& v = value_[a.slots[p]];
      if (!v) continue;
      const auto& c = target_.with_arg(a.pred, p, *v);
      if (c.size() < best->size()) best = &c;
    }
    return *best;
  }

  bool step(std::size_t matched) {
    if (matched == atoms_.size()) return emit();
    std::size_t pick = atoms_.size();
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (done_[i]) continue;
      std::size_t n = candidates(atoms_[i]).size();
      if (n < best) {
        best = n;
        pick = i;
        if (n == 0) return true;
      }
    }
    const SourceAtom& a = atoms_[pick];
    const auto& cands = candidates(a);
    done_[pick] = true;
    std::vector<int> bound;
    for (std::uint32_t id : cands) {
      const Atom& t = target_.atom(id);
      if (t.args.size() != a.slots.size()) continue;
      bound.clear();
      bool ok = true;
      for (std::size_t p = 0; p < a.slots.size() && ok; ++p) {
        auto& v = value_[a.slots[p]];
        if (v) {
          ok = *v == t.args[p];
        } else {
          v = t.args[p];
          bound.push_back(a.slots[p]);
        }
      }
      bool keep_going = true;
      if (ok) keep_going = step(matched + 1);
      for (int s : bound) value_[s].reset();
      if (!keep_going) {
        done_[pick] = false;
        return false;
      }
    }
    done_[pick] = false;
    return true;
  }

  bool emit() {
    TermMap h(fixed_);
    for (std::size_t i = 0; i < terms_.size(); ++i) h[terms_[i]] = *value_[i];
    return fn_(h);
  }

  const AtomIndex& target_;
  const TermMap& fixed_;
  const HomCallback& fn_;
  std::vector<Term> terms_;
  std::vector<std::optional<Term>> value_;
  std::vector<SourceAtom> atoms_;
  std::vector<bool> done_;
};

HomResult collect(const std::vector<Atom>& source, const AtomIndex& target,
                  const TermMap& fixed, HomMode mode) {
  HomResult r;
  for_each_homomorphism(source, target, fixed, [&](const TermMap& h) {
    ++r.count;
    if (mode != HomMode::count) r.homomorphisms.push_back(h);
    return mode != HomMode::first;
  });
  return r;
}

// Builds the answer-pinning map; false when the tuple conflicts with
// repeated answer variables.
bool pin_answers(const CQ& q, const Tuple& answer, TermMap& fixed) {
  if (answer.size() != q.arity()) {
    throw Error(Errc::arity_mismatch, "answer tuple of arity " +
                                          std::to_string(answer.size()) +
                                          " for query of arity " +
                                          std::to_string(q.arity()));
  }
  for (std::size_t i = 0; i < answer.size(); ++i) {
    auto [it, fresh] = fixed.emplace(q.answer_vars()[i], answer[i]);
    if (!fresh && it->second != answer[i]) return false;
  }
  return true;
}

bool injective(const TermMap& h) {
  std::set<Term> image;
  for (const auto& [k, v] : h) {
    if (!image.insert(v).second) return false;
  }
  return true;
}

}  // namespace

bool for_each_homomorphism(const std::vector<Atom>& source,
                           const AtomIndex& target, const TermMap& fixed,
                           const HomCallback& fn) {
  Search s(source, target, fixed, fn);
  return s.run();
}

HomResult find_homomorphisms(const std::vector<Atom>& source,
                             const Instance& target, const TermMap& fixed,
                             HomMode mode) {
  return collect(source, AtomIndex(target), fixed, mode);
}

HomResult find_homomorphisms(const CQ& source, const Instance& target,
                             const TermMap& fixed, HomMode mode) {
  return find_homomorphisms(source.body(), target, fixed, mode);
}

HomResult find_homomorphisms(const Instance& source, const Instance& target,
                             const TermMap& fixed, HomMode mode) {
  return find_homomorphisms(source.atoms(), target, fixed, mode);
}

std::optional<TermMap> find_homomorphism(const std::vector<Atom>& source,
                                         const AtomIndex& target,
                                         const TermMap& fixed) {
  std::optional<TermMap> out;
  for_each_homomorphism(source, target, fixed, [&](const TermMap& h) {
    out = h;
    return false;
  });
  return out;
}

bool has_homomorphism(const std::vector<Atom>& source, const Instance& target,
                      const TermMap& fixed) {
  return find_homomorphism(source, AtomIndex(target), fixed).has_value();
}

std::set<Tuple> eval(const CQ& q, const AtomIndex& index) {
  // Answer variables are fixed one at a time, keeping only prefixes that
  // extend to a homomorphism.
  std::set<Tuple> out;
  const std::vector<Term>& answers = q.answer_vars();
  TermMap fixed;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (!find_homomorphism(q.body(), index, fixed)) return;
    if (i == answers.size()) {
      Tuple t;
      t.reserve(answers.size());
      for (const Term& x : answers) t.push_back(fixed.at(x));
      out.insert(std::move(t));
      return;
    }
    const Term& x = answers[i];
    if (fixed.count(x)) {
      extend(i + 1);
      return;
    }
    std::set<Term> candidates;
    for (const Atom& a : q.body()) {
      auto pos = std::find(a.args.begin(), a.args.end(), x);
      if (pos == a.args.end()) continue;
      std::size_t p = static_cast<std::size_t>(pos - a.args.begin());
      for (std::uint32_t id : index.with_pred(a.pred)) {
        const Atom& t = index.atom(id);
        if (t.args.size() == a.args.size()) candidates.insert(t.args[p]);
      }
      break;
    }
    for (const Term& c : candidates) {
      fixed[x] = c;
      extend(i + 1);
    }
    fixed.erase(x);
  };
  extend(0);
  return out;
}

std::set<Tuple> eval(const CQ& q, const Instance& inst) {
  return eval(q, AtomIndex(inst));
}

std::set<Tuple> eval(const UCQ& q, const Instance& inst) {
  AtomIndex index(inst);
  std::set<Tuple> out;
  for (const CQ& d : q.disjuncts()) {
    auto part = eval(d, index);
    out.insert(part.begin(), part.end());
  }
  return out;
}

bool holds(const CQ& q, const AtomIndex& index, const Tuple& answer) {
  TermMap fixed;
  if (!pin_answers(q, answer, fixed)) return false;
  return find_homomorphism(q.body(), index, fixed).has_value();
}

bool holds(const CQ& q, const Instance& inst, const Tuple& answer) {
  return holds(q, AtomIndex(inst), answer);
}

bool holds(const UCQ& q, const Instance& inst, const Tuple& answer) {
  AtomIndex index(inst);
  for (const CQ& d : q.disjuncts()) {
    if (holds(d, index, answer)) return true;
  }
  return false;
}

bool holds_io(const Instance& inst, const CQ& q, const Tuple& answer) {
  TermMap fixed;
  if (!pin_answers(q, answer, fixed)) return false;
  std::set<Term> distinct(answer.begin(), answer.end());
  if (distinct.size() != answer.size()) {
    throw Error(Errc::precondition_violated, "answer constants not distinct");
  }
  bool any = false;
  bool all_injective = true;
  for_each_homomorphism(q.body(), AtomIndex(inst), fixed, [&](const TermMap& h) {
    any = true;
    all_injective = injective(h);
    return all_injective;
  });
  return any && all_injective;
}

std::vector<Contraction> contractions(const CQ& q, std::size_t cap) {
  // Variables in order of first occurrence; a block is named after its
  // answer variable, else its first variable.
  std::vector<Term> vars;
  for (const Atom& a : q.body()) {
    for (const Term& t : a.args) {
      if (std::find(vars.begin(), vars.end(), t) == vars.end()) vars.push_back(t);
    }
  }
  std::set<Term> answers(q.answer_vars().begin(), q.answer_vars().end());
  std::size_t n = vars.size();
  std::vector<Contraction> out;
  std::set<CQ> seen;
  std::vector<int> block(n, 0);
  std::size_t visited = 0;
  // Restricted growth strings enumerate each set partition once.
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int blocks) {
    if (i == n) {
      if (++visited > cap) {
        throw Error(Errc::enumeration_cap_exceeded, "too many contractions");
      }
      std::vector<std::optional<Term>> rep(blocks);
      for (std::size_t v = 0; v < n; ++v) {
        auto& r = rep[block[v]];
        bool is_answer = answers.count(vars[v]) != 0;
        if (!r) {
          r = vars[v];
        } else if (is_answer) {
          if (answers.count(*r)) return;
          r = vars[v];
        }
      }
      TermMap quotient;
      for (std::size_t v = 0; v < n; ++v) quotient[vars[v]] = *rep[block[v]];
      CQ c(q.answer_vars(), substitute(quotient, q.body()));
      if (seen.insert(c.normalized()).second) {
        out.push_back({std::move(c), std::move(quotient)});
      }
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

Contraction io_witness_contraction(const Instance& inst, const CQ& q,
                                   const Tuple& answer) {
  if (!holds(q, inst, answer)) {
    throw Error(Errc::precondition_violated,
                "instance does not satisfy the query at the given tuple");
  }
  std::vector<Contraction> all = contractions(q);
  std::stable_sort(all.begin(), all.end(),
                   [](const Contraction& a, const Contraction& b) {
                     return a.cq.variables().size() < b.cq.variables().size();
                   });
  for (Contraction& c : all) {
    if (holds_io(inst, c.cq, answer)) return std::move(c);
  }
  throw Error(Errc::precondition_violated, "no injective witness contraction");
}

bool contained_in(const CQ& a, const CQ& b) {
  if (a.arity() != b.arity()) return false;
  Instance frozen = canonical_database(a);
  TermMap fixed;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    Term target = as_constant(a.answer_vars()[i]);
    auto [it, fresh] = fixed.emplace(b.answer_vars()[i], target);
    if (!fresh && it->second != target) return false;
  }
  return has_homomorphism(b.body(), frozen, fixed);
}

bool equivalent(const CQ& a, const CQ& b) {
  return contained_in(a, b) && contained_in(b, a);
}

bool isomorphic(const CQ& a, const CQ& b) {
  if (a.arity() != b.arity() || a.body().size() != b.body().size()) return false;
  std::vector<Term> va = a.variables();
  std::vector<Term> vb = b.variables();
  if (va.size() != vb.size() || schema_of(a.body()) != schema_of(b.body())) {
    return false;
  }
  Instance frozen = canonical_database(b);
  TermMap fixed;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    Term target = as_constant(b.answer_vars()[i]);
    auto [it, fresh] = fixed.emplace(a.answer_vars()[i], target);
    if (!fresh && it->second != target) return false;
  }
  bool found = false;
  for_each_homomorphism(a.body(), AtomIndex(frozen), fixed, [&](const TermMap& h) {
    found = injective(h);
    return !found;
  });
  return found;
}

namespace {

// q maps into `body` fixing its answer variables.
bool retracts_to(const CQ& q, const std::vector<Atom>& body) {
  TermMap fixed;
  for (const Term& x : q.answer_vars()) fixed[x] = as_constant(x);
  return has_homomorphism(q.body(), canonical_database(body), fixed);
}

}  // namespace

CQ core(const CQ& q) {
  std::vector<Atom> body = q.body();
  for (std::size_t i = body.size(); i-- > 0;) {
    if (body.size() == 1) break;
    std::vector<Atom> smaller = body;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    if (retracts_to(q, smaller)) body = std::move(smaller);
  }
  if (body.size() <= 8 && body.size() > 1) {
    std::size_t n = body.size();
    std::vector<Atom> best = body;
    for (std::uint32_t mask = 1; mask < (1u << n) - 1; ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) >= best.size()) continue;
      std::vector<Atom> sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) sub.push_back(body[i]);
      }
      if (retracts_to(q, sub)) best = std::move(sub);
    }
    body = std::move(best);
  }
  return CQ(q.answer_vars(), std::move(body));
}

}  // namespace gtgd
