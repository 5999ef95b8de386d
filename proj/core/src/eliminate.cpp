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

#include "gtgd/eliminate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/linearize.hpp"
#include "gtgd/omq_eval.hpp"
#include "gtgd/rewrite.hpp"
#include "gtgd/types.hpp"

namespace gtgd {
namespace {

std::vector<Atom> as_variables(const std::vector<Atom>& atoms, const std::string& prefix) {
  TermMap m;
  for (const Term& t : terms_of(atoms)) {
    m[t] = Term::variable(prefix + std::string(t.name()));
  }
  return substitute(m, atoms);
}

bool includes(const std::vector<Atom>& big, const std::vector<Atom>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Types ordered so that every type follows its side subsets.
std::vector<SigmaType> types_by_size(const TgdSet& sigma, std::size_t cap) {
  std::vector<SigmaType> types = enumerate_types(sigma, cap);
  std::stable_sort(types.begin(), types.end(), [](const SigmaType& a, const SigmaType& b) {
    return a.side.size() < b.side.size();
  });
  return types;
}

struct Piece {
  std::size_t type;
  TypeMatch match;
};

class CoverBuilder {
 public:
  CoverBuilder(const CQ& q, const Linearization& lin, std::vector<Piece> pieces,
               std::size_t cap, std::vector<CQ>& out)
      : q_(q), lin_(lin), pieces_(std::move(pieces)), cap_(cap), out_(out) {
    vars_ = q.variables();
  }

  void run() {
    std::vector<std::size_t> chosen;
    recurse(0, 0, chosen);
  }

 private:
  void recurse(std::size_t atom, std::uint64_t covered, std::vector<std::size_t>& chosen) {
    std::size_t n = q_.body().size();
    while (atom < n && (covered >> atom & 1)) ++atom;
    if (atom == n) {
      emit(covered, chosen);
      return;
    }
    recurse(atom + 1, covered, chosen);
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
      std::uint64_t mask = pieces_[p].match.mask;
      if (!(mask >> atom & 1) || (mask & covered) != 0) continue;
      if ((mask & ((std::uint64_t{1} << atom) - 1)) != 0) continue;
      chosen.push_back(p);
      recurse(atom + 1, covered | mask, chosen);
      chosen.pop_back();
    }
  }

  void emit(std::uint64_t covered, const std::vector<std::size_t>& chosen) {
    if (chosen.empty()) return;
    std::map<Term, Term> parent;
    std::function<Term(const Term&)> find = [&](const Term& t) -> Term {
      auto it = parent.find(t);
      if (it == parent.end() || it->second == t) return t;
      Term r = find(it->second);
      parent[t] = r;
      return r;
    };
    std::set<Term> answers(q_.answer_vars().begin(), q_.answer_vars().end());
    std::set<Term> original(vars_.begin(), vars_.end());
    auto rank = [&](const Term& t) {
      if (answers.count(t)) return 0;
      return original.count(t) ? 1 : 2;
    };
    auto unite = [&](const Term& a, const Term& b) {
      Term x = find(a);
      Term y = find(b);
      if (x == y) return;
      if (rank(y) < rank(x) || (rank(y) == rank(x) && y < x)) std::swap(x, y);
      parent[y] = x;
    };
    std::vector<Atom> body;
    for (std::size_t i = 0; i < q_.body().size(); ++i) {
      if (!(covered >> i & 1)) body.push_back(q_.body()[i]);
    }
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      const Piece& p = pieces_[chosen[c]];
      const SigmaType& t = lin_.type(p.type);
      TermMap rename;
      for (int i = 1; i <= t.arity(); ++i) {
        rename[pattern_term(i)] = Term::variable("_u" + std::to_string(c) + "_" +
                                                 std::to_string(i));
      }
      for (const Atom& a : t.atoms()) body.push_back(substitute(rename, a));
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        int x = p.match.assignment[v];
        if (x > 0) unite(vars_[v], rename.at(pattern_term(x)));
      }
    }
    TermMap u;
    for (const Term& t : terms_of(body)) u[t] = find(t);
    std::vector<Term> ans;
    for (const Term& x : q_.answer_vars()) ans.push_back(find(x));
    out_.push_back(canonical_variables(CQ(std::move(ans), substitute(u, body))));
    if (out_.size() > cap_) {
      throw Error(Errc::rewriting_cap_exceeded,
                  "more than " + std::to_string(cap_) + " disjuncts");
    }
  }

  const CQ& q_;
  const Linearization& lin_;
  std::vector<Piece> pieces_;
  std::size_t cap_;
  std::vector<CQ>& out_;
  std::vector<Term> vars_;
};

}  // namespace

TgdSet completion_rules(const TgdSet& sigma, std::size_t type_cap) {
  if (!is_guarded(sigma)) {
    throw Error(Errc::not_guarded, "completion rules require guarded dependencies");
  }
  TgdSet rules;
  TgdSet root = rooted(sigma);
  std::map<std::pair<Atom, Atom>, std::vector<std::vector<Atom>>> minimal;
  for (const SigmaType& t : types_by_size(sigma, type_cap)) {
    std::vector<Atom> atoms = t.atoms();
    Instance c = ground_chase(Instance(atoms), root);
    for (const Atom& beta : c) {
      if (std::find(atoms.begin(), atoms.end(), beta) != atoms.end()) continue;
      auto& found = minimal[{t.guard, beta}];
      bool dominated = std::any_of(found.begin(), found.end(), [&](const auto& s) {
        return includes(t.side, s);
      });
      if (dominated) continue;
      found.push_back(t.side);
      std::vector<Atom> both = atoms;
      both.push_back(beta);
      both = as_variables(both, "x");
      Atom head = both.back();
      both.pop_back();
      rules.emplace_back(std::move(both), std::vector<Atom>{head});
    }
  }
  if (schema_of(root).contains(root_predicate())) {
    rules.emplace_back(std::vector<Atom>{},
                       std::vector<Atom>{Atom(root_predicate(), {})});
  }
  return rules;
}

OMQ eliminate_existentials(const OMQ& q, const EliminateOptions& opts) {
  if (!is_guarded(q.sigma)) {
    throw Error(Errc::not_guarded, "elimination requires guarded dependencies");
  }
  if (is_full(q.sigma)) return q;
  Linearization lin = linearize(q.sigma, opts.type_cap);
  std::vector<std::vector<TypeMatch>> table = type_matches(lin, q.query);

  // Keep a match only at the types with subset-minimal side sets having it.
  using Key = std::tuple<Atom, std::size_t, std::uint64_t, std::vector<int>>;
  std::map<Key, std::vector<std::size_t>> holders;
  std::vector<std::size_t> order(lin.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lin.type(a).side.size() < lin.type(b).side.size();
  });
  std::vector<std::vector<Piece>> pieces(q.query.size());
  for (std::size_t s : order) {
    for (const TypeMatch& m : table[s]) {
      bool hidden = std::find(m.assignment.begin(), m.assignment.end(), 0) !=
                    m.assignment.end();
      if (!hidden) continue;
      auto& h = holders[Key{lin.type(s).guard, m.disjunct, m.mask, m.assignment}];
      bool dominated = std::any_of(h.begin(), h.end(), [&](std::size_t other) {
        return includes(lin.type(s).side, lin.type(other).side);
      });
      if (dominated) continue;
      h.push_back(s);
      pieces[m.disjunct].push_back(Piece{s, m});
    }
  }

  std::vector<CQ> disjuncts;
  for (std::size_t j = 0; j < q.query.size(); ++j) {
    const CQ& c = q.query.disjuncts()[j];
    disjuncts.push_back(canonical_variables(c));
    CoverBuilder(c, lin, pieces[j], opts.cap, disjuncts).run();
  }
  OMQ out;
  out.data_schema = q.data_schema;
  out.sigma = completion_rules(q.sigma, opts.type_cap);
  out.query = normalize_ucq(UCQ(std::move(disjuncts)));
  return out;
}

}  // namespace gtgd
