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

#include "gtgd/witness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/omq_eval.hpp"

namespace gtgd {
namespace {

class ModelSearcher {
 public:
  ModelSearcher(const TgdSet& sigma, const ModelFilter& ok, const ModelSearchOptions& opts,
                const Instance& d)
      : sigma_(sigma), ok_(ok), opts_(opts) {
    for (const Term& t : d.adom()) used_.insert(std::string(t.name()));
  }

  std::optional<Instance> run(const Instance& d, std::size_t limit) {
    limit_ = limit;
    return dfs(d);
  }

  bool exhausted() const { return exhausted_; }

 private:
  Term fresh(std::size_t i) {
    while (fresh_.size() < i) {
      std::string name;
      do {
        name = opts_.fresh_prefix + std::to_string(++counter_);
      } while (used_.count(name));
      fresh_.push_back(Term::constant(name));
    }
    return fresh_[i - 1];
  }

  std::optional<Instance> dfs(const Instance& m) {
    if (++nodes_ > opts_.node_cap) {
      exhausted_ = true;
      return std::nullopt;
    }
    auto trig = first_active_trigger(m, sigma_);
    if (!trig) return m;
    const TGD& t = sigma_[trig->tgd];
    std::vector<Term> elems = m.adom();
    std::size_t fresh_used = 0;
    for (const Term& e : elems) {
      auto it = std::find(fresh_.begin(), fresh_.end(), e);
      if (it != fresh_.end()) {
        fresh_used = std::max<std::size_t>(fresh_used, static_cast<std::size_t>(it - fresh_.begin()) + 1);
      }
    }
    TermMap h = trig->h;
    return assign(m, t, h, elems, fresh_used, 0);
  }

  std::optional<Instance> assign(const Instance& m, const TGD& t, TermMap& h,
                                 std::vector<Term>& elems, std::size_t fresh_used,
                                 std::size_t pos) {
    const auto& ex = t.existential_vars();
    if (pos == ex.size()) {
      std::vector<Atom> added;
      for (const Atom& a : substitute(h, t.head())) {
        if (!m.contains(a)) added.push_back(a);
      }
      std::vector<Atom> atoms = m.atoms();
      atoms.insert(atoms.end(), added.begin(), added.end());
      Instance next(std::move(atoms));
      if (!ok_(next, added)) return std::nullopt;
      return dfs(next);
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
      h[ex[pos]] = elems[i];
      if (auto r = assign(m, t, h, elems, fresh_used, pos + 1)) return r;
      if (exhausted_) return std::nullopt;
    }
    if (elems.size() < limit_) {
      Term f = fresh(fresh_used + 1);
      h[ex[pos]] = f;
      elems.push_back(f);
      auto r = assign(m, t, h, elems, fresh_used + 1, pos + 1);
      elems.pop_back();
      if (r) return r;
    }
    h.erase(ex[pos]);
    return std::nullopt;
  }

  const TgdSet& sigma_;
  const ModelFilter& ok_;
  ModelSearchOptions opts_;
  std::set<std::string> used_;
  std::vector<Term> fresh_;
  std::size_t counter_ = 0;
  std::size_t limit_ = 0;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

// Decides whether the atoms, read as a CQ with the given constants fixed,
// hold in chase(d, sigma).
class ChaseOracle {
 public:
  ChaseOracle(const Instance& d, const TgdSet& sigma, std::size_t levels)
      : d_(d), sigma_(sigma), guarded_(is_guarded(sigma)) {
    if (!guarded_) {
      prefix_ = chase(d, sigma, ChaseBudget::levels(levels, 100000)).instance;
    }
    std::vector<Term> adom = d.adom();
    constants_ = std::set<Term>(adom.begin(), adom.end());
  }

  bool entails(const std::vector<Atom>& atoms) {
    auto it = cache_.find(atoms);
    if (it != cache_.end()) return it->second;
    bool ok;
    if (guarded_) {
      TermMap to_var;
      std::vector<Term> answer_vars;
      Tuple answer;
      for (const Term& t : terms_of(atoms)) {
        Term v = Term::variable("_t_" + std::string(t.name()));
        to_var[t] = v;
        if (constants_.count(t)) {
          answer_vars.push_back(v);
          answer.push_back(t);
        }
      }
      OMQ q;
      q.sigma = sigma_;
      q.query = UCQ{CQ(answer_vars, substitute(to_var, atoms))};
      ok = fpt_eval_omq(q, d_, answer);
    } else {
      TermMap fixed;
      for (const Term& t : terms_of(atoms)) {
        if (constants_.count(t)) fixed[t] = t;
      }
      ok = has_homomorphism(atoms, prefix_, fixed);
    }
    cache_.emplace(atoms, ok);
    return ok;
  }

 private:
  const Instance& d_;
  const TgdSet& sigma_;
  bool guarded_;
  Instance prefix_;
  std::set<Term> constants_;
  std::map<std::vector<Atom>, bool> cache_;
};

void supersets(const std::vector<Term>& base, const std::vector<Term>& pool,
               std::size_t from, std::size_t n, std::vector<Term>& cur,
               const std::function<bool(const std::vector<Term>&)>& fn, bool& ok) {
  if (!ok) return;
  if (!fn(cur)) {
    ok = false;
    return;
  }
  if (cur.size() >= n) return;
  for (std::size_t i = from; i < pool.size() && ok; ++i) {
    if (std::binary_search(base.begin(), base.end(), pool[i])) continue;
    cur.push_back(pool[i]);
    supersets(base, pool, i + 1, n, cur, fn, ok);
    cur.pop_back();
  }
}

}  // namespace

std::optional<ActiveTrigger> first_active_trigger(const Instance& m, const TgdSet& sigma) {
  AtomIndex index(m);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const TGD& t = sigma[i];
    std::optional<ActiveTrigger> found;
    for_each_homomorphism(t.body(), index, {}, [&](const TermMap& h) {
      TermMap fixed;
      for (const Term& v : t.frontier()) fixed[v] = h.at(v);
      if (find_homomorphism(t.head(), index, fixed)) return true;
      found = ActiveTrigger{i, h};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool satisfies(const Instance& m, const TgdSet& sigma) {
  return !first_active_trigger(m, sigma).has_value();
}

ModelSearchResult search_model(const Instance& d, const TgdSet& sigma,
                               const ModelFilter& ok, const ModelSearchOptions& opts) {
  ModelSearchResult out;
  if (!ok(d, d.atoms())) return out;
  ModelSearcher searcher(sigma, ok, opts, d);
  std::size_t start = std::max<std::size_t>(d.adom().size(), 1);
  for (std::size_t limit = start; limit <= opts.dom_cap; ++limit) {
    out.model = searcher.run(d, limit);
    if (out.model || searcher.exhausted()) break;
  }
  out.exhausted_budget = searcher.exhausted();
  return out;
}

std::optional<Instance> finite_witness_search(const Instance& d, const TgdSet& sigma,
                                              std::size_t n, std::size_t dom_cap,
                                              std::size_t node_cap, std::size_t levels) {
  ChaseOracle oracle(d, sigma, levels);
  ModelFilter ok = [&](const Instance& m, const std::vector<Atom>& added) {
    std::vector<Term> adom = m.adom();
    for (const Atom& a : added) {
      std::vector<Term> base = terms_of(a);
      if (base.size() > n) continue;
      std::vector<Term> cur = base;
      bool good = true;
      supersets(base, adom, 0, n, cur, [&](const std::vector<Term>& x) {
        std::set<Term> keep(x.begin(), x.end());
        return oracle.entails(restrict(m, keep).atoms());
      }, good);
      if (!good) return false;
    }
    return true;
  };
  ModelSearchOptions opts;
  opts.dom_cap = dom_cap;
  opts.node_cap = node_cap;
  return search_model(d, sigma, ok, opts).model;
}

Instance satisfying_db_from_omq(const Instance& d, const TgdSet& sigma, const UCQ& q,
                                std::size_t n, const SatisfyingDbOptions& opts) {
  if (!is_guarded(sigma)) {
    throw Error(Errc::not_guarded, "satisfying database requires guarded dependencies");
  }
  if (n < q.max_variables()) {
    throw Error(Errc::precondition_violated,
                "n=" + std::to_string(n) + " is below the variable count of the query");
  }
  Instance dplus = ground_chase(d, sigma);
  std::vector<std::vector<Term>> tuples;
  for (const Atom& a : dplus) tuples.push_back(terms_of(a));
  if (tuples.empty()) tuples.emplace_back();
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  std::vector<std::vector<Term>> maximal;
  for (const auto& t : tuples) {
    bool inside = std::any_of(tuples.begin(), tuples.end(), [&](const auto& o) {
      return o != t && std::includes(o.begin(), o.end(), t.begin(), t.end());
    });
    if (!inside) maximal.push_back(t);
  }
  std::vector<Term> adom = dplus.adom();
  std::set<Term> base(adom.begin(), adom.end());
  Instance out = dplus;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    Instance frag = restrict(dplus, std::set<Term>(maximal[i].begin(), maximal[i].end()));
    auto m = finite_witness_search(frag, sigma, n, opts.dom_cap, opts.node_cap);
    if (!m) {
      throw Error(Errc::finite_witness_not_found,
                  "no finite witness within " + std::to_string(opts.dom_cap) +
                      " elements for the guarded tuple " + std::to_string(i + 1));
    }
    TermMap rename;
    std::size_t j = 0;
    for (const Term& t : m->adom()) {
      if (!base.count(t)) {
        rename[t] = Term::constant("_w" + std::to_string(i + 1) + "_" + std::to_string(++j));
      }
    }
    out = unite(out, Instance(substitute(rename, m->atoms())));
  }
  if (opts.verify) {
    if (!satisfies(out, sigma)) {
      throw Error(Errc::precondition_violated, "constructed database violates the dependencies");
    }
    if (!q.empty()) {
      OMQ omq;
      omq.sigma = sigma;
      omq.query = q;
      std::set<Tuple> expected = fpt_answers(omq, d).answers;
      std::set<Tuple> got;
      std::vector<Term> dom = d.adom();
      for (const Tuple& t : eval(q, out)) {
        bool inside = std::all_of(t.begin(), t.end(), [&](const Term& x) {
          return std::binary_search(dom.begin(), dom.end(), x);
        });
        if (inside) got.insert(t);
      }
      if (got != expected) {
        throw Error(Errc::precondition_violated,
                    "constructed database changes the answers of the query");
      }
    }
  }
  return out;
}

}  // namespace gtgd
