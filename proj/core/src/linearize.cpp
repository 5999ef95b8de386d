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

#include "gtgd/linearize.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"

namespace gtgd {

class LinearizationBuilder {
 public:
  LinearizationBuilder(const TgdSet& sigma, std::size_t cap) : cap_(cap) {
    if (!is_guarded(sigma)) {
      throw Error(Errc::not_guarded, "linearization requires guarded dependencies");
    }
    out_.sigma_ = rooted(sigma);
    for (const TGD& t : out_.sigma_) guards_.push_back(*classify(t).guard);
  }

  std::size_t add(const SigmaType& t) {
    auto it = out_.ids_.find(t);
    if (it != out_.ids_.end()) return it->second;
    if (out_.types_.size() >= cap_) {
      throw Error(Errc::type_space_cap_exceeded,
                  "more than " + std::to_string(cap_) + " reachable types");
    }
    std::size_t id = out_.types_.size();
    out_.types_.push_back(t);
    out_.ids_.emplace(t, id);
    out_.preds_.emplace_back("t" + std::to_string(id) + "_" +
                             std::string(t.guard.pred.str()));
    out_.succ_.emplace_back();
    queue_.push_back(id);
    return id;
  }

  Linearization finish() {
    while (!queue_.empty()) {
      std::size_t id = queue_.front();
      queue_.pop_front();
      expand(id);
    }
    return std::move(out_);
  }

 private:
  void expand(std::size_t id) {
    const SigmaType tau = out_.types_[id];
    const int k = tau.arity();
    std::vector<Atom> atoms = tau.atoms();
    std::set<Atom> members(atoms.begin(), atoms.end());
    for (std::size_t s = 0; s < out_.sigma_.size(); ++s) {
      const TGD& sigma = out_.sigma_[s];
      const Atom& g = guards_[s];
      if (g.pred != tau.guard.pred || g.arity() != tau.guard.arity()) continue;
      TermMap h;
      bool ok = true;
      for (std::size_t i = 0; i < g.arity() && ok; ++i) {
        auto [it, fresh] = h.emplace(g.args[i], tau.guard.args[i]);
        ok = fresh || it->second == tau.guard.args[i];
      }
      if (!ok) continue;
      for (const Atom& b : sigma.body()) {
        if (!members.count(substitute(h, b))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;

      std::set<Term> shared;
      TermMap f;
      for (const Term& x : sigma.frontier()) {
        f[x] = h.at(x);
        shared.insert(h.at(x));
      }
      int fresh = 0;
      for (const Term& z : sigma.existential_vars()) f[z] = pattern_term(k + ++fresh);
      std::vector<Atom> heads = substitute(f, sigma.head());
      std::vector<Atom> start = heads;
      for (const Atom& a : atoms) {
        bool inside = std::all_of(a.args.begin(), a.args.end(),
                                  [&](const Term& x) { return shared.count(x) != 0; });
        if (inside) start.push_back(a);
      }
      const Instance& c = completion(Instance(std::move(start)));

      TypeSuccessor succ;
      succ.tgd = s;
      succ.fresh = fresh;
      for (const Atom& alpha : heads) {
        TypedAtom ta = type_of_atom(alpha, c);
        std::vector<int> args;
        for (const Term& t : alpha.args) args.push_back(pattern_index(t));
        std::vector<int> terms;
        for (const Term& t : ta.args) terms.push_back(pattern_index(t));
        succ.children.push_back(add(ta.type));
        succ.args.push_back(std::move(args));
        succ.terms.push_back(std::move(terms));
      }
      out_.succ_[id].push_back(std::move(succ));
    }
  }

  const Instance& completion(Instance start) {
    auto it = memo_.find(start);
    if (it != memo_.end()) return it->second;
    Instance c = ground_chase(start, out_.sigma_);
    return memo_.emplace(std::move(start), std::move(c)).first->second;
  }

  struct InstanceLess {
    bool operator()(const Instance& a, const Instance& b) const {
      return a.atoms() < b.atoms();
    }
  };

  std::size_t cap_;
  Linearization out_;
  std::vector<Atom> guards_;
  std::deque<std::size_t> queue_;
  std::map<Instance, Instance, InstanceLess> memo_;
};

namespace {

Term pattern_var(int i, int k) {
  if (i <= k) return Term::variable("x" + std::to_string(i));
  return Term::variable("z" + std::to_string(i - k));
}

std::vector<Term> pattern_vars(const std::vector<int>& idx, int k) {
  std::vector<Term> out;
  for (int i : idx) out.push_back(pattern_var(i, k));
  return out;
}

std::vector<int> guard_indices(const SigmaType& t) {
  std::vector<int> out;
  for (const Term& x : t.guard.args) out.push_back(pattern_index(x));
  return out;
}

}  // namespace

std::optional<std::size_t> Linearization::find(const SigmaType& t) const {
  auto it = ids_.find(t);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t Linearization::rule_count() const {
  std::size_t n = types_.size();
  for (const auto& s : succ_) n += s.size();
  return n;
}

TgdSet Linearization::rules() const {
  TgdSet out;
  for (std::size_t id = 0; id < types_.size(); ++id) {
    int k = types_[id].arity();
    Atom body(preds_[id], pattern_vars(guard_indices(types_[id]), k));
    for (const TypeSuccessor& s : succ_[id]) {
      std::vector<Atom> head;
      for (std::size_t i = 0; i < s.children.size(); ++i) {
        head.emplace_back(preds_[s.children[i]], pattern_vars(s.args[i], k));
      }
      std::vector<Term> ex;
      for (int z = 1; z <= s.fresh; ++z) ex.push_back(pattern_var(k + z, k));
      out.emplace_back(std::vector<Atom>{body}, std::move(head), std::move(ex));
    }
  }
  for (std::size_t id = 0; id < types_.size(); ++id) {
    int k = types_[id].arity();
    std::vector<Term> vars = pattern_vars(guard_indices(types_[id]), k);
    out.emplace_back(std::vector<Atom>{Atom(preds_[id], vars)},
                     std::vector<Atom>{Atom(types_[id].guard.pred, vars)});
  }
  return out;
}

std::string Linearization::legend() const {
  std::string out;
  for (std::size_t id = 0; id < types_.size(); ++id) {
    out += "# " + std::string(preds_[id].str()) + " = " + to_string(types_[id]) + "\n";
  }
  return out;
}

Linearization linearize(const TgdSet& sigma, std::size_t type_cap) {
  return linearize(sigma, enumerate_types(sigma, type_cap), type_cap);
}

Linearization linearize(const TgdSet& sigma, const std::vector<SigmaType>& seeds,
                        std::size_t type_cap) {
  LinearizationBuilder b(sigma, type_cap);
  for (const SigmaType& t : seeds) b.add(t);
  return b.finish();
}

BaseDatabase linearize_with_base(const Instance& d, const TgdSet& sigma,
                                 bool subset_types, std::size_t type_cap) {
  LinearizationBuilder b(sigma, type_cap);
  Schema schema = type_schema(sigma);
  std::vector<Atom> start = d.atoms();
  if (schema.contains(root_predicate())) {
    start.emplace_back(root_predicate(), std::vector<Term>{});
  }
  Instance seeded(std::move(start));
  Instance c = complete(seeded, sigma);

  BaseDatabase out;
  std::vector<Atom> typed;
  for (const Atom& a : seeded) {
    if (!schema.contains(a.pred)) {
      out.passthrough.push_back(a);
      typed.push_back(a);
      continue;
    }
    TypedAtom ta = type_of_atom(a, c);
    std::size_t full = b.add(ta.type);
    out.roots.emplace_back(full, ta.args);
    if (!subset_types) {
      typed.emplace_back(Symbol("t" + std::to_string(full) + "_" +
                                std::string(ta.type.guard.pred.str())),
                         a.args);
      continue;
    }
    const std::vector<Atom>& side = ta.type.side;
    if (side.size() >= 63 || (std::size_t{1} << side.size()) > type_cap) {
      throw Error(Errc::type_space_cap_exceeded,
                  "too many side subsets for " + to_string(a));
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << side.size()); ++mask) {
      SigmaType t{ta.type.guard, {}};
      for (std::size_t i = 0; i < side.size(); ++i) {
        if (mask >> i & 1) t.side.push_back(side[i]);
      }
      std::size_t id = b.add(t);
      typed.emplace_back(Symbol("t" + std::to_string(id) + "_" +
                                std::string(t.guard.pred.str())),
                         a.args);
    }
  }
  out.sigma_star = b.finish();
  out.instance = Instance(std::move(typed));
  return out;
}

Instance base_db(const Instance& d, const TgdSet& sigma) {
  return linearize_with_base(d, sigma).instance;
}

}  // namespace gtgd
