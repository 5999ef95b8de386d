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

#include "gtgd/chase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"

namespace gtgd {

Instance chase_step(const Instance& inst, const TGD& t, const TermMap& trigger,
                    NullSupply& nulls) {
  int level = 0;
  for (const Atom& b : t.body()) {
    Atom image = substitute(trigger, b);
    bool mapped = std::all_of(b.args.begin(), b.args.end(), [&](const Term& x) {
      return trigger.count(x) != 0;
    });
    auto at = inst.index_of(image);
    if (!mapped || !at) {
      throw Error(Errc::trigger_not_a_homomorphism,
                  "body atom " + to_string(b) + " not mapped into the instance");
    }
    level = std::max(level, inst.level_at(*at));
  }
  TermMap h = trigger;
  for (const Term& z : t.existential_vars()) h[z] = nulls.next();
  std::vector<Atom> atoms = inst.atoms();
  std::vector<int> levels = inst.levels();
  bool levelled = !inst.levels().empty();
  for (const Atom& a : t.head()) {
    atoms.push_back(substitute(h, a));
    if (levelled) levels.push_back(level + 1);
  }
  if (levelled) return Instance(std::move(atoms), std::move(levels));
  return Instance(std::move(atoms));
}

Instance chase_step(const Instance& inst, const TGD& t, const TermMap& trigger) {
  NullSupply nulls(inst.adom());
  for (const auto& [k, v] : trigger) nulls.reserve(v);
  return chase_step(inst, t, trigger, nulls);
}

namespace {

struct Trigger {
  std::size_t tgd;
  std::vector<Term> image;
  TermMap h;

  friend bool operator<(const Trigger& a, const Trigger& b) {
    if (a.tgd != b.tgd) return a.tgd < b.tgd;
    return a.image < b.image;
  }
};

// Triggers of `t` using at least one atom of `delta`.
void collect_triggers(const TGD& t, std::size_t idx, const AtomIndex& all,
                      const AtomIndex& delta, std::set<Trigger>& out) {
  auto record = [&](const TermMap& h) {
    Trigger tr{idx, {}, {}};
    for (const Term& v : t.body_vars()) {
      tr.image.push_back(h.at(v));
      tr.h.emplace(v, h.at(v));
    }
    out.insert(std::move(tr));
    return true;
  };
  for (const Atom& b : t.body()) {
    for (std::uint32_t id : delta.with_pred(b.pred)) {
      const Atom& d = delta.atom(id);
      if (d.args.size() != b.args.size()) continue;
      TermMap fixed;
      bool ok = true;
      for (std::size_t p = 0; p < b.args.size() && ok; ++p) {
        auto [it, fresh] = fixed.emplace(b.args[p], d.args[p]);
        ok = fresh || it->second == d.args[p];
      }
      if (ok) for_each_homomorphism(t.body(), all, fixed, record);
    }
  }
}

}  // namespace

ChaseResult chase(const Instance& d, const TgdSet& sigma, ChaseBudget budget) {
  ChaseResult r;
  std::vector<Atom> atoms = d.atoms();
  std::vector<int> levels(atoms.size(), 0);
  std::unordered_map<Atom, int, AtomHash> present;
  for (const Atom& a : atoms) present.emplace(a, 0);
  NullSupply nulls(d.adom());
  std::vector<Atom> delta = atoms;
  bool capped = budget.mode != ChaseBudget::Mode::levels;
  std::uint64_t ceiling =
      capped ? std::min(budget.limit, budget.max_atoms) : budget.max_atoms;

  for (int level = 1;; ++level) {
    std::set<Trigger> triggers;
    AtomIndex all(atoms);
    AtomIndex fresh(delta);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma[i].body().empty()) {
        if (level == 1) triggers.insert(Trigger{i, {}, {}});
      } else {
        collect_triggers(sigma[i], i, all, fresh, triggers);
      }
    }
    if (triggers.empty()) {
      r.terminated = true;
      break;
    }
    if (!capped && static_cast<std::uint64_t>(level) > budget.limit) {
      r.budget_exhausted = true;
      break;
    }
    std::vector<Atom> next;
    for (const Trigger& tr : triggers) {
      if (atoms.size() >= ceiling) {
        r.budget_exhausted = true;
        break;
      }
      TermMap h = tr.h;
      const TGD& t = sigma[tr.tgd];
      for (const Term& z : t.existential_vars()) h[z] = nulls.next();
      for (const Atom& a : t.head()) {
        Atom img = substitute(h, a);
        if (present.emplace(img, level).second) {
          atoms.push_back(img);
          levels.push_back(level);
          next.push_back(std::move(img));
        }
      }
      ++r.steps;
    }
    if (r.budget_exhausted) break;
    delta = std::move(next);
  }
  r.instance = Instance(std::move(atoms), std::move(levels));
  return r;
}

Instance chase_full(const Instance& d, const TgdSet& sigma) {
  for (const TGD& t : sigma) {
    if (!t.is_full()) {
      throw Error(Errc::not_full, "dependency has existential variables: " +
                                      to_string(t));
    }
  }
  ChaseResult r =
      chase(d, sigma, ChaseBudget::fixpoint(std::numeric_limits<std::uint64_t>::max()));
  bool empty_body = std::any_of(sigma.begin(), sigma.end(),
                                [](const TGD& t) { return t.body().empty(); });
  if (is_guarded(sigma) && !empty_body) {
    Schema s = d.schema();
    s.merge(schema_of(sigma));
    long double ar = s.max_arity();
    long double bound = static_cast<long double>(d.size()) * s.size() *
                        std::pow(ar, ar);
    if (static_cast<long double>(r.instance.size()) > bound) {
      throw Error(Errc::precondition_violated,
                  "full guarded chase exceeded its size bound");
    }
  }
  return r.instance;
}

std::uint64_t linear_level_bound(std::size_t db_size, const TgdSet& sigma,
                                 int level) {
  std::uint64_t h = 0;
  for (const TGD& t : sigma) h = std::max<std::uint64_t>(h, t.head().size());
  long double base = static_cast<long double>(sigma.size()) * h + 1;
  long double v = static_cast<long double>(db_size) * std::pow(base, level);
  if (v >= 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(v);
}

bool check_level_bound(const ChaseResult& run, const TgdSet& sigma) {
  if (!is_linear(sigma)) {
    throw Error(Errc::not_linear, "level bound applies to linear dependencies");
  }
  const Instance& inst = run.instance;
  int top = 0;
  std::size_t base = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    top = std::max(top, inst.level_at(i));
    if (inst.level_at(i) == 0) ++base;
  }
  std::vector<std::uint64_t> per(top + 1, 0);
  for (std::size_t i = 0; i < inst.size(); ++i) ++per[inst.level_at(i)];
  std::uint64_t prefix = 0;
  for (int l = 0; l <= top; ++l) {
    prefix += per[l];
    if (prefix > linear_level_bound(base, sigma, l)) return false;
  }
  return true;
}

}  // namespace gtgd
