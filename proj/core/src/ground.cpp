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

#include <map>
#include <set>

#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"

namespace gtgd {
namespace {

// A bag pattern: atoms over placeholder constants #0.. where the first
// `frontier` placeholders are shared with the parent bag.
struct Pattern {
  int frontier;
  std::vector<Atom> atoms;

  friend bool operator<(const Pattern& a, const Pattern& b) {
    if (a.frontier != b.frontier) return a.frontier < b.frontier;
    return a.atoms < b.atoms;
  }
};

Term placeholder(int i) { return Term::constant("#" + std::to_string(i)); }

class GroundSaturator {
 public:
  GroundSaturator(const TgdSet& sigma, std::size_t cap) : sigma_(sigma), cap_(cap) {
    for (int i = 0; i < 64; ++i) placeholders_.push_back(placeholder(i));
  }

  std::set<Atom> run(std::set<Atom> root) {
    do {
      changed_ = false;
      done_.clear();
      root = saturate(std::move(root));
    } while (changed_);
    return root;
  }

 private:
  std::set<Atom> saturate(std::set<Atom> j) {
    for (;;) {
      std::size_t before = j.size();
      AtomIndex index(std::vector<Atom>(j.begin(), j.end()));
      std::vector<Atom> add;
      for (const TGD& t : sigma_) {
        for_each_homomorphism(t.body(), index, {}, [&](const TermMap& h) {
          if (t.is_full()) {
            for (const Atom& a : t.head()) add.push_back(substitute(h, a));
            return true;
          }
          std::vector<Term> shared;
          for (const Term& v : t.frontier()) {
            const Term& c = h.at(v);
            if (std::find(shared.begin(), shared.end(), c) == shared.end()) {
              shared.push_back(c);
            }
          }
          TermMap rename;
          for (std::size_t i = 0; i < shared.size(); ++i) {
            rename[shared[i]] = ph(static_cast<int>(i));
          }
          TermMap child_map;
          for (const Term& v : t.frontier()) child_map[v] = rename.at(h.at(v));
          int next = static_cast<int>(shared.size());
          for (const Term& z : t.existential_vars()) child_map[z] = ph(next++);
          std::vector<Atom> atoms = substitute(child_map, t.head());
          for (const Atom& a : j) {
            bool inside = std::all_of(a.args.begin(), a.args.end(), [&](const Term& x) {
              return rename.count(x) != 0;
            });
            if (inside) atoms.push_back(substitute(rename, a));
          }
          std::sort(atoms.begin(), atoms.end());
          atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
          const std::vector<Atom>& result =
              closure(Pattern{static_cast<int>(shared.size()), std::move(atoms)});
          TermMap back;
          for (std::size_t i = 0; i < shared.size(); ++i) {
            back[ph(static_cast<int>(i))] = shared[i];
          }
          for (const Atom& a : result) add.push_back(substitute(back, a));
          return true;
        });
      }
      j.insert(add.begin(), add.end());
      if (j.size() == before) return j;
    }
  }

  const std::vector<Atom>& closure(Pattern key) {
    auto it = memo_.find(key);
    if (it != memo_.end() && (in_progress_.count(key) || done_.count(key))) {
      return it->second;
    }
    if (it == memo_.end()) {
      if (memo_.size() >= cap_) {
        throw Error(Errc::saturation_cap_exceeded,
                    "ground chase exceeded " + std::to_string(cap_) + " bag patterns");
      }
      it = memo_.emplace(key, std::vector<Atom>{}).first;
    }
    in_progress_.insert(key);
    std::set<Atom> j(key.atoms.begin(), key.atoms.end());
    j.insert(it->second.begin(), it->second.end());
    j = saturate(std::move(j));
    std::set<Term> shared;
    for (int i = 0; i < key.frontier; ++i) shared.insert(ph(i));
    std::vector<Atom> result;
    for (const Atom& a : j) {
      bool inside = std::all_of(a.args.begin(), a.args.end(), [&](const Term& x) {
        return shared.count(x) != 0;
      });
      if (inside) result.push_back(a);
    }
    auto& slot = memo_.at(key);
    if (result != slot) {
      slot = std::move(result);
      changed_ = true;
    }
    in_progress_.erase(key);
    done_.insert(key);
    return slot;
  }

  const Term& ph(int i) {
    while (static_cast<int>(placeholders_.size()) <= i) {
      placeholders_.push_back(placeholder(static_cast<int>(placeholders_.size())));
    }
    return placeholders_[i];
  }

  const TgdSet& sigma_;
  std::size_t cap_;
  std::vector<Term> placeholders_;
  std::map<Pattern, std::vector<Atom>> memo_;
  std::set<Pattern> in_progress_;
  std::set<Pattern> done_;
  bool changed_ = false;
};

}  // namespace

Instance ground_chase(const Instance& d, const TgdSet& sigma, std::size_t cap) {
  if (!is_guarded(sigma)) {
    throw Error(Errc::not_guarded, "ground chase requires guarded dependencies");
  }
  GroundSaturator s(sigma, cap);
  std::set<Atom> out = s.run(std::set<Atom>(d.begin(), d.end()));
  return Instance(std::vector<Atom>(out.begin(), out.end()));
}

}  // namespace gtgd
