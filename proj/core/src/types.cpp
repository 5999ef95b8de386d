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

#include "gtgd/types.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"

namespace gtgd {
namespace {

// Restricted growth strings of length n over 1..n.
void growth_strings(int n, std::vector<int>& cur, int max,
                    std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int v = 1; v <= max + 1; ++v) {
    cur.push_back(v);
    growth_strings(n, cur, std::max(max, v), out);
    cur.pop_back();
  }
}

std::vector<Atom> atoms_over(const Schema& schema, int k) {
  std::vector<Atom> out;
  for (const auto& [p, ar] : schema.entries()) {
    if (ar > 0 && k == 0) continue;
    std::vector<int> idx(static_cast<std::size_t>(ar), 1);
    for (;;) {
      std::vector<Term> args;
      for (int i : idx) args.push_back(pattern_term(i));
      out.emplace_back(p, std::move(args));
      int pos = ar - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k) {
        idx[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Atom> guard_patterns(Symbol p, int ar) {
  std::vector<std::vector<int>> strings;
  std::vector<int> cur;
  growth_strings(ar, cur, 0, strings);
  std::vector<Atom> out;
  for (const auto& s : strings) {
    std::vector<Term> args;
    for (int i : s) args.push_back(pattern_term(i));
    out.emplace_back(p, std::move(args));
  }
  return out;
}

int max_index(const Atom& a) {
  int k = 0;
  for (const Term& t : a.args) k = std::max(k, pattern_index(t));
  return k;
}

}  // namespace

Term pattern_term(int i) { return Term::constant(std::to_string(i)); }

int pattern_index(const Term& t) { return std::stoi(std::string(t.name())); }

int SigmaType::arity() const { return max_index(guard); }

std::vector<Atom> SigmaType::atoms() const {
  std::vector<Atom> out;
  out.reserve(side.size() + 1);
  out.push_back(guard);
  out.insert(out.end(), side.begin(), side.end());
  return out;
}

std::vector<Atom> SigmaType::instantiate(const std::vector<Term>& args) const {
  TermMap m;
  for (std::size_t i = 0; i < args.size(); ++i) {
    m[pattern_term(static_cast<int>(i) + 1)] = args[i];
  }
  return substitute(m, atoms());
}

std::string to_string(const SigmaType& t) {
  std::string out = "[" + to_string(t.guard) + ", {";
  for (std::size_t i = 0; i < t.side.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t.side[i]);
  }
  return out + "}]";
}

Atom normalize_atom(const Atom& a, TermMap* renaming) {
  TermMap m;
  int next = 0;
  for (const Term& t : a.args) {
    if (!m.count(t)) m[t] = pattern_term(++next);
  }
  Atom out = substitute(m, a);
  if (renaming) *renaming = std::move(m);
  return out;
}

Symbol root_predicate() { return Symbol("_top"); }

TgdSet rooted(const TgdSet& sigma) {
  TgdSet out;
  out.reserve(sigma.size());
  for (const TGD& t : sigma) {
    if (t.body().empty()) {
      out.emplace_back(std::vector<Atom>{Atom(root_predicate(), {})}, t.head(),
                       t.existential_vars());
    } else {
      out.push_back(t);
    }
  }
  return out;
}

Schema type_schema(const TgdSet& sigma) { return schema_of(rooted(sigma)); }

std::size_t count_types(const Schema& schema) {
  std::size_t total = 0;
  for (const auto& [p, ar] : schema.entries()) {
    for (const Atom& g : guard_patterns(p, ar)) {
      std::size_t base = atoms_over(schema, max_index(g)).size() - 1;
      if (base >= 63) return SIZE_MAX;
      std::size_t n = std::size_t{1} << base;
      if (total > SIZE_MAX - n) return SIZE_MAX;
      total += n;
    }
  }
  return total;
}

std::vector<SigmaType> enumerate_types(const TgdSet& sigma, std::size_t cap) {
  Schema schema = type_schema(sigma);
  std::size_t n = count_types(schema);
  if (n > cap) {
    throw Error(Errc::type_space_cap_exceeded,
                "type space has more than " + std::to_string(cap) + " types");
  }
  std::vector<SigmaType> out;
  out.reserve(n);
  for (const auto& [p, ar] : schema.entries()) {
    for (const Atom& g : guard_patterns(p, ar)) {
      std::vector<Atom> base = atoms_over(schema, max_index(g));
      base.erase(std::find(base.begin(), base.end(), g));
      std::size_t subsets = std::size_t{1} << base.size();
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        SigmaType t{g, {}};
        for (std::size_t i = 0; i < base.size(); ++i) {
          if (mask >> i & 1) t.side.push_back(base[i]);
        }
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

Instance complete(const Instance& inst, const TgdSet& sigma) {
  return ground_chase(inst, rooted(sigma));
}

TypedAtom type_of_atom(const Atom& atom, const Instance& completion) {
  TermMap m;
  Atom guard = normalize_atom(atom, &m);
  TypedAtom out{SigmaType{guard, {}}, {}};
  out.args.resize(m.size());
  for (const auto& [from, to] : m) {
    out.args[static_cast<std::size_t>(pattern_index(to) - 1)] = from;
  }
  for (const Atom& b : completion) {
    bool inside = std::all_of(b.args.begin(), b.args.end(),
                              [&](const Term& t) { return m.count(t) != 0; });
    if (!inside) continue;
    Atom r = substitute(m, b);
    if (r != guard) out.type.side.push_back(std::move(r));
  }
  std::sort(out.type.side.begin(), out.type.side.end());
  out.type.side.erase(std::unique(out.type.side.begin(), out.type.side.end()),
                      out.type.side.end());
  return out;
}

TypedAtom type_of_atom(const Atom& atom, const Instance& d, const TgdSet& sigma) {
  if (!is_guarded(sigma)) {
    throw Error(Errc::not_guarded, "types require guarded dependencies");
  }
  std::vector<Atom> atoms = d.atoms();
  bool has_empty = std::any_of(sigma.begin(), sigma.end(),
                               [](const TGD& t) { return t.body().empty(); });
  if (has_empty) atoms.emplace_back(root_predicate(), std::vector<Term>{});
  return type_of_atom(atom, complete(Instance(std::move(atoms)), sigma));
}

}  // namespace gtgd
