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

#include "gtgd/model.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "gtgd/error.hpp"

namespace gtgd {

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) {
    return a.kind_ < b.kind_ ? std::strong_ordering::less
                             : std::strong_ordering::greater;
  }
  return a.name_ <=> b.name_;
}

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.is_constant(); });
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.pred <=> b.pred; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(),
                                                b.args.begin(), b.args.end());
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  return std::hash<std::uint64_t>()(t.key());
}

std::size_t AtomHash::operator()(const Atom& a) const noexcept {
  std::size_t h = std::hash<std::uint32_t>()(a.pred.id()) * 0x9e3779b97f4a7c15ULL;
  for (const Term& t : a.args) {
    h ^= std::hash<std::uint64_t>()(t.key()) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

std::string to_string(const Term& t) { return std::string(t.name()); }

std::string to_string(const Atom& a) {
  std::string out(a.pred.str());
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += a.args[i].name();
  }
  out += ')';
  return out;
}

std::string to_string(const std::vector<Atom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += to_string(atoms[i]);
  }
  return out;
}

Term substitute(const TermMap& m, const Term& t) {
  auto it = m.find(t);
  return it == m.end() ? t : it->second;
}

Atom substitute(const TermMap& m, const Atom& a) {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(substitute(m, t));
  return out;
}

std::vector<Atom> substitute(const TermMap& m, const std::vector<Atom>& atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(substitute(m, a));
  return out;
}

std::vector<Term> terms_of(const std::vector<Atom>& atoms) {
  std::vector<Term> out;
  for (const Atom& a : atoms) out.insert(out.end(), a.args.begin(), a.args.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Term> terms_of(const Atom& atom) {
  std::vector<Term> out(atom.args);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Term> variables_of(const std::vector<Atom>& atoms) {
  std::vector<Term> out;
  for (const Atom& a : atoms) {
    for (const Term& t : a.args) {
      if (t.is_variable()) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Atom> dedupe_stable(std::vector<Atom> atoms) {
  std::unordered_set<Atom, AtomHash> seen;
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (Atom& a : atoms) {
    if (seen.insert(a).second) out.push_back(std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------- Schema

void Schema::add(Symbol pred, int arity) {
  auto [it, inserted] = arities_.emplace(pred, arity);
  if (!inserted && it->second != arity) {
    throw Error(Errc::arity_conflict,
                "arity conflict for " + std::string(pred.str()) + ": " +
                    std::to_string(it->second) + " vs " + std::to_string(arity));
  }
}

void Schema::merge(const Schema& other) {
  for (const auto& [p, a] : other.arities_) add(p, a);
}

std::optional<int> Schema::arity(Symbol pred) const {
  auto it = arities_.find(pred);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

int Schema::max_arity() const {
  int m = 0;
  for (const auto& [p, a] : arities_) m = std::max(m, a);
  return m;
}

bool Schema::subset_of(const Schema& other) const {
  for (const auto& [p, a] : arities_) {
    auto b = other.arity(p);
    if (!b || *b != a) return false;
  }
  return true;
}

Schema schema_of(const std::vector<Atom>& atoms) {
  Schema s;
  for (const Atom& a : atoms) s.add(a.pred, static_cast<int>(a.arity()));
  return s;
}

std::string to_string(const Schema& s) {
  std::string out;
  bool first = true;
  for (const auto& [p, a] : s.entries()) {
    if (!first) out += ", ";
    first = false;
    out += std::string(p.str()) + "/" + std::to_string(a);
  }
  return out;
}

// -------------------------------------------------------------- Instance

Instance::Instance(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

Instance::Instance(std::vector<Atom> atoms, std::vector<int> levels) {
  if (levels.size() != atoms.size()) {
    throw Error(Errc::precondition_violated, "level vector size mismatch");
  }
  std::vector<std::size_t> order(atoms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (auto c = atoms[a] <=> atoms[b]; c != 0) return c < 0;
    return levels[a] < levels[b];
  });
  for (std::size_t i : order) {
    if (!atoms_.empty() && atoms_.back() == atoms[i]) continue;
    atoms_.push_back(std::move(atoms[i]));
    levels_.push_back(levels[i]);
  }
}

std::optional<int> Instance::level_of(const Atom& a) const {
  auto i = index_of(a);
  if (!i) return std::nullopt;
  return level_at(*i);
}

std::optional<std::size_t> Instance::index_of(const Atom& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || !(*it == a)) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

std::pair<std::size_t, std::size_t> Instance::predicate_range(Symbol p) const {
  auto lo = std::lower_bound(
      atoms_.begin(), atoms_.end(), p,
      [](const Atom& a, Symbol s) { return (a.pred <=> s) < 0; });
  auto hi = std::upper_bound(
      lo, atoms_.end(), p,
      [](Symbol s, const Atom& a) { return (s <=> a.pred) < 0; });
  return {static_cast<std::size_t>(lo - atoms_.begin()),
          static_cast<std::size_t>(hi - atoms_.begin())};
}

std::vector<Term> Instance::adom() const { return terms_of(atoms_); }

bool Instance::is_database() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.is_ground(); });
}

bool Instance::subset_of(const Instance& other) const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [&](const Atom& a) { return other.contains(a); });
}

Instance restrict(const Instance& inst, const std::set<Term>& keep) {
  std::vector<Atom> atoms;
  std::vector<int> levels;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Atom& a = inst[i];
    bool ok = std::all_of(a.args.begin(), a.args.end(),
                          [&](const Term& t) { return keep.count(t) != 0; });
    if (ok) {
      atoms.push_back(a);
      levels.push_back(inst.level_at(i));
    }
  }
  if (!inst.levels().empty()) return Instance(std::move(atoms), std::move(levels));
  return Instance(std::move(atoms));
}

Instance unite(const Instance& a, const Instance& b) {
  std::vector<Atom> atoms(a.atoms());
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return Instance(std::move(atoms));
}

// ------------------------------------------------------------------- CQ

CQ::CQ(std::vector<Term> answer_vars, std::vector<Atom> body)
    : answer_(std::move(answer_vars)), body_(dedupe_stable(std::move(body))) {}

std::vector<Term> CQ::existential_vars() const {
  std::vector<Term> out;
  for (const Term& v : variables()) {
    if (std::find(answer_.begin(), answer_.end(), v) == answer_.end()) {
      out.push_back(v);
    }
  }
  return out;
}

CQ CQ::normalized() const {
  std::vector<Atom> body(body_);
  std::sort(body.begin(), body.end());
  return CQ(answer_, std::move(body));
}

Schema UCQ::schema() const {
  Schema s;
  for (const CQ& q : disjuncts_) s.merge(schema_of(q.body()));
  return s;
}

std::size_t UCQ::max_variables() const {
  std::size_t m = 0;
  for (const CQ& q : disjuncts_) m = std::max(m, q.variables().size());
  return m;
}

// ------------------------------------------------------------------ TGD

TGD::TGD(std::vector<Atom> body, std::vector<Atom> head)
    : body_(dedupe_stable(std::move(body))), head_(dedupe_stable(std::move(head))) {
  derive();
  std::vector<Term> head_vars = variables_of(head_);
  for (const Term& v : head_vars) {
    if (!std::binary_search(body_vars_.begin(), body_vars_.end(), v)) {
      existentials_.push_back(v);
    }
  }
}

TGD::TGD(std::vector<Atom> body, std::vector<Atom> head,
         std::vector<Term> declared_existentials)
    : body_(dedupe_stable(std::move(body))),
      head_(dedupe_stable(std::move(head))),
      existentials_(std::move(declared_existentials)) {
  std::sort(existentials_.begin(), existentials_.end());
  existentials_.erase(std::unique(existentials_.begin(), existentials_.end()),
                      existentials_.end());
  derive();
}

void TGD::derive() {
  body_vars_ = variables_of(body_);
  std::vector<Term> head_vars = variables_of(head_);
  frontier_.clear();
  std::set_intersection(body_vars_.begin(), body_vars_.end(), head_vars.begin(),
                        head_vars.end(), std::back_inserter(frontier_));
}

Schema schema_of(const TgdSet& sigma) {
  Schema s;
  for (const TGD& t : sigma) {
    s.merge(schema_of(t.body()));
    s.merge(schema_of(t.head()));
  }
  return s;
}

std::string to_string(const TGD& t) {
  std::string out = t.body().empty() ? std::string("true") : to_string(t.body());
  out += " -> ";
  if (!t.existential_vars().empty()) {
    out += "exists ";
    for (std::size_t i = 0; i < t.existential_vars().size(); ++i) {
      if (i) out += ",";
      out += t.existential_vars()[i].name();
    }
    out += " . ";
  }
  out += to_string(t.head());
  return out;
}

std::string to_string(const CQ& q, std::string_view head_name) {
  std::string out(head_name);
  out += '(';
  for (std::size_t i = 0; i < q.answer_vars().size(); ++i) {
    if (i) out += ',';
    out += q.answer_vars()[i].name();
  }
  out += ") :- ";
  out += to_string(q.body());
  return out;
}

Schema OMQ::extended_schema() const {
  Schema s = data_schema;
  s.merge(schema_of(sigma));
  s.merge(query.schema());
  return s;
}

Schema CQS::schema() const {
  Schema s = schema_of(sigma);
  s.merge(query.schema());
  return s;
}

Term as_constant(const Term& t) { return Term(TermKind::constant, t.symbol()); }
Term as_variable(const Term& t) { return Term(TermKind::variable, t.symbol()); }

Instance canonical_database(const std::vector<Atom>& atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) {
    Atom b;
    b.pred = a.pred;
    for (const Term& t : a.args) b.args.push_back(as_constant(t));
    out.push_back(std::move(b));
  }
  return Instance(std::move(out));
}

Instance canonical_database(const CQ& q) { return canonical_database(q.body()); }

std::vector<Atom> freeze_inverse(const std::vector<Atom>& atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) {
    Atom b;
    b.pred = a.pred;
    for (const Term& t : a.args) b.args.push_back(as_variable(t));
    out.push_back(std::move(b));
  }
  return out;
}

// ------------------------------------------------------------ NullSupply

NullSupply::NullSupply(const std::vector<Term>& used) {
  for (const Term& t : used) reserve(t);
}

void NullSupply::reserve(const Term& t) { used_.insert(t.symbol().id()); }

Term NullSupply::next() {
  for (;;) {
    ++counter_;
    Symbol s("_n" + std::to_string(counter_));
    if (used_.insert(s.id()).second) {
      ++issued_;
      return Term(TermKind::constant, s);
    }
  }
}

}  // namespace gtgd
