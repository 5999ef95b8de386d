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

#ifndef GTGD_MODEL_HPP_
#define GTGD_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gtgd {

// Interned identifier. Equality is by id; ordering is lexicographic on text.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view text);

  std::string_view str() const;
  std::uint32_t id() const { return id_; }
  bool empty() const { return id_ == 0; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b);

 private:
  std::uint32_t id_ = 0;
};

enum class TermKind : std::uint8_t { constant = 0, variable = 1 };

class Term {
 public:
  Term() = default;
  Term(TermKind kind, Symbol name) : kind_(kind), name_(name) {}

  static Term constant(std::string_view name) {
    return Term(TermKind::constant, Symbol(name));
  }
  static Term variable(std::string_view name) {
    return Term(TermKind::variable, Symbol(name));
  }

  TermKind kind() const { return kind_; }
  bool is_constant() const { return kind_ == TermKind::constant; }
  bool is_variable() const { return kind_ == TermKind::variable; }
  Symbol symbol() const { return name_; }
  std::string_view name() const { return name_.str(); }

  // Dense key for hashing; distinct for distinct terms.
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(name_.id()) << 1) |
           static_cast<std::uint64_t>(kind_);
  }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind_ == b.kind_ && a.name_ == b.name_;
  }
  // Constants precede variables; ties broken lexicographically by name.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  TermKind kind_ = TermKind::constant;
  Symbol name_;
};

struct Atom {
  Symbol pred;
  std::vector<Term> args;

  Atom() = default;
  Atom(Symbol p, std::vector<Term> a) : pred(p), args(std::move(a)) {}
  Atom(std::string_view p, std::vector<Term> a)
      : pred(Symbol(p)), args(std::move(a)) {}

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.pred == b.pred && a.args == b.args;
  }
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};
struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept;
};

using TermMap = std::map<Term, Term>;

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const std::vector<Atom>& atoms);

Term substitute(const TermMap& m, const Term& t);
Atom substitute(const TermMap& m, const Atom& a);
std::vector<Atom> substitute(const TermMap& m, const std::vector<Atom>& atoms);

// Sorted, duplicate-free term set of the given atoms.
std::vector<Term> terms_of(const std::vector<Atom>& atoms);
std::vector<Term> terms_of(const Atom& atom);
std::vector<Term> variables_of(const std::vector<Atom>& atoms);

// Removes repeated atoms, keeping first occurrences in order.
std::vector<Atom> dedupe_stable(std::vector<Atom> atoms);

class Schema {
 public:
  Schema() = default;

  // Throws Error(arity_conflict) when pred is already present with a
  // different arity.
  void add(Symbol pred, int arity);
  void add(std::string_view pred, int arity) { add(Symbol(pred), arity); }
  void merge(const Schema& other);

  std::optional<int> arity(Symbol pred) const;
  bool contains(Symbol pred) const { return arities_.count(pred) != 0; }
  int max_arity() const;
  std::size_t size() const { return arities_.size(); }
  bool empty() const { return arities_.empty(); }
  bool subset_of(const Schema& other) const;
  const std::map<Symbol, int>& entries() const { return arities_; }

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.arities_ == b.arities_;
  }

 private:
  std::map<Symbol, int> arities_;
};

Schema schema_of(const std::vector<Atom>& atoms);
std::string to_string(const Schema& s);

// A finite set of atoms, sorted and duplicate-free, with optional chase levels
// stored parallel to the atom order.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Atom> atoms);
  // When an atom occurs repeatedly the smallest level is kept.
  Instance(std::vector<Atom> atoms, std::vector<int> levels);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  bool has_levels() const { return !levels_.empty() || atoms_.empty(); }
  const std::vector<int>& levels() const { return levels_; }
  int level_at(std::size_t i) const { return levels_.empty() ? 0 : levels_[i]; }
  std::optional<int> level_of(const Atom& a) const;

  bool contains(const Atom& a) const { return index_of(a).has_value(); }
  std::optional<std::size_t> index_of(const Atom& a) const;
  // Half-open index range of the atoms with predicate p.
  std::pair<std::size_t, std::size_t> predicate_range(Symbol p) const;

  std::vector<Term> adom() const;
  Schema schema() const { return schema_of(atoms_); }
  bool is_database() const;
  bool subset_of(const Instance& other) const;
  Instance without_levels() const { return Instance(atoms_); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<int> levels_;
};

// Atoms of `inst` all of whose terms lie in `keep`.
Instance restrict(const Instance& inst, const std::set<Term>& keep);
Instance unite(const Instance& a, const Instance& b);

class CQ {
 public:
  CQ() = default;
  CQ(std::vector<Term> answer_vars, std::vector<Atom> body);

  const std::vector<Term>& answer_vars() const { return answer_; }
  const std::vector<Atom>& body() const { return body_; }
  std::size_t arity() const { return answer_.size(); }
  bool is_boolean() const { return answer_.empty(); }

  std::vector<Term> variables() const { return variables_of(body_); }
  std::vector<Term> existential_vars() const;

  // Same query with body atoms sorted; used as a structural key.
  CQ normalized() const;

  friend bool operator==(const CQ& a, const CQ& b) {
    return a.answer_ == b.answer_ && a.body_ == b.body_;
  }
  friend bool operator<(const CQ& a, const CQ& b) {
    if (a.answer_ != b.answer_) return a.answer_ < b.answer_;
    return a.body_ < b.body_;
  }

 private:
  std::vector<Term> answer_;
  std::vector<Atom> body_;
};

class UCQ {
 public:
  UCQ() = default;
  explicit UCQ(std::vector<CQ> disjuncts) : disjuncts_(std::move(disjuncts)) {}
  UCQ(std::initializer_list<CQ> disjuncts) : disjuncts_(disjuncts) {}

  const std::vector<CQ>& disjuncts() const { return disjuncts_; }
  std::size_t size() const { return disjuncts_.size(); }
  bool empty() const { return disjuncts_.empty(); }
  std::size_t arity() const {
    return disjuncts_.empty() ? 0 : disjuncts_.front().arity();
  }
  Schema schema() const;
  std::size_t max_variables() const;

  friend bool operator==(const UCQ& a, const UCQ& b) {
    return a.disjuncts_ == b.disjuncts_;
  }

 private:
  std::vector<CQ> disjuncts_;
};

class TGD {
 public:
  TGD() = default;
  // Existential variables derived as head variables absent from the body.
  TGD(std::vector<Atom> body, std::vector<Atom> head);
  // Existential variables as declared; validate() reports mismatches.
  TGD(std::vector<Atom> body, std::vector<Atom> head,
      std::vector<Term> declared_existentials);

  const std::vector<Atom>& body() const { return body_; }
  const std::vector<Atom>& head() const { return head_; }
  const std::vector<Term>& existential_vars() const { return existentials_; }
  const std::vector<Term>& frontier() const { return frontier_; }
  const std::vector<Term>& body_vars() const { return body_vars_; }
  std::vector<Term> head_vars() const { return variables_of(head_); }
  bool is_full() const { return existentials_.empty(); }

  friend bool operator==(const TGD& a, const TGD& b) {
    return a.body_ == b.body_ && a.head_ == b.head_ &&
           a.existentials_ == b.existentials_;
  }

 private:
  void derive();

  std::vector<Atom> body_;
  std::vector<Atom> head_;
  std::vector<Term> existentials_;
  std::vector<Term> frontier_;
  std::vector<Term> body_vars_;
};

using TgdSet = std::vector<TGD>;

Schema schema_of(const TgdSet& sigma);
std::string to_string(const TGD& t);
std::string to_string(const CQ& q, std::string_view head_name = "q");

struct OMQ {
  Schema data_schema;
  TgdSet sigma;
  UCQ query;

  // T = data schema plus every predicate of sigma and the query.
  Schema extended_schema() const;
  bool full_data_schema() const { return extended_schema() == data_schema; }
};

struct CQS {
  TgdSet sigma;
  UCQ query;

  Schema schema() const;
};

// Variables become equally named constants.
Instance canonical_database(const CQ& q);
Instance canonical_database(const std::vector<Atom>& atoms);
// Constants become equally named variables; inverse of canonical_database.
std::vector<Atom> freeze_inverse(const std::vector<Atom>& atoms);
Term as_constant(const Term& t);
Term as_variable(const Term& t);

// Issues fresh chase nulls `_n<counter>` skipping names already in use.
class NullSupply {
 public:
  NullSupply() = default;
  explicit NullSupply(const std::vector<Term>& used);
  void reserve(const Term& t);
  Term next();
  std::uint64_t issued() const { return issued_; }

 private:
  std::uint64_t counter_ = 0;
  std::uint64_t issued_ = 0;
  std::set<std::uint32_t> used_;
};

}  // namespace gtgd

#endif  // GTGD_MODEL_HPP_
