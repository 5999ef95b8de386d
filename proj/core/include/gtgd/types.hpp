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

#ifndef GTGD_TYPES_HPP_
#define GTGD_TYPES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "gtgd/hom.hpp"
#include "gtgd/model.hpp"

namespace gtgd {

// Integer pattern terms are constants named "1", "2", ...
Term pattern_term(int i);
int pattern_index(const Term& t);

// Guard pattern over 1..k with t1 = 1 and each next term either earlier or
// one above the previous maximum, plus side atoms over the guard's integers.
struct SigmaType {
  Atom guard;
  std::vector<Atom> side;

  int arity() const;
  std::vector<Atom> atoms() const;
  // atoms() with integer i replaced by args[i - 1].
  std::vector<Atom> instantiate(const std::vector<Term>& args) const;

  friend bool operator==(const SigmaType& a, const SigmaType& b) {
    return a.guard == b.guard && a.side == b.side;
  }
  friend bool operator<(const SigmaType& a, const SigmaType& b) {
    if (a.guard != b.guard) return a.guard < b.guard;
    return a.side < b.side;
  }
};

std::string to_string(const SigmaType& t);

// Renames the terms of `a` to 1, 2, ... in order of first occurrence and
// returns the renaming.
Atom normalize_atom(const Atom& a, TermMap* renaming = nullptr);

// Predicates of sigma, plus a 0-ary root predicate when some body is empty.
Schema type_schema(const TgdSet& sigma);

// All Sigma-types over the schema of sigma. Throws
// Error(type_space_cap_exceeded) when more than `cap` would be produced.
std::vector<SigmaType> enumerate_types(const TgdSet& sigma, std::size_t cap = 100000);
std::size_t count_types(const Schema& schema);

// Ground chase of the instance: the atoms over adom(I) entailed by sigma.
Instance complete(const Instance& inst, const TgdSet& sigma);

struct TypedAtom {
  SigmaType type;
  std::vector<Term> args;
};

// Type of an atom of D: chase atoms over its terms, normalized. Throws
// Error(not_guarded).
TypedAtom type_of_atom(const Atom& atom, const Instance& d, const TgdSet& sigma);
TypedAtom type_of_atom(const Atom& atom, const Instance& completion);

// Name of the 0-ary predicate standing in for empty bodies.
Symbol root_predicate();
// Empty bodies replaced by the root predicate.
TgdSet rooted(const TgdSet& sigma);

}  // namespace gtgd

#endif  // GTGD_TYPES_HPP_
