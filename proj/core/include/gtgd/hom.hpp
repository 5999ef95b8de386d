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

#ifndef GTGD_HOM_HPP_
#define GTGD_HOM_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "gtgd/model.hpp"

namespace gtgd {

using Tuple = std::vector<Term>;

// Per-predicate and per-(predicate, position, term) lookup over a fixed atom
// list. Atom ids follow the list order.
class AtomIndex {
 public:
  AtomIndex() = default;
  explicit AtomIndex(std::vector<Atom> atoms);
  explicit AtomIndex(const Instance& inst) : AtomIndex(inst.atoms()) {}

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(std::uint32_t id) const { return atoms_[id]; }
  const std::vector<std::uint32_t>& with_pred(Symbol p) const;
  const std::vector<std::uint32_t>& with_arg(Symbol p, std::size_t pos,
                                             const Term& t) const;

 private:
  struct Key {
    std::uint32_t pred;
    std::uint32_t pos;
    std::uint64_t term;
    bool operator==(const Key& o) const {
      return pred == o.pred && pos == o.pos && term == o.term;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::vector<Atom> atoms_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> by_pred_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> by_arg_;
};

enum class HomMode { first, all, count };

struct HomResult {
  std::vector<TermMap> homomorphisms;
  std::uint64_t count = 0;
};

// Callback returns false to stop the enumeration.
using HomCallback = std::function<bool(const TermMap&)>;

// Enumerates the extensions of `fixed` mapping every source term into the
// target so that each source atom lands on a target atom. Source terms absent
// from `fixed` are free, whether variables or constants. Returns false when
// the callback stopped the search.
bool for_each_homomorphism(const std::vector<Atom>& source,
                           const AtomIndex& target, const TermMap& fixed,
                           const HomCallback& fn);

HomResult find_homomorphisms(const std::vector<Atom>& source,
                             const Instance& target, const TermMap& fixed,
                             HomMode mode);
HomResult find_homomorphisms(const CQ& source, const Instance& target,
                             const TermMap& fixed, HomMode mode);
// Constants of the source instance are mapped unless pinned by `fixed`.
HomResult find_homomorphisms(const Instance& source, const Instance& target,
                             const TermMap& fixed, HomMode mode);

std::optional<TermMap> find_homomorphism(const std::vector<Atom>& source,
                                         const AtomIndex& target,
                                         const TermMap& fixed = {});
bool has_homomorphism(const std::vector<Atom>& source, const Instance& target,
                      const TermMap& fixed = {});

std::set<Tuple> eval(const CQ& q, const Instance& inst);
std::set<Tuple> eval(const UCQ& q, const Instance& inst);
std::set<Tuple> eval(const CQ& q, const AtomIndex& index);
// True iff the tuple is an answer; throws Error(arity_mismatch).
bool holds(const CQ& q, const Instance& inst, const Tuple& answer);
bool holds(const UCQ& q, const Instance& inst, const Tuple& answer);
bool holds(const CQ& q, const AtomIndex& index, const Tuple& answer);

// inst satisfies q(answer) and every witnessing homomorphism is injective.
bool holds_io(const Instance& inst, const CQ& q, const Tuple& answer);

struct Contraction {
  CQ cq;
  TermMap quotient;
};

// All contractions including the identity, deduplicated by resulting query.
// Throws Error(enumeration_cap_exceeded) beyond `cap` partitions.
std::vector<Contraction> contractions(const CQ& q, std::size_t cap = 1000000);
// Throws Error(precondition_violated) unless inst satisfies q(answer).
Contraction io_witness_contraction(const Instance& inst, const CQ& q,
                                   const Tuple& answer);

// a ⊆ b: a homomorphism from b to a maps answer variables positionally.
bool contained_in(const CQ& a, const CQ& b);
bool equivalent(const CQ& a, const CQ& b);
bool isomorphic(const CQ& a, const CQ& b);
CQ core(const CQ& q);

}  // namespace gtgd

#endif  // GTGD_HOM_HPP_
