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

#ifndef GTGD_OMQ_EVAL_HPP_
#define GTGD_OMQ_EVAL_HPP_

#include <cstdint>
#include <set>
#include <string>

#include "gtgd/hom.hpp"
#include "gtgd/linearize.hpp"
#include "gtgd/model.hpp"

namespace gtgd {

enum class FptStrategy {
  // Fixpoint over partial query matches per type of the linearized forest.
  type_fixpoint,
  // Level-bounded chase of (D*, Sigma*) followed by plain evaluation.
  level_bounded,
};

struct FptOptions {
  FptStrategy strategy = FptStrategy::type_fixpoint;
  // 0 selects (reachable types) x (largest disjunct size).
  std::uint64_t level_bound = 0;
  std::uint64_t atom_cap = 1000000;
  std::size_t type_cap = 100000;
};

struct OmqAnswers {
  std::set<Tuple> answers;
  // "exact", "stable" when the bounded chase terminated, or "no-at-depth".
  std::string status;
  std::uint64_t levels = 0;
};

// A partial match of one disjunct into the chase of a type: the atoms in
// `mask` are mapped, and `assignment`, indexed like the disjunct's sorted
// variables, holds a type integer, 0 for a null below the type's atom, or -1
// for variables outside the mapped atoms. Variables sent to nulls have all
// their atoms in `mask`; answer variables never are.
struct TypeMatch {
  std::size_t disjunct = 0;
  std::uint64_t mask = 0;
  std::vector<int> assignment;
};

// All partial matches per type of the linearization. Throws
// Error(size_limit_exceeded) for disjuncts over 64 atoms.
std::vector<std::vector<TypeMatch>> type_matches(const Linearization& lin,
                                                 const UCQ& q);

// Certain answers of a guarded OMQ. Throws Error(not_guarded) and
// Error(schema_mismatch) for atoms outside the data schema.
OmqAnswers fpt_answers(const OMQ& q, const Instance& d, const FptOptions& opts = {});
// Additionally throws Error(budget_exceeded) tagged "no-at-depth" when a
// bounded run hits the atom cap without producing the answer.
bool fpt_eval_omq(const OMQ& q, const Instance& d, const Tuple& answer,
                  const FptOptions& opts = {});

}  // namespace gtgd

#endif  // GTGD_OMQ_EVAL_HPP_
