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

#ifndef GTGD_CHASE_HPP_
#define GTGD_CHASE_HPP_

#include <cstdint>

#include "gtgd/model.hpp"

namespace gtgd {

struct ChaseBudget {
  enum class Mode { levels, atom_cap, fixpoint_with_cap };

  Mode mode = Mode::fixpoint_with_cap;
  std::uint64_t limit = 1000000;
  // Atom ceiling applied in every mode.
  std::uint64_t max_atoms = UINT64_MAX;

  static ChaseBudget levels(std::uint64_t l, std::uint64_t max_atoms = UINT64_MAX) {
    return {Mode::levels, l, max_atoms};
  }
  static ChaseBudget atom_cap(std::uint64_t n) { return {Mode::atom_cap, n}; }
  static ChaseBudget fixpoint(std::uint64_t cap = 1000000) {
    return {Mode::fixpoint_with_cap, cap};
  }
};

struct ChaseResult {
  Instance instance;
  bool terminated = false;
  bool budget_exhausted = false;
  std::uint64_t steps = 0;
};

// Applies one trigger, drawing nulls from `nulls`. New atoms get level one
// above the highest body image level when `inst` carries levels. Throws
// Error(trigger_not_a_homomorphism).
Instance chase_step(const Instance& inst, const TGD& t, const TermMap& trigger,
                    NullSupply& nulls);
Instance chase_step(const Instance& inst, const TGD& t, const TermMap& trigger);

// Level-wise oblivious chase. Triggers fire once each, ordered by level, then
// dependency index, then body image.
ChaseResult chase(const Instance& d, const TgdSet& sigma, ChaseBudget budget);

// Fixpoint for dependencies without existentials; throws Error(not_full).
// For guarded sets without empty bodies the result size is checked against
// |D| * |T| * ar(T)^ar(T).
Instance chase_full(const Instance& d, const TgdSet& sigma);

// Atoms of chase(D, sigma) over adom(D) for guarded sigma. Throws
// Error(not_guarded) or Error(saturation_cap_exceeded) when more than `cap`
// bag patterns arise.
Instance ground_chase(const Instance& d, const TgdSet& sigma,
                      std::size_t cap = 200000);

// |D| * (|sigma| * H + 1)^i, saturating.
std::uint64_t linear_level_bound(std::size_t db_size, const TgdSet& sigma, int level);
// Every level prefix of a levelled run respects linear_level_bound. Throws
// Error(not_linear).
bool check_level_bound(const ChaseResult& run, const TgdSet& sigma);

}  // namespace gtgd

#endif  // GTGD_CHASE_HPP_
