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

#ifndef GTGD_DECISION_HPP_
#define GTGD_DECISION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gtgd/approximation.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/model.hpp"
#include "gtgd/omq_eval.hpp"

namespace gtgd {

enum class Answer { yes, no, unknown };

// "yes", "no" or "unknown-at-budget".
std::string_view to_string(Answer a);

struct Verdict {
  Answer answer = Answer::unknown;
  // For containment "no": a database where `tuple` answers the left side and
  // not the right side. It satisfies the dependencies for CQS checks and is
  // over the data schema for OMQ checks.
  std::optional<Instance> counterexample;
  Tuple tuple;
  // For equivalence "yes": an equivalent query of bounded treewidth.
  std::optional<OMQ> witness_omq;
  std::optional<UCQ> witness_ucq;
  std::string detail;
};

struct DecisionBudget {
  FptOptions fpt;
  ApproxOptions approx;
  std::size_t rewrite_cap = 2000;
  // Chase depth for dependencies outside the guarded class.
  std::uint64_t chase_levels = 12;
  std::uint64_t atom_cap = 100000;
  // Domain size and node limit of the finite counterexample search.
  std::size_t dom_cap = 4;
  std::size_t node_cap = 100000;
  // Candidate databases examined by the bounded OMQ counterexample search.
  std::size_t search_cap = 5000;
};

// S1 within S2 iff for each p1 in q1 some p2 in q2 has x in p2(chase(p1)).
// Exact for guarded sets; frontier-guarded sets use a chase prefix and a
// finite model search. Throws Error(differing_sigma), Error(arity_mismatch).
Verdict cqs_contains(const CQS& s1, const CQS& s2, const DecisionBudget& budget = {});

// Q1(D) within Q2(D) for every database D over the data schema. Exact when
// rewriting q1 under Q1's dependencies terminates within the cap; otherwise a
// sufficient test plus a bounded counterexample search. Throws
// Error(schema_mismatch), Error(arity_mismatch).
Verdict omq_contains(const OMQ& q1, const OMQ& q2, const DecisionBudget& budget = {});

// Uniform UCQ_k-equivalence for guarded OMQs: Q within its compact
// approximation. Throws Error(k_below_arity_threshold).
Verdict omq_equiv_k(const OMQ& q, int k, const DecisionBudget& budget = {});

// Uniform UCQ_k-equivalence for frontier-guarded CQSs via the contraction
// approximation. Throws Error(k_below_threshold).
Verdict cqs_equiv_k(const CQS& s, int k, const DecisionBudget& budget = {});

// A CQ equivalent to q under sigma with the fewest variables among the
// restrictions of the ground chase of q; core(q) when none is smaller.
// Throws Error(budget_exceeded).
CQ sigma_minimal_cq(const CQ& q, const TgdSet& sigma, const DecisionBudget& budget = {});

// cq_treewidth(core(q)) <= k.
bool cq_k_equiv_baseline(const CQ& q, int k);

}  // namespace gtgd

#endif  // GTGD_DECISION_HPP_
