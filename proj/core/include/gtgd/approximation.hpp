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

#ifndef GTGD_APPROXIMATION_HPP_
#define GTGD_APPROXIMATION_HPP_

#include <cstddef>
#include <vector>

#include "gtgd/model.hpp"

namespace gtgd {

// (p, V): p a contraction, answer variables of p within V within var(p).
struct Specialization {
  CQ contraction;
  std::vector<Term> v;
};

struct ApproxOptions {
  // Candidate checks per specialization.
  std::size_t grounding_cap = 100000;
  // Groundings assembled per specialization.
  std::size_t assembly_cap = 100000;
  std::size_t contraction_cap = 1000000;
};

// Contractions in enumeration order, each with its V sets ordered by size
// then lexicographically.
std::vector<Specialization> specializations(const CQ& q, std::size_t cap = 1000000);

// Maximally [V]-connected components of p[V]: atoms with a variable outside
// V, grouped by connectivity through such variables.
std::vector<std::vector<Atom>> v_components(const CQ& p, const std::vector<Term>& v);
// Atoms of p whose variables all lie in V.
std::vector<Atom> v_part(const CQ& p, const std::vector<Term>& v);

struct Grounding {
  std::vector<Atom> g0;
  std::vector<std::vector<Atom>> parts;
  CQ cq;
};

// Subset-minimal Sigma-groundings of s over t, up to renaming of the fresh
// variables y<i>_<j>. Throws Error(not_guarded) or
// Error(enumeration_cap_exceeded).
std::vector<Grounding> groundings(const Specialization& s, const TgdSet& sigma,
                                  const Schema& t, const ApproxOptions& opts = {});

// Throws Error(k_below_arity_threshold) unless k >= ar(t) - 1.
void require_arity_threshold(const Schema& t, int k);

// (S, Sigma, groundings of treewidth at most k), normalized.
OMQ ucq_k_approx(const OMQ& q, int k, const ApproxOptions& opts = {});

// Fresh unary marker for nulls in compact_approx.
Symbol null_marker(const Schema& t);

// (S, Sigma', q'_k): heads mark existential variables with a fresh unary
// predicate and q'_k keeps the contractions of specializations that admit a
// grounding of treewidth at most k, marking variables outside V.
OMQ compact_approx(const OMQ& q, int k, const ApproxOptions& opts = {});

// Contractions of disjuncts with treewidth at most k. Throws
// Error(not_frontier_guarded) or Error(k_below_threshold) unless
// k >= r * m - 1.
CQS cqs_k_approx(const CQS& s, int k, const ApproxOptions& opts = {});

}  // namespace gtgd

#endif  // GTGD_APPROXIMATION_HPP_
