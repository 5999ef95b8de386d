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

#ifndef GTGD_REWRITE_HPP_
#define GTGD_REWRITE_HPP_

#include <cstddef>

#include "gtgd/model.hpp"

namespace gtgd {

struct RewriteOptions {
  std::size_t cap = 10000;
  // Drop disjuncts contained in another disjunct.
  bool prune_subsumed = true;
};

// Piece-unification rewriting: a UCQ q' with q'(D) = q(chase(D, sigma)) for
// every database D, when the process terminates. Rewritings that identify
// answer variables yield disjuncts with repeated answer terms. Throws
// Error(rewriting_cap_exceeded) when more than `cap` disjuncts accumulate.
UCQ ucq_rewrite(const TgdSet& sigma, const UCQ& q, const RewriteOptions& opts = {});

struct PartialRewriting {
  UCQ ucq;
  // False when the cap stopped the process; every disjunct is still sound.
  bool complete = true;
};

PartialRewriting ucq_rewrite_partial(const TgdSet& sigma, const UCQ& q,
                                     const RewriteOptions& opts = {});

// As ucq_rewrite; throws Error(not_linear) unless every body has one atom.
UCQ ucq_rewrite_linear(const TgdSet& sigma, const UCQ& q,
                       const RewriteOptions& opts = {});

// Renames non-answer variables to v1, v2, ... in order of first occurrence.
CQ canonical_variables(const CQ& q);

// Cores each disjunct, drops isomorphic copies and disjuncts contained in
// another disjunct.
UCQ normalize_ucq(const UCQ& q);

}  // namespace gtgd

#endif  // GTGD_REWRITE_HPP_
