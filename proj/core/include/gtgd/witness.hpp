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

#ifndef GTGD_WITNESS_HPP_
#define GTGD_WITNESS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gtgd/hom.hpp"
#include "gtgd/model.hpp"

namespace gtgd {

// A dependency with a body match whose head has no extension in the instance.
struct ActiveTrigger {
  std::size_t tgd = 0;
  TermMap h;
};

std::optional<ActiveTrigger> first_active_trigger(const Instance& m, const TgdSet& sigma);
bool satisfies(const Instance& m, const TgdSet& sigma);

// Called with the candidate model and the atoms just added; false prunes the
// branch. Must be monotone: a rejected instance has only rejected supersets.
using ModelFilter = std::function<bool(const Instance&, const std::vector<Atom>&)>;

struct ModelSearchOptions {
  std::size_t dom_cap = 4;
  std::size_t node_cap = 200000;
  // Prefix of fresh elements, numbered from 1.
  std::string fresh_prefix = "_e";
};

struct ModelSearchResult {
  std::optional<Instance> model;
  // True when the node cap cut the search short.
  bool exhausted_budget = false;
};

// Finite M containing d with M |= sigma and |adom(M)| <= dom_cap, built by
// firing active triggers with existentials mapped to old or fresh elements.
// Smaller domains are tried first.
ModelSearchResult search_model(const Instance& d, const TgdSet& sigma,
                               const ModelFilter& ok, const ModelSearchOptions& opts = {});

// Model M of sigma containing d, over at most dom_cap elements, such that a
// CQ with at most n variables holds in M (constants of d fixed) iff it holds
// in chase(d, sigma). Checked on every restriction M|X with |X| <= n; the
// chase side uses fpt evaluation for guarded sigma and a chase prefix of
// `levels` otherwise.
std::optional<Instance> finite_witness_search(const Instance& d, const TgdSet& sigma,
                                              std::size_t n, std::size_t dom_cap,
                                              std::size_t node_cap = 200000,
                                              std::size_t levels = 8);

struct SatisfyingDbOptions {
  std::size_t dom_cap = 6;
  std::size_t node_cap = 200000;
  // Runs the model check and the answer comparison on the result.
  bool verify = true;
};

// D+ (ground chase atoms over adom(d)) together with one finite witness per
// maximal guarded tuple of D+, fresh elements renamed apart. Throws
// Error(not_guarded) and Error(finite_witness_not_found).
Instance satisfying_db_from_omq(const Instance& d, const TgdSet& sigma, const UCQ& q,
                                std::size_t n, const SatisfyingDbOptions& opts = {});

}  // namespace gtgd

#endif  // GTGD_WITNESS_HPP_
