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

#ifndef GTGD_ELIMINATE_HPP_
#define GTGD_ELIMINATE_HPP_

#include <cstddef>

#include "gtgd/model.hpp"

namespace gtgd {

struct EliminateOptions {
  std::size_t type_cap = 100000;
  std::size_t cap = 10000;
};

// An OMQ with full guarded dependencies and the same answers as q on every
// database over its data schema. The dependencies derive the atoms over the
// database constants; each disjunct of the new query replaces the part of an
// original disjunct that lands on nulls by the type atoms entailing it. Throws
// Error(not_guarded), Error(type_space_cap_exceeded) or
// Error(rewriting_cap_exceeded).
OMQ eliminate_existentials(const OMQ& q, const EliminateOptions& opts = {});

// Full guarded rules atoms(tau) -> beta computing the ground part of the
// chase; one rule per subset-minimal type deriving beta.
TgdSet completion_rules(const TgdSet& sigma, std::size_t type_cap = 100000);

}  // namespace gtgd

#endif  // GTGD_ELIMINATE_HPP_
