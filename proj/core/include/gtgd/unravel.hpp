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

#ifndef GTGD_UNRAVEL_HPP_
#define GTGD_UNRAVEL_HPP_

#include "gtgd/hom.hpp"
#include "gtgd/model.hpp"

namespace gtgd {

struct Unraveling {
  Instance instance;
  // Each term of the unraveling to the constant of D it copies.
  TermMap up;
};

// Terms of some atom of D include every term of `set`.
bool is_guarded_set(const Instance& d, const std::vector<Term>& set);

// Prefix of the guarded unraveling of D at the tuple, over sequences of
// overlapping guarded sets of length at most depth + 1. Copies are named
// `<orig>@<path-hash>`. Throws Error(not_guarded).
Unraveling guarded_unravel(const Instance& d, const Tuple& root, int depth);

}  // namespace gtgd

#endif  // GTGD_UNRAVEL_HPP_
