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

#ifndef GTGD_LINEARIZE_HPP_
#define GTGD_LINEARIZE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtgd/model.hpp"
#include "gtgd/types.hpp"

namespace gtgd {

// One generator rule [tau](u) -> exists z . [tau_1](u_1), ..., [tau_n](u_n).
// Child positions refer to the parent's integers 1..k or to fresh nulls
// k+1..k+fresh.
struct TypeSuccessor {
  std::size_t tgd = 0;
  int fresh = 0;
  std::vector<std::size_t> children;
  // Per child: parent integer at each argument position.
  std::vector<std::vector<int>> args;
  // Per child: parent integer for each child integer 1..k_i.
  std::vector<std::vector<int>> terms;
};

class Linearization {
 public:
  // Dependencies with empty bodies replaced by the root predicate.
  const TgdSet& source() const { return sigma_; }
  std::size_t size() const { return types_.size(); }
  const SigmaType& type(std::size_t id) const { return types_[id]; }
  std::optional<std::size_t> find(const SigmaType& t) const;
  // Typed predicate t<id>_<guard predicate>.
  Symbol predicate(std::size_t id) const { return preds_[id]; }
  const std::vector<TypeSuccessor>& successors(std::size_t id) const {
    return succ_[id];
  }
  std::size_t rule_count() const;

  // Generator rules followed by one expander per type; all linear.
  TgdSet rules() const;
  // Comment lines "# t<id>_<pred> = [guard, {side}]".
  std::string legend() const;

 private:
  friend class LinearizationBuilder;

  TgdSet sigma_;
  std::vector<SigmaType> types_;
  std::map<SigmaType, std::size_t> ids_;
  std::vector<Symbol> preds_;
  std::vector<std::vector<TypeSuccessor>> succ_;
};

// Closes the given seed types under the generator; with no seeds every type
// over sch(sigma) is a seed. Throws Error(not_guarded) or
// Error(type_space_cap_exceeded).
Linearization linearize(const TgdSet& sigma, std::size_t type_cap = 100000);
Linearization linearize(const TgdSet& sigma, const std::vector<SigmaType>& seeds,
                        std::size_t type_cap = 100000);

struct BaseDatabase {
  Linearization sigma_star;
  // Typed atoms [tau](c) plus atoms of D outside sch(sigma).
  Instance instance;
  // Per atom of D over sch(sigma): its full type and arguments.
  std::vector<std::pair<std::size_t, std::vector<Term>>> roots;
  std::vector<Atom> passthrough;
};

// D* and the matching Sigma*. With `subset_types` every side subset of an
// atom's type yields a typed atom; otherwise only the full type does.
BaseDatabase linearize_with_base(const Instance& d, const TgdSet& sigma,
                                 bool subset_types = true,
                                 std::size_t type_cap = 100000);
Instance base_db(const Instance& d, const TgdSet& sigma);

}  // namespace gtgd

#endif  // GTGD_LINEARIZE_HPP_
