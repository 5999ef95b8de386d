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

#ifndef GTGD_TESTS_SUPPORT_GENERATORS_HPP_
#define GTGD_TESTS_SUPPORT_GENERATORS_HPP_

#include <random>
#include <string>
#include <vector>

#include "gtgd/graph.hpp"
#include "gtgd/model.hpp"

namespace gtgd::gen {

struct Pred {
  std::string name;
  int arity;
};

class Random {
 public:
  explicit Random(unsigned seed) : rng_(seed) {}

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(int one_in = 2) { return below(one_in) == 0; }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

std::vector<Term> constants(int n);
std::vector<Term> variables(const std::vector<std::string>& names);

Atom atom(Random& r, const std::vector<Pred>& preds, const std::vector<Term>& pool);
Instance instance(Random& r, const std::vector<Pred>& preds, int n_constants, int n_atoms);
CQ cq(Random& r, const std::vector<Pred>& preds, int n_vars, int n_atoms, int n_answers);

// Random dependencies of the named class. Guarded rules use a single guard
// atom plus optional side atoms; existential rules add fresh head variables.
TGD guarded_tgd(Random& r, const std::vector<Pred>& preds, bool existential);
TGD guarded_full_tgd(Random& r, const std::vector<Pred>& preds);
TGD linear_tgd(Random& r, const std::vector<Pred>& preds);
// Frontier-guarded with one head atom.
TGD fg1_tgd(Random& r, const std::vector<Pred>& preds);

Graph graph(Random& r, int n, int edge_one_in);

}  // namespace gtgd::gen

#endif  // GTGD_TESTS_SUPPORT_GENERATORS_HPP_
