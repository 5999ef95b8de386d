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

#ifndef GTGD_REDUCTIONS_HPP_
#define GTGD_REDUCTIONS_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtgd/graph.hpp"
#include "gtgd/minor.hpp"
#include "gtgd/model.hpp"

namespace gtgd {

// Partial map from indices 1..k to vertices; distinct indices go to adjacent
// vertices.
struct LabelledClique {
  std::map<int, int> eta;
};

bool is_labelled_clique(const Graph& g, const LabelledClique& c);
// Every labelled clique whose domain is exactly `domain`.
std::vector<LabelledClique> labelled_cliques(const Graph& g, const std::vector<int>& domain);
bool has_clique(const Graph& g, int size);

// Colexicographic bijection from pairs 1 <= j < l <= k onto 1..k(k-1)/2.
int chi(int j, int l);
std::pair<int, int> chi_inverse(int c);

// Gaifman graph of d restricted to a; vertex i is the i-th term of sorted a.
Graph restricted_gaifman(const Instance& d, const std::vector<Term>& a);

struct GroheDb {
  Instance dstar;
  // Projection from adom(dstar) onto adom(dprime).
  std::map<Term, Term> h0;
  Instance d;
  Instance dprime;
  std::vector<Term> a;
  int k = 0;
};

// D*(G, D, D', A, mu) with mu a minor map from the k x K grid, K = k(k-1)/2,
// onto restricted_gaifman(d, a). Elements of a become constants named
// z@i@j_l@v@u_w for the tuple (v, {u, w}, i, {j, l}, z) over vertex indices.
// Throws Error(a_not_subset), Error(precondition_violated) unless d is
// within dprime, and Error(invalid_minor_map).
GroheDb grohe_db(const Graph& g, int k, const Instance& d, const Instance& dprime,
                 const std::vector<Term>& a, const MinorMap& mu);

struct ReductionReport {
  bool h0_homomorphism = false;
  bool h0_surjective = false;
  bool has_k_clique = false;
  // Some h: D -> D* with h0(h(z)) = z on A.
  bool has_projection_hom = false;
  bool biconditional = false;
  // Present when the dependencies are nonempty.
  std::optional<bool> dprime_satisfies;
  std::optional<bool> clique_extension;
  std::optional<bool> dstar_satisfies;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

std::string to_string(const ReductionReport& r);

// Checks h0, the clique biconditional, and D* |= sigma whenever D' |= sigma
// and every clique of at most 3r vertices lies in one of 3rm vertices.
ReductionReport check_reduction_properties(const GroheDb& gdb, const TgdSet& sigma,
                                           const Graph& g, int k, int r, int m);

struct CliqueReduction {
  Instance dstar;
  CQS cqs;
  GroheDb gdb;
  ReductionReport report;
};

// Boolean connected core q: D* |= q iff g has a k-clique, with D = D' = D[q]
// and A all variables of q. Throws Error(precondition_violated) and
// Error(no_grid_minor_found).
CliqueReduction clique_reduction_constraint_free(const Graph& g, int k, const CQ& q);

// D* = D*(G, D[p], D[p'], X, mu) after verifying q equivalent to p under
// sigma, D[p'] |= sigma, D[p] within D[p'], and a grid minor in the Gaifman
// graph of p restricted to X. Throws Error(lemma_precondition_failed).
CliqueReduction clique_reduction_cqs(const Graph& g, int k, const CQS& s, const CQ& p,
                                     const CQ& pprime, const std::vector<Term>& x);

}  // namespace gtgd

#endif  // GTGD_REDUCTIONS_HPP_
