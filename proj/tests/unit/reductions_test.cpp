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

#include <gtest/gtest.h>

#include <string>

#include "../support/oracles.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/minor.hpp"
#include "gtgd/reductions.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::labelled_grid_cq;
using testing::v;

Graph edge() {
  Graph g(2);
  g.add_edge(0, 1);
  return g;
}

TEST(Chi, ColexicographicBijection) {
  EXPECT_EQ(chi(1, 2), 1);
  EXPECT_EQ(chi(1, 3), 2);
  EXPECT_EQ(chi(2, 3), 3);
  EXPECT_EQ(chi(1, 4), 4);
  for (int c = 1; c <= 10; ++c) {
    auto [j, l] = chi_inverse(c);
    EXPECT_LT(j, l);
    EXPECT_EQ(chi(j, l), c);
  }
}

TEST(LabelledCliques, Triangle) {
  Graph k3 = complete_graph(3);
  EXPECT_EQ(labelled_cliques(k3, {1}).size(), 3u);
  EXPECT_EQ(labelled_cliques(k3, {1, 2}).size(), 6u);
  EXPECT_EQ(labelled_cliques(k3, {1, 2, 3}).size(), 6u);
  for (const LabelledClique& c : labelled_cliques(k3, {1, 3})) EXPECT_TRUE(is_labelled_clique(k3, c));
}

TEST(LabelledCliques, EdgelessHasOnlySingletons) {
  Graph g(3);
  EXPECT_EQ(labelled_cliques(g, {2}).size(), 3u);
  EXPECT_TRUE(labelled_cliques(g, {1, 2}).empty());
}

TEST(HasClique, AgreesWithOracle) {
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : oracle::graphs_up_to_iso(n)) {
      for (int k = 1; k <= 4; ++k) EXPECT_EQ(has_clique(g, k), oracle::naive_has_clique(g, k));
    }
  }
}

TEST(GroheDb, RejectsBadInputs) {
  CQ q = labelled_grid_cq(2, 1);
  Instance d = canonical_database(q);
  std::vector<Term> a = d.adom();
  MinorMap mu = *grid_minor(restricted_gaifman(d, a), 2, 1, true);
  EXPECT_ERRC(grohe_db(edge(), 2, d, d, {Term::constant("nope")}, mu), Errc::a_not_subset);
  EXPECT_ERRC(grohe_db(edge(), 2, d, Instance(), a, mu), Errc::precondition_violated);
  MinorMap broken = mu;
  broken.images[0] = broken.images[1];
  EXPECT_ERRC(grohe_db(edge(), 2, d, d, a, broken), Errc::invalid_minor_map);
}

TEST(GroheDb, CompleteGraphHasProjection) {
  CliqueReduction r = clique_reduction_constraint_free(complete_graph(3), 3, labelled_grid_cq(3, 3));
  EXPECT_TRUE(r.report.h0_homomorphism);
  EXPECT_TRUE(r.report.h0_surjective);
  EXPECT_TRUE(r.report.has_projection_hom);
  EXPECT_TRUE(r.report.ok()) << to_string(r.report);
}

TEST(GroheDb, EdgelessGraphHasNoProjection) {
  CliqueReduction r = clique_reduction_constraint_free(Graph(3), 2, labelled_grid_cq(2, 1));
  EXPECT_FALSE(r.report.has_projection_hom);
  EXPECT_FALSE(r.report.has_k_clique);
  EXPECT_TRUE(r.report.biconditional);
}

TEST(ReductionProperties, CorruptedH0Detected) {
  CliqueReduction r = clique_reduction_constraint_free(edge(), 2, labelled_grid_cq(2, 1));
  ASSERT_TRUE(r.report.h0_homomorphism);
  GroheDb bad = r.gdb;
  Term other = Term::constant("x10");
  for (auto& [from, to] : bad.h0) {
    if (to == Term::constant("x00")) to = other;
  }
  ReductionReport rep = check_reduction_properties(bad, {}, edge(), 2, 1, 1);
  EXPECT_FALSE(rep.h0_homomorphism);
  EXPECT_FALSE(rep.ok());
}

TEST(ConstraintFree, EdgeSatisfiesQuery) {
  CQ q = labelled_grid_cq(2, 1);
  CliqueReduction r = clique_reduction_constraint_free(edge(), 2, q);
  EXPECT_TRUE(holds(q, r.dstar, {}));
  EXPECT_TRUE(oracle::naive_hom_exists(q.body(), r.dstar));
}

TEST(ConstraintFree, EdgelessFailsQuery) {
  CQ q = labelled_grid_cq(2, 1);
  CliqueReduction r = clique_reduction_constraint_free(Graph(3), 2, q);
  EXPECT_FALSE(holds(q, r.dstar, {}));
}

TEST(ConstraintFree, SizeAccounting) {
  // Each fact is copied once per labelled clique on its at most 3r indices.
  CQ q = labelled_grid_cq(3, 3);
  for (int n = 3; n <= 6; ++n) {
    Graph g = complete_graph(n);
    CliqueReduction r = clique_reduction_constraint_free(g, 3, q);
    std::size_t per_fact = 0;
    for (int size = 1; size <= 3; ++size) {
      std::size_t perms = 1;
      for (int i = 0; i < size; ++i) perms *= static_cast<std::size_t>(n - i);
      per_fact = std::max(per_fact, perms);
    }
    EXPECT_LE(r.dstar.size(), q.body().size() * per_fact);
  }
}

TEST(ConstraintFree, ExhaustiveSmallGraphsAtTwo) {
  CQ q = labelled_grid_cq(2, 1);
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : oracle::graphs_up_to_iso(n)) {
      CliqueReduction r = clique_reduction_constraint_free(g, 2, q);
      EXPECT_EQ(oracle::naive_hom_exists(q.body(), r.dstar), oracle::naive_has_clique(g, 2));
      EXPECT_TRUE(r.report.h0_homomorphism);
      EXPECT_TRUE(r.report.biconditional);
    }
  }
}

TEST(ConstraintFree, RequiresBooleanConnectedCore) {
  EXPECT_ERRC(clique_reduction_constraint_free(edge(), 2, testing::cq("q(x) :- E(x,y)")),
              Errc::precondition_violated);
  EXPECT_ERRC(clique_reduction_constraint_free(edge(), 2, testing::cq("q() :- A(x), B(y)")),
              Errc::precondition_violated);
}

TEST(ConstraintFree, TooNarrowQuery) {
  EXPECT_ERRC(clique_reduction_constraint_free(complete_graph(3), 3, labelled_grid_cq(2, 1)),
              Errc::no_grid_minor_found);
}

class CqsFixture : public ::testing::Test {
 protected:
  CqsFixture()
      : s(parse_cqs("@tgds:\nL00(x) -> exists y . M(x,y)\n@query:\n" +
                    to_string(labelled_grid_cq(3, 3)) + "\n")),
        p(s.query.disjuncts()[0]) {
    std::vector<Atom> body = p.body();
    body.push_back(Atom("M", {v("x00"), v("w")}));
    pprime = CQ({}, body);
  }

  CQS s;
  CQ p;
  CQ pprime;
};

TEST_F(CqsFixture, CompleteGraphSatisfiesAll) {
  CliqueReduction r = clique_reduction_cqs(complete_graph(6), 2, s, p, pprime, p.variables());
  EXPECT_TRUE(r.report.ok()) << to_string(r.report);
  EXPECT_TRUE(r.report.h0_surjective);
  ASSERT_TRUE(r.report.dstar_satisfies);
  EXPECT_TRUE(*r.report.dstar_satisfies);
  EXPECT_TRUE(oracle::naive_satisfies(r.dstar, s.sigma));
}

TEST_F(CqsFixture, UnsatisfyingPPrimeRejectedAtItemTwo) {
  try {
    clique_reduction_cqs(complete_graph(3), 2, s, p, p, p.variables());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::lemma_precondition_failed);
    EXPECT_NE(std::string(e.what()).find("item 2"), std::string::npos) << e.what();
  }
}

TEST_F(CqsFixture, BiconditionalOnFiveVertexGraphs) {
  for (const Graph& g : oracle::graphs_up_to_iso(5)) {
    CliqueReduction r = clique_reduction_cqs(g, 2, s, p, pprime, p.variables());
    EXPECT_EQ(r.report.has_projection_hom, oracle::naive_has_clique(g, 2));
    EXPECT_TRUE(r.report.h0_homomorphism);
  }
}

}  // namespace
}  // namespace gtgd
