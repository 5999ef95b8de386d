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

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "gtgd/chase.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/minor.hpp"
#include "gtgd/treewidth.hpp"
#include "gtgd/unravel.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::c;
using testing::cq;
using testing::db;

Graph single_edge() {
  Graph g(2);
  g.add_edge(0, 1);
  return g;
}

TEST(Gaifman, TernaryAtomIsTriangle) {
  Graph g = gaifman(db("R(a,b,c)"));
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.edge_count(), 3u);
}

TEST(Gaifman, ExampleQuery) {
  Graph g = gaifman(cq(testing::kExampleQuery), true);
  EXPECT_EQ(g.size(), 4);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(treewidth(g), 2);
}

TEST(Gaifman, UnaryAtomIsIsolatedVertex) {
  Graph g = gaifman(db("S(a)"));
  EXPECT_EQ(g.size(), 1);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Gaifman, FlagOnInstanceRejected) {
  try {
    gaifman(db("S(a)"), true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::flag_on_instance);
  }
}

TEST(DecideTw, SingleEdgeHasWidthOne) {
  auto td = decide_tw(single_edge(), 1);
  ASSERT_TRUE(td);
  EXPECT_EQ(td->width(), 1);
  EXPECT_EQ(treewidth(Graph(3)), 1);
}

TEST(DecideTw, CompleteGraphOnFour) {
  EXPECT_FALSE(decide_tw(complete_graph(4), 2));
  auto td = decide_tw(complete_graph(4), 3);
  ASSERT_TRUE(td);
  EXPECT_TRUE(is_valid_decomposition(complete_graph(4), *td));
  EXPECT_EQ(td->width(), 3);
}

TEST(DecideTw, ThreeByThreeGrid) {
  Graph g = grid_graph(3, 3);
  EXPECT_FALSE(decide_tw(g, 2));
  auto td = decide_tw(g, 3);
  ASSERT_TRUE(td);
  EXPECT_TRUE(oracle::naive_valid_decomposition(g, td->bags, td->edges));
}

TEST(DecideTw, LargeGraphSettledByHeuristicOrDegeneracy) {
  Graph path = grid_graph(1, 30);
  auto td = decide_tw(path, 1);
  ASSERT_TRUE(td);
  EXPECT_TRUE(oracle::naive_valid_decomposition(path, td->bags, td->edges));
  EXPECT_FALSE(decide_tw(complete_graph(20), 5));
}

TEST(DecideTw, LargeGraphNeedsBoundsMode) {
  try {
    decide_tw(grid_graph(5, 5), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::size_limit_exceeded);
  }
  TreewidthBounds b = treewidth_bounds(grid_graph(4, 5));
  EXPECT_LE(b.lower, 4);
  EXPECT_GE(b.upper, 4);
}

TEST(DecideTw, AgreesWithExhaustiveOrders) {
  gen::Random r(10);
  for (int i = 0; i < 150; ++i) {
    Graph g = gen::graph(r, 1 + r.below(8), 1 + r.below(4));
    int expected = oracle::brute_treewidth(g);
    EXPECT_EQ(treewidth(g), expected);
    auto td = decide_tw(g, expected);
    ASSERT_TRUE(td);
    EXPECT_TRUE(oracle::naive_valid_decomposition(g, td->bags, td->edges));
    if (expected > 1) EXPECT_FALSE(decide_tw(g, expected - 1));
  }
}

TEST(CqTreewidth, Examples) {
  EXPECT_EQ(cq_treewidth(cq(testing::kExampleQuery)), 2);
  EXPECT_EQ(cq_treewidth(cq(testing::kExampleQueryPrime)), 1);
  EXPECT_EQ(cq_treewidth(cq("q(x,y) :- R(x,y)")), 1);
}

TEST(EvalBoundedTw, LongPath) {
  std::string body;
  for (int i = 0; i < 20; ++i) {
    if (i) body += ", ";
    body += "E(x" + std::to_string(i) + ",x" + std::to_string(i + 1) + ")";
  }
  CQ q = cq("q(x0) :- " + body);
  gen::Random r(4);
  std::vector<Atom> atoms;
  std::vector<Term> cs = gen::constants(26);
  for (int i = 0; i < 200; ++i) {
    atoms.emplace_back("E", std::vector<Term>{cs[static_cast<std::size_t>(r.below(26))],
                                              cs[static_cast<std::size_t>(r.below(26))]});
  }
  Instance d(atoms);
  EXPECT_EQ(eval_bounded_tw(q, d, 1), eval(q, d));
}

TEST(EvalBoundedTw, SingleEdgeQuery) {
  EXPECT_EQ(eval_bounded_tw(cq("q() :- E(x,y)"), db("E(a,b)"), 1), std::set<Tuple>{Tuple{}});
  EXPECT_TRUE(eval_bounded_tw(cq("q() :- E(x,y)"), db("F(a,b)"), 1).empty());
}

TEST(EvalBoundedTw, ExamplePrimeOverChase) {
  Instance chased = chase_full(db(testing::kExampleD1), testing::tgds("R2(x) -> R4(x)"));
  EXPECT_EQ(eval_bounded_tw(cq(testing::kExampleQueryPrime), chased, 1), std::set<Tuple>{Tuple{}});
}

TEST(EvalBoundedTw, WidthExceeded) {
  try {
    eval_bounded_tw(cq(testing::kExampleQuery), db("P(a,b)"), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::width_exceeded);
  }
}

TEST(EvalBoundedTw, AgreesWithBacktracking) {
  gen::Random r(12);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}, {"S", 2}, {"T", 3}};
  int checked = 0;
  for (int i = 0; checked < 500 && i < 5000; ++i) {
    CQ q = gen::cq(r, preds, 5, 1 + r.below(6), r.below(3));
    int w = cq_treewidth(q);
    if (w > 3) continue;
    Instance d = gen::instance(r, preds, 1 + r.below(4), 2 + r.below(8));
    EXPECT_EQ(eval_bounded_tw(q, d, w), eval(q, d)) << to_string(q) << "\n" << serialize(d);
    ++checked;
  }
  EXPECT_EQ(checked, 500);
}

TEST(GridMinor, TwoByTwoInCompleteGraph) {
  auto m = grid_minor(complete_graph(4), 2, 2);
  ASSERT_TRUE(m);
  EXPECT_TRUE(is_valid_minor_map(complete_graph(4), *m));
}

TEST(GridMinor, NoneInTree) {
  Graph t(5);
  t.add_edge(0, 1);
  t.add_edge(0, 2);
  t.add_edge(2, 3);
  t.add_edge(2, 4);
  EXPECT_FALSE(grid_minor(t, 2, 2));
}

TEST(GridMinor, CycleIsItsOwnGrid) {
  auto m = grid_minor(cycle_graph(4), 2, 2);
  ASSERT_TRUE(m);
  for (const auto& image : m->images) EXPECT_EQ(image.size(), 1u);
}

TEST(GridMinor, ResultsAreValidOnRandomGraphs) {
  gen::Random r(13);
  for (int i = 0; i < 60; ++i) {
    Graph g = gen::graph(r, 4 + r.below(5), 2);
    for (auto [rows, cols] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
      auto m = grid_minor(g, rows, cols, false);
      if (!m) continue;
      std::string why;
      EXPECT_TRUE(is_valid_minor_map(g, *m, &why)) << why;
    }
  }
}

TEST(GridMinor, OversizedGridRefused) {
  try {
    grid_minor(complete_graph(5), 2, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::size_limit_exceeded);
  }
}

TEST(GuardedUnravel, DepthZeroIsRestriction) {
  Instance d = db("E(a,b)\nE(b,c)\nS(a)");
  Unraveling u = guarded_unravel(d, {c("a"), c("b")}, 0);
  EXPECT_EQ(u.instance, db("E(a,b)\nS(a)"));
}

TEST(GuardedUnravel, AcyclicInstanceIsHomEquivalent) {
  Instance d = db("E(a,b)\nE(b,c)\nE(c,d)\nS(d)");
  Unraveling u = guarded_unravel(d, {c("a"), c("b")}, 4);
  TermMap fixed{{c("a"), c("a")}, {c("b"), c("b")}};
  EXPECT_TRUE(has_homomorphism(freeze_inverse(u.instance.atoms()), d));
  EXPECT_TRUE(has_homomorphism(freeze_inverse(d.atoms()), u.instance));
}

TEST(GuardedUnravel, UpMapIsHomomorphism) {
  Instance d = db("E(a,b)\nE(b,a)");
  Unraveling u = guarded_unravel(d, {c("a"), c("b")}, 2);
  EXPECT_GT(u.instance.size(), 2u);
  for (const Atom& a : u.instance) EXPECT_TRUE(d.contains(substitute(u.up, a)));
  EXPECT_EQ(u.up.at(c("a")), c("a"));
  EXPECT_EQ(u.up.at(c("b")), c("b"));
}

TEST(GuardedUnravel, RandomUpMapsAreHomomorphisms) {
  gen::Random r(14);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}, {"T", 3}};
  for (int i = 0; i < 50; ++i) {
    Instance d = gen::instance(r, preds, 4, 5);
    const Atom& g = d[static_cast<std::size_t>(r.below(static_cast<int>(d.size())))];
    Tuple root = terms_of(g);
    Unraveling u = guarded_unravel(d, root, 2);
    for (const Atom& a : u.instance) EXPECT_TRUE(d.contains(substitute(u.up, a)));
    for (const Term& t : root) EXPECT_EQ(u.up.at(t), t);
  }
}

TEST(GuardedUnravel, UnguardedRootRejected) {
  try {
    guarded_unravel(db("E(a,b)\nE(b,c)"), {c("a"), c("c")}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_guarded);
  }
}

}  // namespace
}  // namespace gtgd
