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
#include "gtgd/hom.hpp"
#include "gtgd/witness.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::db;
using testing::tgds;
using testing::ucq;

TEST(ActiveTrigger, FindsUnsatisfiedHead) {
  TgdSet s = tgds("A(x) -> exists y . R(x,y)");
  EXPECT_TRUE(first_active_trigger(db("A(a)"), s));
  EXPECT_FALSE(first_active_trigger(db("A(a)\nR(a,b)"), s));
  EXPECT_TRUE(satisfies(db("A(a)\nR(a,a)"), s));
}

TEST(SatisfiesAgreesWithOracle, Random) {
  gen::Random r(71);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}};
  for (int i = 0; i < 200; ++i) {
    TgdSet s{gen::guarded_tgd(r, preds, r.coin()), gen::fg1_tgd(r, preds)};
    Instance m = gen::instance(r, preds, 3, 5);
    EXPECT_EQ(satisfies(m, s), oracle::naive_satisfies(m, s));
  }
}

TEST(FiniteWitness, TerminatingChase) {
  TgdSet s = tgds("A(x) -> B(x)");
  auto m = finite_witness_search(db("A(a)"), s, 2, 3);
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, db("A(a)\nB(a)"));
}

TEST(FiniteWitness, InfiniteChaseOneVariable) {
  TgdSet s = tgds("R(x,y) -> exists z . R(y,z)");
  auto m = finite_witness_search(db("R(a,b)"), s, 1, 4);
  ASSERT_TRUE(m);
  EXPECT_TRUE(oracle::naive_satisfies(*m, s));
  EXPECT_TRUE(db("R(a,b)").subset_of(*m));
}

TEST(FiniteWitness, LongerCycleForTwoVariables) {
  TgdSet s = tgds("R(x,y) -> exists z . R(y,z)");
  auto m = finite_witness_search(db("R(a,b)"), s, 2, 5);
  ASSERT_TRUE(m);
  EXPECT_TRUE(oracle::naive_satisfies(*m, s));
  EXPECT_FALSE(holds(testing::cq("q() :- R(x,x)"), *m, {}));
}

TEST(FiniteWitness, DomainCapTooSmall) {
  TgdSet s = tgds("R(x,y) -> exists z . R(y,z)");
  EXPECT_FALSE(finite_witness_search(db("R(a,b)"), s, 2, 2));
}

TEST(SatisfyingDb, FullSigma) {
  TgdSet s = tgds("A(x) -> B(x)\nR(x,y), B(x) -> B(y)");
  Instance d = db("A(a)\nR(a,b)");
  UCQ q = ucq("q(x) :- B(x)");
  Instance out = satisfying_db_from_omq(d, s, q, 1);
  EXPECT_TRUE(oracle::naive_satisfies(out, s));
  EXPECT_EQ(out, chase_full(d, s));
}

TEST(SatisfyingDb, ForcedShape) {
  TgdSet s = tgds("A(x) -> exists y . R(x,y)");
  Instance out = satisfying_db_from_omq(db("A(a)"), s, ucq("q(x) :- R(x,y)"), 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_TRUE(out.contains(Atom("A", {testing::c("a")})));
  EXPECT_EQ(out[1].pred, Symbol("R"));
  EXPECT_NE(out[1].args[1], testing::c("a"));
  EXPECT_TRUE(oracle::naive_satisfies(out, s));
}

TEST(SatisfyingDb, RecursiveMatchesDeepChase) {
  TgdSet s = tgds("A(x) -> exists y . R(x,y), A(y)\nR(x,y), B(y) -> B(x)");
  Instance d = db("A(a)\nB(b)\nR(a,b)");
  UCQ q = ucq("q(x) :- R(x,y), A(y)");
  Instance out = satisfying_db_from_omq(d, s, q, 2);
  EXPECT_TRUE(oracle::naive_satisfies(out, s));
  auto expected = oracle::deep_chase_answers(d, s, q);
  ASSERT_TRUE(expected);
  std::set<Tuple> got;
  std::vector<Term> adom = d.adom();
  for (const Tuple& t : eval(q, out)) {
    bool inside = true;
    for (const Term& x : t) inside = inside && std::binary_search(adom.begin(), adom.end(), x);
    if (inside) got.insert(t);
  }
  EXPECT_EQ(got, *expected);
}

TEST(SatisfyingDb, RejectsUnguarded) {
  EXPECT_ERRC(satisfying_db_from_omq(db("E(a,b)"), tgds("E(x,y), E(y,z) -> exists w . E(z,w)"),
                                     ucq("q() :- E(x,y)"), 1),
              Errc::not_guarded);
}

}  // namespace
}  // namespace gtgd
