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
#include "gtgd/decision.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/omq_eval.hpp"
#include "gtgd/treewidth.hpp"
#include "gtgd/witness.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::cq;
using testing::tgds;
using testing::ucq;

TEST(CqsContains, Reflexive) {
  CQS s{tgds("A(x) -> exists y . R(x,y)"), ucq("q(x) :- R(x,y), A(x)")};
  EXPECT_EQ(cqs_contains(s, s).answer, Answer::yes);
}

TEST(CqsContains, ExampleQueryAndQPrime) {
  TgdSet sigma = tgds("R2(x) -> R4(x)");
  CQS q{sigma, ucq(testing::kExampleQuery)};
  CQS qp{sigma, ucq(testing::kExampleQueryPrime)};
  EXPECT_EQ(cqs_contains(q, qp).answer, Answer::yes);
  EXPECT_EQ(cqs_contains(qp, q).answer, Answer::yes);
}

TEST(CqsContains, NoWithCounterexample) {
  Verdict v = cqs_contains({{}, ucq("q() :- P(x,y)")}, {{}, ucq("q() :- P(x,x)")});
  EXPECT_EQ(v.answer, Answer::no);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->size(), 1u);
  EXPECT_FALSE(holds(cq("q() :- P(x,x)"), *v.counterexample, {}));
  EXPECT_TRUE(holds(cq("q() :- P(x,y)"), *v.counterexample, {}));
}

TEST(CqsContains, DifferingSigmaRejected) {
  EXPECT_ERRC(cqs_contains({tgds("A(x) -> B(x)"), ucq("q() :- A(x)")}, {{}, ucq("q() :- A(x)")}),
              Errc::differing_sigma);
}

TEST(CqsContains, ArityMismatchRejected) {
  EXPECT_ERRC(cqs_contains({{}, ucq("q(x) :- A(x)")}, {{}, ucq("q() :- A(x)")}),
              Errc::arity_mismatch);
}

TEST(CqsContains, AgreesWithBruteForceOnSmallCases) {
  gen::Random r(61);
  std::vector<gen::Pred> preds{{"A", 1}, {"B", 1}, {"R", 2}};
  for (int i = 0; i < 25; ++i) {
    TgdSet sigma{gen::fg1_tgd(r, preds)};
    int arity = r.below(2);
    CQS s1{sigma, UCQ{gen::cq(r, preds, 2, 2, arity)}};
    CQS s2{sigma, UCQ{gen::cq(r, preds, 2, 2, arity)}};
    Verdict v = cqs_contains(s1, s2);
    auto cex = oracle::brute_containment_counterexample(s1, s2, 2);
    if (v.answer == Answer::yes) EXPECT_FALSE(cex) << serialize(s1) << serialize(s2);
    if (v.answer == Answer::no) {
      ASSERT_TRUE(v.counterexample);
      EXPECT_TRUE(oracle::naive_satisfies(*v.counterexample, sigma));
      auto a1 = oracle::naive_eval(s1.query, *v.counterexample);
      auto a2 = oracle::naive_eval(s2.query, *v.counterexample);
      EXPECT_TRUE(a1.count(v.tuple) && !a2.count(v.tuple));
    }
  }
}

TEST(OmqContains, Reflexive) {
  OMQ q = testing::example_q2(true);
  EXPECT_EQ(omq_contains(q, q).answer, Answer::yes);
}

TEST(OmqContains, ExampleQ1AndApproximation) {
  OMQ q = testing::example_q1();
  OMQ a = parse_omq(std::string("@data-schema: R1/1, R2/1, R3/1, R4/1, P/2\n@tgds:\n"
                                "R2(x) -> R4(x)\n@query:\n") +
                    testing::kExampleQueryPrime + "\n");
  EXPECT_EQ(omq_contains(q, a).answer, Answer::yes);
  EXPECT_EQ(omq_contains(a, q).answer, Answer::yes);
}

TEST(OmqContains, SchemaMismatch) {
  EXPECT_ERRC(omq_contains(testing::example_q2(true), testing::example_q2(false)),
              Errc::schema_mismatch);
}

TEST(EquivK, ExampleQ1) {
  Verdict v = omq_equiv_k(testing::example_q1(), 1);
  ASSERT_EQ(v.answer, Answer::yes);
  ASSERT_TRUE(v.witness_omq);
  EXPECT_LE(ucq_treewidth(v.witness_omq->query), 1);
  const TgdSet& sigma = v.witness_omq->sigma;
  UCQ qprime = ucq(testing::kExampleQueryPrime);
  bool found = false;
  for (const CQ& p : v.witness_omq->query.disjuncts()) {
    found = found || (cqs_contains({sigma, UCQ{p}}, {sigma, qprime}).answer == Answer::yes &&
                      cqs_contains({sigma, qprime}, {sigma, UCQ{p}}).answer == Answer::yes);
  }
  EXPECT_TRUE(found);
}

TEST(EquivK, ExampleQ2FullSchema) {
  OMQ q = testing::example_q2(true);
  Verdict v = omq_equiv_k(q, 1);
  ASSERT_EQ(v.answer, Answer::no);
  ASSERT_TRUE(v.counterexample);
  EXPECT_TRUE(fpt_answers(q, *v.counterexample).answers.count(v.tuple));
}

TEST(EquivK, ExampleQ2WithoutR1) {
  Verdict v = omq_equiv_k(testing::example_q2(false), 1);
  ASSERT_EQ(v.answer, Answer::yes);
  EXPECT_LE(ucq_treewidth(v.witness_omq->query), 1);
}

TEST(EquivK, RefusesBelowThreshold) {
  EXPECT_ERRC(omq_equiv_k(parse_omq("@data-schema: T/3\n@query:\nq() :- T(x,y,z)\n"), 1),
              Errc::k_below_arity_threshold);
}

TEST(CqsEquivK, AlreadyLowWidth) {
  Verdict v = cqs_equiv_k({{}, ucq("q(x) :- R(x,y), R(y,z)")}, 1);
  EXPECT_EQ(v.answer, Answer::yes);
  ASSERT_TRUE(v.witness_ucq);
  EXPECT_LE(ucq_treewidth(*v.witness_ucq), 1);
}

TEST(CqsEquivK, ExampleAsCqs) {
  Verdict v = cqs_equiv_k({tgds("R2(x) -> R4(x)"), ucq(testing::kExampleQuery)}, 1);
  EXPECT_EQ(v.answer, Answer::yes);
}

TEST(CqsEquivK, LabelledGridIsNot) {
  CQ grid = testing::labelled_grid_cq(3, 3);
  Verdict v = cqs_equiv_k({{}, UCQ{grid}}, 1);
  EXPECT_EQ(v.answer, Answer::no);
}

TEST(SigmaMinimal, EmptySigmaIsCore) {
  CQ q = cq("q(x) :- R(x,y), R(x,z), S(z)");
  EXPECT_TRUE(isomorphic(sigma_minimal_cq(q, {}), core(q)));
}

TEST(SigmaMinimal, SingleAtom) {
  CQ q = cq("q() :- R(x,y)");
  EXPECT_TRUE(isomorphic(sigma_minimal_cq(q, {}), q));
}

TEST(SigmaMinimal, ExampleQuery) {
  TgdSet sigma = tgds("R2(x) -> R4(x)");
  CQ q = cq(testing::kExampleQuery);
  CQ p = sigma_minimal_cq(q, sigma);
  EXPECT_LE(p.variables().size(), 3u);
  EXPECT_EQ(cqs_contains({sigma, UCQ{p}}, {sigma, UCQ{q}}).answer, Answer::yes);
  EXPECT_EQ(cqs_contains({sigma, UCQ{q}}, {sigma, UCQ{p}}).answer, Answer::yes);
}

TEST(Baseline, ExampleQuery) {
  EXPECT_FALSE(cq_k_equiv_baseline(cq(testing::kExampleQuery), 1));
  EXPECT_TRUE(cq_k_equiv_baseline(cq(testing::kExampleQuery), 2));
}

TEST(Baseline, Path) { EXPECT_TRUE(cq_k_equiv_baseline(cq("q() :- R(x,y), R(y,z), R(z,w)"), 1)); }

TEST(Baseline, NonCoreCollapses) {
  EXPECT_TRUE(cq_k_equiv_baseline(cq("q() :- E(a,b), E(b,c), E(c,a), E(a,a)"), 1));
}

TEST(Verdicts, Names) {
  EXPECT_EQ(to_string(Answer::yes), "yes");
  EXPECT_EQ(to_string(Answer::no), "no");
  EXPECT_EQ(to_string(Answer::unknown), "unknown-at-budget");
}

}  // namespace
}  // namespace gtgd
