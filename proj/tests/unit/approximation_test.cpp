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
#include "gtgd/approximation.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/decision.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/omq_eval.hpp"
#include "gtgd/treewidth.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::cq;
using testing::tgds;
using testing::v;

TEST(Specializations, BooleanBinaryAtom) { EXPECT_EQ(specializations(cq("q() :- P(x,y)")).size(), 6u); }

TEST(Specializations, AnswerVariableInV) {
  std::vector<Specialization> all = specializations(cq("q(x) :- P(x,y)"));
  EXPECT_EQ(all.size(), 3u);
  for (const Specialization& s : all) {
    EXPECT_NE(std::find(s.v.begin(), s.v.end(), v("x")), s.v.end());
  }
}

TEST(Specializations, UnaryAtom) { EXPECT_EQ(specializations(cq("q() :- A(x)")).size(), 2u); }

TEST(Specializations, ContractionsMapFromSource) {
  CQ q = cq("q(x) :- R(x,y), R(y,z), S(z)");
  for (const Specialization& s : specializations(q)) {
    EXPECT_TRUE(contained_in(s.contraction, q));
  }
}

TEST(VComponents, SplitByV) {
  auto parts = v_components(cq("q() :- P(x,y), P(y,z)"), {v("y")});
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(to_string(parts[0]), "P(x,y)");
  EXPECT_EQ(to_string(parts[1]), "P(y,z)");
}

TEST(VComponents, AllVariablesInV) {
  EXPECT_TRUE(v_components(cq("q() :- P(x,y), P(y,z)"), {v("x"), v("y"), v("z")}).empty());
}

TEST(VComponents, EmptyVOnConnectedQuery) {
  auto parts = v_components(cq("q() :- P(x,y), P(y,z)"), {});
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].size(), 2u);
}

TEST(Groundings, EmptySigmaCoversComponent) {
  CQ q = cq("q() :- R(u,v)");
  Schema t;
  t.add("R", 2);
  Specialization s{q, {}};
  std::vector<Grounding> gs = groundings(s, {}, t);
  ASSERT_FALSE(gs.empty());
  for (const Grounding& g : gs) {
    EXPECT_TRUE(contained_in(g.cq, q));
    EXPECT_LE(g.cq.variables().size(), 2u);
  }
}

TEST(Groundings, IndependentComponentsMultiply) {
  TgdSet sigma = tgds("A(x) -> exists y . R(x,y)");
  Schema t = schema_of(sigma);
  CQ q = cq("q() :- R(x,y), R(x,z)");
  std::size_t one = groundings({cq("q(x) :- R(x,y)"), {v("x")}}, sigma, t).size();
  std::size_t both = groundings({q, {v("x")}}, sigma, t).size();
  EXPECT_EQ(both, one * one);
}

TEST(Groundings, PartsAreGuardedAndEntailComponent) {
  TgdSet sigma = tgds("A(x) -> exists y . R(x,y), B(y)");
  Schema t = schema_of(sigma);
  CQ q = cq("q(x) :- R(x,y), B(y)");
  for (const Specialization& s : specializations(q)) {
    for (const Grounding& g : groundings(s, sigma, t)) {
      for (const auto& part : g.parts) {
        Classification c = classify(TGD(part, {Atom("Goal", {})}));
        EXPECT_TRUE(c.guarded) << to_string(part);
      }
    }
  }
}

TEST(UcqApprox, ExampleQ1ContainsQPrime) {
  OMQ a = ucq_k_approx(testing::example_q1(), 1);
  UCQ qprime = testing::ucq(testing::kExampleQueryPrime);
  bool found = false;
  for (const CQ& p : a.query.disjuncts()) {
    found = found || (cqs_contains({a.sigma, UCQ{p}}, {a.sigma, qprime}).answer == Answer::yes &&
                      cqs_contains({a.sigma, qprime}, {a.sigma, UCQ{p}}).answer == Answer::yes);
  }
  EXPECT_TRUE(found);
  EXPECT_LE(ucq_treewidth(a.query), 1);
}

TEST(UcqApprox, LowWidthQuerySurvives) {
  OMQ q = parse_omq("@data-schema: R/2\n@query:\nq(x) :- R(x,y), R(y,z)\n");
  OMQ a = ucq_k_approx(q, 1);
  bool found = false;
  for (const CQ& p : a.query.disjuncts()) found = found || equivalent(p, q.query.disjuncts()[0]);
  EXPECT_TRUE(found);
}

TEST(UcqApprox, RefusesBelowArityThreshold) {
  OMQ q = parse_omq("@data-schema: T/3\n@query:\nq() :- T(x,y,z)\n");
  EXPECT_ERRC(ucq_k_approx(q, 1), Errc::k_below_arity_threshold);
  EXPECT_ERRC(compact_approx(q, 0), Errc::k_below_arity_threshold);
}

TEST(CompactApprox, FullSigmaAddsNoMarkers) {
  OMQ q = testing::example_q1();
  OMQ a = compact_approx(q, 1);
  Symbol marker = null_marker(q.extended_schema());
  for (const CQ& p : a.query.disjuncts()) {
    for (const Atom& at : p.body()) EXPECT_NE(at.pred, marker);
  }
  EXPECT_LE(a.query.size(), specializations(q.query.disjuncts()[0]).size());
}

TEST(CompactApprox, AgreesWithUcqApprox) {
  gen::Random r(51);
  std::vector<gen::Pred> preds{{"A", 1}, {"B", 1}, {"R", 2}};
  Schema data;
  for (const gen::Pred& p : preds) data.add(p.name, p.arity);
  for (int i = 0; i < 10; ++i) {
    OMQ q{data, {gen::guarded_tgd(r, preds, true)}, UCQ{gen::cq(r, preds, 3, 3, r.below(2))}};
    OMQ a = ucq_k_approx(q, 1);
    OMQ b = compact_approx(q, 1);
    for (int j = 0; j < 10; ++j) {
      Instance d = gen::instance(r, preds, 3, 4);
      auto qa = fpt_answers(a, d).answers;
      EXPECT_EQ(qa, fpt_answers(b, d).answers) << serialize(q) << serialize(d);
      for (const Tuple& t : qa) EXPECT_TRUE(fpt_answers(q, d).answers.count(t));
    }
  }
}

TEST(CqsApprox, LowWidthIncluded) {
  CQS s{{}, testing::ucq("q(x) :- R(x,y), R(y,z)")};
  CQS a = cqs_k_approx(s, 1);
  bool found = false;
  for (const CQ& p : a.query.disjuncts()) found = found || isomorphic(p, s.query.disjuncts()[0]);
  EXPECT_TRUE(found);
}

TEST(CqsApprox, FourCliqueAtWidthOne) {
  CQS s{{}, testing::ucq("q() :- E(a,b), E(a,c), E(a,d), E(b,c), E(b,d), E(c,d)")};
  CQS a = cqs_k_approx(s, 1);
  EXPECT_FALSE(a.query.empty());
  for (const CQ& p : a.query.disjuncts()) {
    EXPECT_LE(cq_treewidth(p), 1);
    EXPECT_TRUE(contained_in(p, s.query.disjuncts()[0]));
  }
}

TEST(CqsApprox, RefusesBelowThreshold) {
  CQS s{tgds("R(x,y) -> exists z . R(y,z), R(z,x)"), testing::ucq("q() :- R(x,y)")};
  EXPECT_ERRC(cqs_k_approx(s, 2), Errc::k_below_threshold);
}

}  // namespace
}  // namespace gtgd
