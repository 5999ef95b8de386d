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
#include "gtgd/error.hpp"
#include "gtgd/validate.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::v;

TEST(Parse, SimpleTgd) {
  TgdSet s = parse_tgds("R2(x) -> R4(x)");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].frontier(), std::vector<Term>{v("x")});
  EXPECT_TRUE(s[0].existential_vars().empty());
}

TEST(Parse, ExistentialTgd) {
  TgdSet s = parse_tgds("E(x,y) -> exists z . E(y,z)");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].existential_vars(), std::vector<Term>{v("z")});
}

TEST(Parse, UnionOfQueries) {
  UCQ q = parse_query("q(x) :- R(x,y)\nq(x) :- S(x)");
  EXPECT_EQ(q.size(), 2u);
  EXPECT_EQ(q.arity(), 1u);
  EXPECT_EQ(q.disjuncts()[1].body()[0].pred, Symbol("S"));
}

TEST(Parse, SyntaxErrorCarriesLocation) {
  try {
    parse_tgds("R(x) -> S(x)\nR(x -> S(x)\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GE(e.column(), 1);
  }
}

TEST(Parse, ArityConflict) {
  try {
    parse_database("R(a,b)\nR(a)\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::arity_conflict);
  }
}

TEST(Parse, UnknownSection) {
  try {
    parse_omq("@data-schema: R/1\n@rules:\nR(x) -> S(x)\n@query:\nq() :- R(x)\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_section);
  }
}

TEST(Parse, CrlfAccepted) {
  EXPECT_EQ(parse_database("R(a,b)\r\nS(a)\r\n"), parse_database("R(a,b)\nS(a)\n"));
}

TEST(Parse, GraphEdges) {
  Graph g = parse_graph("# triangle\na b\nb c\nc a\nd\n");
  EXPECT_EQ(g.size(), 4);
  EXPECT_EQ(g.edge_count(), 3u);
}

TEST(Serialize, ExampleRoundTrip) {
  OMQ q = testing::example_q1();
  EXPECT_EQ(parse_omq(serialize(q)).sigma, q.sigma);
  EXPECT_EQ(parse_omq(serialize(q)).query, q.query);
  EXPECT_EQ(parse_omq(serialize(q)).data_schema, q.data_schema);
}

TEST(Serialize, EmptyDatabaseIsHeaderOnly) {
  std::string s = serialize(Instance());
  EXPECT_EQ(s.find('('), std::string::npos);
  EXPECT_TRUE(parse_database(s).empty());
}

TEST(Serialize, EmptyBodyTgd) {
  TgdSet s{TGD({}, {Atom("Start", {v("z")})})};
  EXPECT_NE(serialize(s).find("true -> exists z . Start(z)"), std::string::npos);
  EXPECT_EQ(parse_tgds(serialize(s)), s);
}

TEST(Serialize, RandomDocumentsRoundTrip) {
  gen::Random r(11);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}, {"T", 3}};
  for (int i = 0; i < 100; ++i) {
    TgdSet sigma;
    for (int j = 0; j < 3; ++j) sigma.push_back(gen::guarded_tgd(r, preds, r.coin()));
    EXPECT_EQ(parse_tgds(serialize(sigma)), sigma);
    Instance d = gen::instance(r, preds, 3, 5);
    EXPECT_EQ(parse_database(serialize(d)), d);
    UCQ q{gen::cq(r, preds, 3, 3, 1)};
    ASSERT_TRUE(validate(q).empty());
    EXPECT_EQ(parse_query(serialize(q)), q);
    CQS s{sigma, q};
    CQS back = parse_cqs(serialize(s));
    EXPECT_EQ(back.sigma, s.sigma);
    EXPECT_EQ(back.query, s.query);
  }
}

TEST(Serialize, LevelsAsTrailers) {
  Instance d({Atom("R", {Term::constant("a")}), Atom("S", {Term::constant("a")})}, {0, 2});
  EXPECT_NE(serialize(d, true).find("# level=2"), std::string::npos);
}

}  // namespace
}  // namespace gtgd
