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

#include <functional>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "gtgd/chase.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::c;
using testing::cq;
using testing::db;
using testing::ucq;
using testing::v;

TEST(FindHomomorphisms, AllMode) {
  HomResult r = find_homomorphisms(cq("q(x) :- R(x,y)"), db("R(a,b)\nR(b,c)"), {}, HomMode::all);
  ASSERT_EQ(r.homomorphisms.size(), 2u);
  EXPECT_EQ(r.homomorphisms[0].at(v("x")), c("a"));
  EXPECT_EQ(r.homomorphisms[0].at(v("y")), c("b"));
  EXPECT_EQ(r.homomorphisms[1].at(v("x")), c("b"));
  EXPECT_EQ(r.homomorphisms[1].at(v("y")), c("c"));
  EXPECT_EQ(find_homomorphisms(cq("q(x) :- R(x,y)"), db("R(a,b)\nR(b,c)"), {}, HomMode::count).count,
            2u);
}

TEST(FindHomomorphisms, ExampleQueryOverChase) {
  Instance chased = chase_full(db(testing::kExampleD1), testing::tgds("R2(x) -> R4(x)"));
  HomResult r = find_homomorphisms(cq(testing::kExampleQuery), chased, {}, HomMode::all);
  ASSERT_FALSE(r.homomorphisms.empty());
  TermMap expected{{v("x1"), c("a")}, {v("x2"), c("b")}, {v("x3"), c("c")}, {v("x4"), c("b")}};
  EXPECT_EQ(r.homomorphisms[0], expected);
  EXPECT_TRUE(oracle::naive_hom_exists(cq(testing::kExampleQuery).body(), chased));
}

TEST(FindHomomorphisms, ExampleQueryWithoutChase) {
  EXPECT_TRUE(find_homomorphisms(cq(testing::kExampleQuery), db(testing::kExampleD1), {},
                                 HomMode::all)
                  .homomorphisms.empty());
  EXPECT_FALSE(oracle::naive_hom_exists(cq(testing::kExampleQuery).body(), db(testing::kExampleD1)));
}

TEST(Eval, Projection) {
  EXPECT_EQ(eval(ucq("q(x) :- R(x,y)"), db("R(a,b)\nR(b,c)")),
            (std::set<Tuple>{{c("a")}, {c("b")}}));
}

TEST(Eval, BooleanUnion) {
  EXPECT_EQ(eval(ucq("q() :- S(x)\nq() :- R(x,y)"), db("R(a,b)")), std::set<Tuple>{Tuple{}});
  EXPECT_TRUE(eval(ucq("q() :- S(x)"), db("R(a,b)")).empty());
}

TEST(Eval, ExampleQueryPrime) {
  EXPECT_EQ(eval(ucq(testing::kExampleQueryPrime), db("P(b,a)\nP(b,c)\nR1(a)\nR2(b)\nR3(c)")),
            std::set<Tuple>{Tuple{}});
}

TEST(Eval, AgreesWithNaiveOracle) {
  gen::Random r(3);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}, {"S", 2}, {"T", 3}};
  for (int i = 0; i < 300; ++i) {
    UCQ q{gen::cq(r, preds, 4, 1 + r.below(4), r.below(3))};
    Instance d = gen::instance(r, preds, 1 + r.below(4), 1 + r.below(8));
    EXPECT_EQ(eval(q, d), oracle::naive_eval(q, d)) << serialize(q) << serialize(d);
  }
}

TEST(Eval, Monotone) {
  gen::Random r(5);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}};
  for (int i = 0; i < 200; ++i) {
    UCQ q{gen::cq(r, preds, 3, 1 + r.below(3), r.below(2))};
    Instance small = gen::instance(r, preds, 3, 3);
    Instance big = unite(small, gen::instance(r, preds, 4, 4));
    std::set<Tuple> a = eval(q, small);
    std::set<Tuple> b = eval(q, big);
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST(Eval, CanonicalDatabaseContainsAnswerTuple) {
  gen::Random r(6);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}, {"T", 3}};
  for (int i = 0; i < 100; ++i) {
    CQ q = gen::cq(r, preds, 4, 1 + r.below(4), r.below(3));
    Tuple t;
    for (const Term& x : q.answer_vars()) t.push_back(as_constant(x));
    EXPECT_TRUE(eval(UCQ{q}, canonical_database(q)).count(t));
  }
}

TEST(HoldsIo, NonInjectiveOnly) { EXPECT_FALSE(holds_io(db("P(a,a)"), cq("q() :- P(x,y)"), {})); }

TEST(HoldsIo, InjectiveWitness) { EXPECT_TRUE(holds_io(db("P(a,b)"), cq("q() :- P(x,y)"), {})); }

TEST(HoldsIo, PathOnPath) {
  EXPECT_TRUE(holds_io(db("E(a,b)\nE(b,c)"), cq("q() :- E(x,y), E(y,z)"), {}));
}

TEST(HoldsIo, ArityMismatch) {
  try {
    holds_io(db("P(a,b)"), cq("q(x) :- P(x,y)"), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::arity_mismatch);
  }
}

TEST(IoWitnessContraction, Loop) {
  Contraction k = io_witness_contraction(db("P(a,a)"), cq("q() :- P(x,y)"), {});
  EXPECT_EQ(k.cq.body().size(), 1u);
  EXPECT_EQ(k.cq.body()[0].args[0], k.cq.body()[0].args[1]);
}

TEST(IoWitnessContraction, Identity) {
  Contraction k = io_witness_contraction(db("P(a,b)"), cq("q() :- P(x,y)"), {});
  EXPECT_TRUE(isomorphic(k.cq, cq("q() :- P(x,y)")));
}

TEST(IoWitnessContraction, CycleOnLoopCollapses) {
  Contraction k = io_witness_contraction(
      db("E(a,a)"), cq("q() :- E(x1,x2), E(x2,x3), E(x3,x4), E(x4,x1)"), {});
  EXPECT_TRUE(isomorphic(k.cq, cq("q() :- E(x,x)")));
  EXPECT_TRUE(holds_io(db("E(a,a)"), k.cq, {}));
}

TEST(IoWitnessContraction, PreconditionViolated) {
  try {
    io_witness_contraction(db("R(a,b)"), cq("q() :- P(x,y)"), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition_violated);
  }
}

TEST(Contractions, BooleanEdge) {
  std::vector<Contraction> ks = contractions(cq("q() :- P(x,y)"));
  ASSERT_EQ(ks.size(), 2u);
  int identity = isomorphic(ks[0].cq, cq("q() :- P(x,y)")) ? 0 : 1;
  EXPECT_TRUE(isomorphic(ks[identity].cq, cq("q() :- P(x,y)")));
  EXPECT_TRUE(isomorphic(ks[1 - identity].cq, cq("q() :- P(x,x)")));
}

TEST(Contractions, AnswerVariableAbsorbsExistential) {
  std::vector<Contraction> ks = contractions(cq("q(x) :- P(x,y)"));
  ASSERT_EQ(ks.size(), 2u);
  const Contraction& merged = ks[0].cq.body().size() == 1 && ks[0].cq.variables().size() == 1 ? ks[0] : ks[1];
  EXPECT_EQ(merged.cq, cq("q(x) :- P(x,x)"));
  EXPECT_EQ(merged.quotient.at(v("y")), v("x"));
}

TEST(Contractions, AnswerVariablesNeverMerged) {
  std::vector<Contraction> ks = contractions(cq("q(x,z) :- P(x,z)"));
  ASSERT_EQ(ks.size(), 1u);
  EXPECT_EQ(ks[0].cq, cq("q(x,z) :- P(x,z)"));
}

// Set partitions of n labelled elements with no block holding two of the
// first `answers` elements, by restricted growth strings.
std::size_t partition_count(int n, int answers) {
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  std::size_t count = 0;
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      ++count;
      return;
    }
    for (int b = 0; b <= used && b < n; ++b) {
      bool clash = false;
      if (i < answers) {
        for (int j = 0; j < i; ++j) clash |= j < answers && block[j] == b;
      }
      if (clash) continue;
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return count;
}

TEST(Contractions, CountMatchesPartitionEnumerator) {
  for (int n = 1; n <= 6; ++n) {
    for (int answers = 0; answers <= std::min(n, 2); ++answers) {
      std::vector<Atom> body;
      std::vector<Term> ans;
      for (int i = 0; i < n; ++i) {
        Term x = v("x" + std::to_string(i));
        body.emplace_back("A" + std::to_string(i), std::vector<Term>{x});
        if (i < answers) ans.push_back(x);
      }
      EXPECT_EQ(contractions(CQ(ans, body)).size(), partition_count(n, answers))
          << n << " " << answers;
    }
  }
}

TEST(Core, FoldsRedundantAtom) {
  EXPECT_TRUE(isomorphic(core(cq("q() :- P(x,y), P(x,z)")), cq("q() :- P(x,y)")));
}

TEST(Core, ExampleQueryIsCore) {
  EXPECT_TRUE(isomorphic(core(cq(testing::kExampleQuery)), cq(testing::kExampleQuery)));
}

TEST(Core, TrianglePlusEdge) {
  EXPECT_TRUE(isomorphic(core(cq("q() :- E(x,y), E(y,z), E(z,x), E(u,v)")),
                         cq("q() :- E(x,y), E(y,z), E(z,x)")));
}

TEST(Core, PropertiesOnRandomQueries) {
  gen::Random r(8);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}};
  for (int i = 0; i < 60; ++i) {
    CQ q = gen::cq(r, preds, 5, 2 + r.below(5), r.below(2));
    CQ k = core(q);
    EXPECT_TRUE(isomorphic(core(k), k));
    EXPECT_TRUE(equivalent(q, k));
    for (int j = 0; j < 4; ++j) {
      Instance d = gen::instance(r, preds, 3, 4);
      EXPECT_EQ(eval(UCQ{q}, d), eval(UCQ{k}, d));
    }
    Instance frozen = canonical_database(k);
    TermMap fixed;
    for (const Term& x : k.answer_vars()) fixed[x] = as_constant(x);
    for (const TermMap& h : find_homomorphisms(k, frozen, fixed, HomMode::all).homomorphisms) {
      std::set<Term> image;
      for (const auto& [from, to] : h) image.insert(to);
      EXPECT_EQ(image.size(), h.size());
    }
  }
}

}  // namespace
}  // namespace gtgd
