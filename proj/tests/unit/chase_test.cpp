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

#include <cmath>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"
#include "helpers.hpp"

namespace gtgd {
namespace {

using testing::c;
using testing::db;
using testing::tgds;
using testing::v;

TEST(ChaseStep, FullRule) {
  TgdSet s = tgds("R2(x) -> R4(x)");
  EXPECT_EQ(chase_step(db("R2(b)"), s[0], {{v("x"), c("b")}}), db("R2(b)\nR4(b)"));
}

TEST(ChaseStep, ExistentialRule) {
  TgdSet s = tgds("E(x,y) -> exists z . E(y,z)");
  EXPECT_EQ(chase_step(db("E(a,b)"), s[0], {{v("x"), c("a")}, {v("y"), c("b")}}),
            db("E(a,b)\nE(b,_n1)"));
}

TEST(ChaseStep, EmptyBody) {
  TgdSet s = tgds("true -> exists z . Start(z)");
  EXPECT_EQ(chase_step(Instance(), s[0], {}), db("Start(_n1)"));
}

TEST(ChaseStep, BadTrigger) {
  TgdSet s = tgds("R2(x) -> R4(x)");
  try {
    chase_step(db("R2(b)"), s[0], {{v("x"), c("a")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::trigger_not_a_homomorphism);
  }
}

TEST(Chase, EmptySigmaIsIdentity) {
  ChaseResult r = chase(db("R(a,b)"), {}, ChaseBudget::fixpoint());
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.instance, db("R(a,b)"));
}

TEST(Chase, TwoLevelsOfInfiniteChase) {
  ChaseResult r = chase(db("E(a,b)"), tgds("E(x,y) -> exists z . E(y,z)"), ChaseBudget::levels(2));
  EXPECT_FALSE(r.terminated);
  EXPECT_EQ(r.instance, db("E(a,b)\nE(b,_n1)\nE(_n1,_n2)"));
  EXPECT_EQ(r.instance.level_of(Atom("E", {c("_n1"), c("_n2")})), 2);
}

TEST(Chase, ExampleFixpoint) {
  ChaseResult r = chase(db(testing::kExampleD1), tgds("R2(x) -> R4(x)"), ChaseBudget::fixpoint());
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.instance, unite(db(testing::kExampleD1), db("R4(b)")));
}

TEST(Chase, AtomCapFlagsExhaustion) {
  ChaseResult r =
      chase(db("E(a,b)"), tgds("E(x,y) -> exists z . E(y,z)"), ChaseBudget::atom_cap(10));
  EXPECT_FALSE(r.terminated);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_LE(r.instance.size(), 10u);
}

TEST(Chase, ObliviousFiresSatisfiedHeads) {
  ChaseResult r = chase(db("A(a)\nR(a,b)"), tgds("A(x) -> exists y . R(x,y)"), ChaseBudget::fixpoint());
  EXPECT_EQ(r.instance.size(), 3u);
}

TEST(Chase, DeterministicIncludingNullNames) {
  gen::Random r(21);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}, {"T", 3}};
  for (int i = 0; i < 30; ++i) {
    TgdSet s;
    for (int j = 0; j < 3; ++j) s.push_back(gen::guarded_tgd(r, preds, r.coin()));
    Instance d = gen::instance(r, preds, 3, 3);
    ChaseResult a = chase(d, s, ChaseBudget::levels(3, 5000));
    ChaseResult b = chase(d, s, ChaseBudget::levels(3, 5000));
    EXPECT_EQ(a.instance, b.instance);
    EXPECT_EQ(a.instance.levels(), b.instance.levels());
  }
}

TEST(Chase, LevelAnnotationsAreSound) {
  gen::Random r(22);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}};
  for (int i = 0; i < 40; ++i) {
    TgdSet s;
    for (int j = 0; j < 3; ++j) s.push_back(gen::linear_tgd(r, preds));
    Instance d = gen::instance(r, preds, 3, 3);
    ChaseResult run = chase(d, s, ChaseBudget::levels(3, 5000));
    const Instance& inst = run.instance;
    for (std::size_t k = 0; k < inst.size(); ++k) {
      int level = inst.level_at(k);
      if (level == 0) {
        EXPECT_TRUE(d.contains(inst[k]));
        continue;
      }
      // Some rule body maps onto atoms of level < level, one of them level - 1.
      bool explained = false;
      for (const TGD& t : s) {
        AtomIndex idx(inst);
        for_each_homomorphism(t.body(), idx, {}, [&](const TermMap& h) {
          int top = -1;
          for (const Atom& b : t.body()) top = std::max(top, *inst.level_of(substitute(h, b)));
          if (top != level - 1) return true;
          TermMap ext = h;
          for (const Atom& a : t.head()) {
            const Atom& target = inst[k];
            if (a.pred != target.pred) continue;
            bool ok = true;
            TermMap trial = ext;
            for (std::size_t p = 0; p < a.args.size() && ok; ++p) {
              auto it = trial.find(a.args[p]);
              if (it == trial.end()) {
                trial[a.args[p]] = target.args[p];
              } else {
                ok = it->second == target.args[p];
              }
            }
            if (ok) explained = true;
          }
          return !explained;
        });
        if (explained) break;
      }
      EXPECT_TRUE(explained) << to_string(inst[k]);
    }
  }
}

TEST(ChaseFull, TransitiveClosure) {
  EXPECT_EQ(chase_full(db("E(a,b)\nE(b,c)"), tgds("E(x,y), E(y,z) -> E(x,z)")),
            db("E(a,b)\nE(b,c)\nE(a,c)"));
}

TEST(ChaseFull, EmptySigma) { EXPECT_EQ(chase_full(db("E(a,b)"), {}), db("E(a,b)")); }

TEST(ChaseFull, RejectsExistentials) {
  try {
    chase_full(db("E(a,b)"), tgds("E(x,y) -> exists z . E(y,z)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_full);
  }
}

TEST(ChaseFull, GuardedSizeBound) {
  gen::Random r(23);
  std::vector<gen::Pred> preds{{"A", 1}, {"B", 1}, {"R", 2}, {"T", 3}};
  for (int i = 0; i < 100; ++i) {
    TgdSet s;
    for (int j = 0; j < 4; ++j) s.push_back(gen::guarded_full_tgd(r, preds));
    Instance d = gen::instance(r, preds, 4, 5);
    Instance out = chase_full(d, s);
    EXPECT_EQ(out, oracle::naive_full_closure(d, s));
    Schema t = schema_of(s);
    t.merge(d.schema());
    double ar = t.max_arity();
    EXPECT_LE(out.size(), d.size() * t.size() * std::pow(ar, ar));
  }
}

TEST(GroundChase, FullSigmaMatchesChaseFull) {
  TgdSet s = tgds("E(x,y), V(x) -> V(y)\nE(x,y) -> V(x)\nE(x,y) -> E(y,x)");
  Instance d = db("E(a,b)\nE(b,c)");
  EXPECT_EQ(ground_chase(d, s).without_levels(), chase_full(d, s));
}

TEST(GroundChase, GroundConsequenceOfNull) {
  EXPECT_EQ(ground_chase(db("A(a)"), tgds("A(x) -> exists y . R(x,y)\nR(x,y) -> B(x)")),
            db("A(a)\nB(a)"));
}

TEST(GroundChase, NonGroundAtomsDropped) {
  EXPECT_EQ(ground_chase(db("A(a)"), tgds("A(x) -> exists y . R(x,y)")), db("A(a)"));
}

TEST(GroundChase, RejectsUnguarded) {
  try {
    ground_chase(db("E(a,b)"), tgds("E(x,y), E(y,z) -> exists w . F(x,w)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_guarded);
  }
}

TEST(GroundChase, AgreesWithDeepChase) {
  gen::Random r(24);
  std::vector<gen::Pred> preds{{"A", 1}, {"B", 1}, {"R", 2}};
  int checked = 0;
  for (int i = 0; i < 200 && checked < 60; ++i) {
    TgdSet s;
    for (int j = 0; j < 3; ++j) s.push_back(gen::guarded_tgd(r, preds, r.coin()));
    Instance d = gen::instance(r, preds, 3, 3);
    std::vector<Term> adom = d.adom();
    std::optional<Instance> last;
    bool stable = false;
    for (int level = 2; level <= 12; ++level) {
      ChaseResult run = chase(d, s, ChaseBudget::levels(level, 100000));
      if (run.instance.size() >= 100000) break;
      Instance g = restrict(run.instance, std::set<Term>(adom.begin(), adom.end())).without_levels();
      if (run.terminated || (last && *last == g && level >= 6)) {
        last = g;
        stable = true;
        break;
      }
      last = g;
    }
    if (!stable) continue;
    EXPECT_EQ(ground_chase(d, s).without_levels(), *last) << serialize(s) << serialize(d);
    ++checked;
  }
  EXPECT_GE(checked, 40);
}

TEST(LevelBound, LinearChainHolds) {
  TgdSet s = tgds("A(x) -> B(x)\nB(x) -> exists y . R(x,y)\nR(x,y) -> A(y)");
  ChaseResult run = chase(db("A(a)"), s, ChaseBudget::levels(6));
  EXPECT_TRUE(check_level_bound(run, s));
}

TEST(LevelBound, CorruptedAnnotationDetected) {
  // Four level-1 atoms from a single-atom database exceed 1 * (1 * 2 + 1).
  Instance forged(db("A(a)\nR(a,n)\nS(n)\nT(n)\nU(n)").atoms(), {0, 1, 1, 1, 1});
  ChaseResult bad{forged, false, false, 0};
  EXPECT_FALSE(check_level_bound(bad, tgds("A(x) -> exists y . R(x,y), S(y)")));
}

TEST(LevelBound, RejectsNonLinear) {
  TgdSet s = tgds("A(x), B(x) -> C(x)");
  try {
    check_level_bound(chase(db("A(a)"), s, ChaseBudget::fixpoint()), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_linear);
  }
}

TEST(LevelBound, RandomLinearRunsHold) {
  gen::Random r(25);
  std::vector<gen::Pred> preds{{"A", 1}, {"R", 2}, {"T", 3}};
  for (int i = 0; i < 100; ++i) {
    TgdSet s;
    for (int j = 0; j < 1 + r.below(3); ++j) s.push_back(gen::linear_tgd(r, preds));
    ASSERT_TRUE(is_linear(s));
    ChaseResult run = chase(gen::instance(r, preds, 3, 3), s, ChaseBudget::levels(4, 100000));
    EXPECT_TRUE(check_level_bound(run, s));
  }
}

TEST(Universality, TerminatedChaseIsAModel) {
  gen::Random r(26);
  std::vector<gen::Pred> preds{{"A", 1}, {"B", 1}, {"R", 2}};
  for (int i = 0; i < 50; ++i) {
    TgdSet s;
    for (int j = 0; j < 3; ++j) s.push_back(gen::guarded_tgd(r, preds, r.coin()));
    Instance d = gen::instance(r, preds, 3, 3);
    ChaseResult run = chase(d, s, ChaseBudget::levels(6, 20000));
    if (!run.terminated) continue;
    EXPECT_TRUE(oracle::naive_satisfies(run.instance.without_levels(), s));
    EXPECT_TRUE(d.subset_of(run.instance));
  }
}

}  // namespace
}  // namespace gtgd
