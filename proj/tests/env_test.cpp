// Copyright 2026 The Solo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "solo/env.hpp"

#include <vector>

#include "gtest/gtest.h"
#include "solo/mechanisms.hpp"

namespace solo {
namespace {

SEnv make(std::initializer_list<std::pair<const char*, Sens>> xs) {
  SEnv e;
  for (const auto& [k, v] : xs) e.set(k, v);
  return e;
}

TEST(SensTest, InfinityAbsorbs) {
  EXPECT_EQ(Sens::infinity() + Sens(1), Sens::infinity());
  EXPECT_EQ(Sens::max(Sens::infinity(), Sens(7)), Sens::infinity());
  EXPECT_EQ(Sens(0) * Sens::infinity(), Sens(0));
  EXPECT_EQ(Sens(2) * Sens::infinity(), Sens::infinity());
  EXPECT_TRUE(Sens(5) <= Sens::infinity());
  EXPECT_FALSE(Sens::infinity() <= Sens(5));
}

TEST(SEnvPlusTest, MatchesPiecewiseDefinition) {
  // {db:1} + {db:1} = {db:2} -- the sensitivity has doubled.
  EXPECT_EQ(senv_plus(make({{"db", 1}}), make({{"db", 1}})), make({{"db", 2}}));
  // Identity element.
  EXPECT_EQ(senv_plus(SEnv(), make({{"a", 3}})), make({{"a", 3}}));
  // Disjoint keys stay in source order.
  EXPECT_EQ(senv_plus(make({{"a", 1}, {"c", 2}}), make({{"b", 5}})),
            make({{"a", 1}, {"b", 5}, {"c", 2}}));
  // Infinity absorbs.
  EXPECT_EQ(senv_plus(make({{"a", Sens::infinity()}}), make({{"a", 1}})),
            make({{"a", Sens::infinity()}}));
}

TEST(SEnvJoinTest, PointwiseMax) {
  EXPECT_EQ(senv_join(make({{"a", 1}}), make({{"a", 3}})), make({{"a", 3}}));
  EXPECT_EQ(senv_join(make({{"a", 2}}), make({{"b", 1}})), make({{"a", 2}, {"b", 1}}));
  EXPECT_EQ(senv_join(make({{"db", 1}}), make({{"db", 1}})), make({{"db", 1}}));
}

TEST(SEnvScaleTest, ScalesAndNormalizes) {
  EXPECT_EQ(senv_scale(Sens(5), make({{"o", 1}})), make({{"o", 5}}));
  // 0 * inf = 0, and zero entries are dropped.
  EXPECT_EQ(senv_scale(Sens(0), make({{"db", Sens::infinity()}})), SEnv());
  EXPECT_EQ(senv_scale(Sens(2), make({{"a", 3}, {"b", Sens::infinity()}})),
            make({{"a", 6}, {"b", Sens::infinity()}}));
}

TEST(SEnvTruncateTest, ReplacesNonzeroWithCost) {
  PEnv<EpsCost> t = senv_truncate(EpsCost(Rat(2)), make({{"o", 1}}));
  EXPECT_EQ(t.get("o"), EpsCost(Rat(2)));
  EXPECT_EQ(t.size(), 1u);
  // Zero maps to zero: {o:0} is not even representable, it is the absent key.
  EXPECT_TRUE(senv_truncate(EpsCost(Rat(7)), SEnv()).empty());
}

TEST(SEnvMaxTest, MaxSens) {
  EXPECT_EQ(senv_max(SEnv()), Sens(0));
  EXPECT_EQ(senv_max(make({{"a", 2}, {"b", 5}})), Sens(5));
  EXPECT_EQ(senv_max(make({{"a", Sens::infinity()}})), Sens::infinity());
}

TEST(SEnvLeqTest, PointwiseOrder) {
  EXPECT_TRUE(senv_leq(make({{"o", 1}}), make({{"o", 2}})));
  EXPECT_FALSE(senv_leq(make({{"o", 2}, {"p", 1}}), make({{"o", 2}})));
  EXPECT_TRUE(senv_leq(SEnv(), make({{"z", Sens::infinity()}})));
  EXPECT_TRUE(senv_leq(SEnv(), SEnv()));
}

TEST(SEnvScaleToInfTest, UniformReplacement) {
  PEnv<EpsCost> p = senv_scale_to_inf<EpsCost>(make({{"a", 3}, {"b", 1}}));
  EXPECT_TRUE(p.get("a").is_inf());
  EXPECT_TRUE(p.get("b").is_inf());
  EXPECT_TRUE(senv_scale_to_inf<EpsCost>(SEnv()).empty());
}

TEST(SEnvRenderTest, BracketForm) {
  EXPECT_EQ(make({{"db", 2}}).str(), "[db:2]");
  EXPECT_EQ(SEnv().str(), "[]");
  EXPECT_EQ(make({{"a", Sens::infinity()}, {"b", 1}}).str(), "[a:inf, b:1]");
}

// --- randomized algebraic laws --------------------------------------------

SEnv random_env(Rng& rng) {
  static const char* names[] = {"a", "b", "c", "d", "e"};
  SEnv env;
  std::size_t n = rng.next_u64() % 5;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = rng.next_u64() % 8;
    Sens s = v == 7 ? Sens::infinity() : Sens(v);
    env.set(names[rng.next_u64() % 5], s);
  }
  return env;
}

TEST(SEnvLawsTest, PlusIsCommutativeMonoid) {
  Rng rng(20260810);
  for (int i = 0; i < 2000; ++i) {
    SEnv a = random_env(rng), b = random_env(rng), c = random_env(rng);
    EXPECT_EQ(senv_plus(a, b), senv_plus(b, a));
    EXPECT_EQ(senv_plus(senv_plus(a, b), c), senv_plus(a, senv_plus(b, c)));
    EXPECT_EQ(senv_plus(a, SEnv()), a);
  }
}

TEST(SEnvLawsTest, JoinIsIdempotentCommutativeAssociative) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    SEnv a = random_env(rng), b = random_env(rng), c = random_env(rng);
    EXPECT_EQ(senv_join(a, a), a);
    EXPECT_EQ(senv_join(a, b), senv_join(b, a));
    EXPECT_EQ(senv_join(senv_join(a, b), c), senv_join(a, senv_join(b, c)));
    EXPECT_EQ(senv_join(a, SEnv()), a);
  }
}

TEST(SEnvLawsTest, ScaleDistributesOverPlus) {
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    SEnv a = random_env(rng), b = random_env(rng);
    Sens k = Sens(rng.next_u64() % 6);
    EXPECT_EQ(senv_scale(k, senv_plus(a, b)),
              senv_plus(senv_scale(k, a), senv_scale(k, b)));
  }
}

TEST(SEnvLawsTest, LeqIsPartialOrderAndPlusInflates) {
  Rng rng(4242);
  for (int i = 0; i < 2000; ++i) {
    SEnv a = random_env(rng), b = random_env(rng), c = random_env(rng);
    EXPECT_TRUE(senv_leq(a, a));
    if (senv_leq(a, b) && senv_leq(b, a)) {
      EXPECT_EQ(a, b);
    }
    if (senv_leq(a, b) && senv_leq(b, c)) {
      EXPECT_TRUE(senv_leq(a, c));
    }
    EXPECT_TRUE(senv_leq(a, senv_plus(a, b)));
  }
}

TEST(SEnvLawsTest, TruncateKeyUnion) {
  Rng rng(11);
  EpsCost c(Rat(3, 2));
  for (int i = 0; i < 2000; ++i) {
    SEnv a = random_env(rng), b = random_env(rng);
    PEnv<EpsCost> lhs = senv_truncate(c, senv_plus(a, b));
    PEnv<EpsCost> ta = senv_truncate(c, a), tb = senv_truncate(c, b);
    for (const auto& [k, v] : lhs) EXPECT_TRUE(ta.contains(k) || tb.contains(k));
    for (const auto& [k, v] : ta) EXPECT_TRUE(lhs.contains(k));
    for (const auto& [k, v] : tb) EXPECT_TRUE(lhs.contains(k));
  }
}

TEST(SEnvLawsTest, CanonicalAfterEveryOperation) {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    SEnv a = random_env(rng), b = random_env(rng);
    EXPECT_TRUE(senv_plus(a, b).canonical());
    EXPECT_TRUE(senv_join(a, b).canonical());
    EXPECT_TRUE(senv_scale(Sens(rng.next_u64() % 4), a).canonical());
    EXPECT_TRUE(senv_truncate(EpsCost(Rat(1)), a).canonical());
  }
}

TEST(RatTest, ParseDecimalExactly) {
  EXPECT_EQ(*Rat::parse_decimal("3"), Rat(3));
  EXPECT_EQ(*Rat::parse_decimal("0.25"), Rat(1, 4));
  EXPECT_EQ(*Rat::parse_decimal("1e-5"), Rat(1, 100000));
  EXPECT_EQ(*Rat::parse_decimal("1.25e2"), Rat(125));
  EXPECT_EQ(*Rat::parse_decimal("2.5"), Rat(5, 2));
  EXPECT_FALSE(Rat::parse_decimal("x").has_value());
  EXPECT_FALSE(Rat::parse_decimal("1.").has_value());
}

TEST(RatTest, LowestTerms) {
  EXPECT_EQ(Rat(2, 4), Rat(1, 2));
  EXPECT_EQ(Rat(2, 4).str(), "1/2");
  EXPECT_EQ(Rat(6, 3).str(), "2");
  EXPECT_TRUE(Rat(1, 3) < Rat(1, 2));
}

}  // namespace
}  // namespace solo
