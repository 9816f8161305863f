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
#include "solo/accountant.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "solo/mechanisms.hpp"

namespace solo {
namespace {

using RE = RealExpr;

PEnv<EpsCost> eps_env(std::initializer_list<std::pair<const char*, Rat>> xs) {
  PEnv<EpsCost> e;
  for (const auto& [k, v] : xs) e.set(k, EpsCost(v));
  return e;
}

EDCost ed(Rat e, Rat d) { return EDCost(RE::lit(e), RE::lit(d)); }

TEST(EpsSeqCompTest, AddsPointwise) {
  // addNoiseTwice: eps 2 then eps 3 on the same source totals eps 5.
  EXPECT_EQ(eps_seq_comp(eps_env({{"o", Rat(2)}}), eps_env({{"o", Rat(3)}})),
            eps_env({{"o", Rat(5)}}));
  EXPECT_EQ(eps_seq_comp(PEnv<EpsCost>(), eps_env({{"o", Rat(1)}})),
            eps_env({{"o", Rat(1)}}));
  EXPECT_EQ(eps_seq_comp(eps_env({{"a", Rat(1, 2)}}), eps_env({{"b", Rat(1, 2)}})),
            eps_env({{"a", Rat(1, 2)}, {"b", Rat(1, 2)}}));
}

TEST(EDSeqCompTest, AddsBothComponents) {
  PEnv<EDCost> a, b;
  a.set("o", ed(Rat(1), Rat(1, 100000)));
  b.set("o", ed(Rat(1), Rat(1, 100000)));
  PEnv<EDCost> c = ed_seq_comp(a, b);
  EXPECT_NEAR(c.get("o").eps().eval(), 2.0, 1e-12);
  EXPECT_NEAR(c.get("o").delta().eval(), 2e-5, 1e-15);
  EXPECT_EQ(ed_seq_comp(PEnv<EDCost>(), a), a);
  PEnv<EDCost> i;
  i.set("o", EDCost::infinity());
  EXPECT_TRUE(ed_seq_comp(a, i).get("o").is_inf());
}

TEST(AdvCompTest, MatchesTheoremFormula) {
  // k=100 composition of (0.1, 1e-6) at delta'=1e-5. Expected values were
  // evaluated independently before this test was written:
  //   eps' = 2*0.1*sqrt(2*100*ln(1e5)) = 9.597051824376162
  //   delta = 100*1e-6 + 1e-5 = 1.1e-4
  PEnv<EDCost> p;
  p.set("o", ed(Rat(1, 10), Rat(1, 1000000)));
  PEnv<EDCost> out = adv_comp(100, RE::lit(Rat(1, 100000)), p);
  EXPECT_NEAR(out.get("o").eps().eval(), 9.5972, 1e-3);
  EXPECT_NEAR(out.get("o").delta().eval(), 1.1e-4, 1e-9);
  // The symbolic shape keeps the theorem legible in reports.
  EXPECT_EQ(out.get("o").eps().str(), "(1/5)*sqrt(200*ln(100000))");
}

TEST(AdvCompTest, KEqualsOneAndEmptyEnv) {
  PEnv<EDCost> p;
  p.set("o", ed(Rat(1, 2), Rat(1, 1000000)));
  PEnv<EDCost> out = adv_comp(1, RE::lit(Rat(1, 100000)), p);
  EXPECT_NEAR(out.get("o").eps().eval(), 2 * 0.5 * std::sqrt(2 * std::log(1e5)), 1e-12);
  EXPECT_NEAR(out.get("o").delta().eval(), 1e-6 + 1e-5, 1e-15);
  EXPECT_TRUE(adv_comp(4, RE::lit(Rat(1, 100000)), PEnv<EDCost>()).empty());
}

TEST(AdvCompTest, RejectsOutOfRangeEps) {
  PEnv<EDCost> p;
  p.set("o", ed(Rat(2), Rat(0)));
  EXPECT_THROW(adv_comp(10, RE::lit(Rat(1, 100000)), p), SoloError);
  PEnv<EDCost> q;
  q.set("o", ed(Rat(1, 2), Rat(0)));
  EXPECT_THROW(adv_comp(10, RE::lit(Rat(2)), q), SoloError);
}

TEST(ScalePrivTest, MatchesIteratedSeqComp) {
  // Eps: scale 3 over {b:eps} is {b:3 eps}; one k-means iteration is 3 eps-DP
  // because three sequential eps costs add.
  EXPECT_EQ(scale_priv(3, eps_env({{"b", Rat(1)}})), eps_env({{"b", Rat(3)}}));
  EXPECT_EQ(scale_priv(1, eps_env({{"b", Rat(7, 3)}})), eps_env({{"b", Rat(7, 3)}}));
  EXPECT_EQ(scale_priv(8, eps_env({{"db", Rat(1, 4)}})), eps_env({{"db", Rat(2)}}));

  for (std::uint64_t k = 1; k <= 8; ++k) {
    PEnv<EpsCost> p = eps_env({{"a", Rat(1, 3)}, {"b", Rat(2)}});
    PEnv<EpsCost> it;
    for (std::uint64_t i = 0; i < k; ++i) it = eps_seq_comp(it, p);
    EXPECT_EQ(scale_priv(k, p), it);

    PEnv<EDCost> q;
    q.set("a", ed(Rat(1, 10), Rat(1, 1000000)));
    PEnv<EDCost> itq;
    for (std::uint64_t i = 0; i < k; ++i) itq = ed_seq_comp(itq, q);
    PEnv<EDCost> sq = scale_priv(k, q);
    EXPECT_NEAR(sq.get("a").eps().eval(), itq.get("a").eps().eval(), 1e-12);
    EXPECT_NEAR(sq.get("a").delta().eval(), itq.get("a").delta().eval(), 1e-18);
  }
}

TEST(AdvCompTest, BeatsSequentialBoundForLargeK) {
  // With eps' = 2 eps sqrt(2k ln(1/delta')), the advanced bound beats the
  // sequential bound k*eps exactly when k > 8 ln(1/delta'), i.e. k >= 93
  // for delta' = 1e-5 (eps cancels in the comparison).
  for (std::uint64_t k : {100u, 128u, 256u, 1024u}) {
    PEnv<EDCost> p;
    p.set("o", ed(Rat(1, 10), Rat(0)));
    double adv = adv_comp(k, RE::lit(Rat(1, 100000)), p).get("o").eps().eval();
    double seq = scale_priv(k, p).get("o").eps().eval();
    EXPECT_LT(adv, seq) << "k=" << k;
  }
  // Below the break-even point the sequential bound is tighter.
  PEnv<EDCost> p;
  p.set("o", ed(Rat(1, 10), Rat(0)));
  EXPECT_GT(adv_comp(16, RE::lit(Rat(1, 100000)), p).get("o").eps().eval(),
            scale_priv(16, p).get("o").eps().eval());
}

TEST(ConvTest, EpsToED) {
  PEnv<EDCost> c = conv_eps_to_ed(eps_env({{"o", Rat(2)}}));
  EXPECT_NEAR(c.get("o").eps().eval(), 2.0, 0);
  EXPECT_EQ(c.get("o").delta().eval(), 0.0);
  EXPECT_TRUE(conv_eps_to_ed(PEnv<EpsCost>()).empty());
  PEnv<EpsCost> i;
  i.set("o", EpsCost::infinity());
  EXPECT_TRUE(conv_eps_to_ed(i).get("o").is_inf());
}

TEST(ConvTest, EpsToRDP) {
  PEnv<RDPCost> r = conv_eps_to_rdp(eps_env({{"o", Rat(1)}}), Rat(2));
  EXPECT_EQ(r.get("o").alpha(), Rat(2));
  EXPECT_NEAR(r.get("o").eps().eval(), 1.0, 0);
  EXPECT_THROW(conv_eps_to_rdp(eps_env({{"o", Rat(1)}}), Rat(1)), SoloError);
}

TEST(ConvTest, RDPToED) {
  // (2, 0.5) at delta=1e-5 gives eps = 0.5 + ln(1e5)/(2-1) = 12.0129...,
  // evaluated independently before this test was written.
  PEnv<RDPCost> r;
  r.set("o", RDPCost(Rat(2), RE::lit(Rat(1, 2))));
  PEnv<EDCost> c = conv_rdp_to_ed(r, RE::lit(Rat(1, 100000)));
  EXPECT_NEAR(c.get("o").eps().eval(), 12.013, 1e-3);
  EXPECT_NEAR(c.get("o").delta().eval(), 1e-5, 0);
}

TEST(ConvTest, CompositionOnlyWeakens) {
  // Going eps -> RDP -> ED never reports less than the direct eps -> ED
  // embedding.
  Rng rng(31337);
  for (int i = 0; i < 300; ++i) {
    Rat eps(1 + rng.next_u64() % 40, 10);
    Rat alpha(2 + rng.next_u64() % 9);
    PEnv<EpsCost> p = eps_env({{"o", eps}});
    double direct = conv_eps_to_ed(p).get("o").eps().eval();
    double via_rdp = conv_rdp_to_ed(conv_eps_to_rdp(p, alpha), RE::lit(Rat(1, 100000)))
                         .get("o")
                         .eps()
                         .eval();
    EXPECT_GE(via_rdp, direct);
  }
}

TEST(RDPSeqCompTest, AdditiveAtFixedAlpha) {
  PEnv<RDPCost> a, b;
  a.set("o", RDPCost(Rat(2), RE::lit(Rat(1, 10))));
  b.set("o", RDPCost(Rat(2), RE::lit(Rat(1, 5))));
  PEnv<RDPCost> c = rdp_seq_comp(a, b);
  EXPECT_NEAR(c.get("o").eps().eval(), 0.3, 1e-12);
  EXPECT_EQ(rdp_seq_comp(PEnv<RDPCost>(), a), a);

  PEnv<RDPCost> d;
  d.set("o", RDPCost(Rat(3), RE::lit(Rat(1, 5))));
  EXPECT_THROW(rdp_seq_comp(a, d), SoloError);
}

TEST(MonoidLawsTest, EachVariantComposesAsCommutativeMonoid) {
  Rng rng(777);
  static const char* names[] = {"a", "b", "c"};
  auto random_eps = [&]() {
    PEnv<EpsCost> p;
    std::size_t n = rng.next_u64() % 3;
    for (std::size_t i = 0; i < n; ++i)
      p.set(names[rng.next_u64() % 3], EpsCost(Rat(rng.next_u64() % 5, 1 + rng.next_u64() % 3)));
    return p;
  };
  for (int i = 0; i < 2000; ++i) {
    PEnv<EpsCost> a = random_eps(), b = random_eps(), c = random_eps();
    EXPECT_EQ(eps_seq_comp(a, b), eps_seq_comp(b, a));
    EXPECT_EQ(eps_seq_comp(eps_seq_comp(a, b), c), eps_seq_comp(a, eps_seq_comp(b, c)));
    EXPECT_EQ(eps_seq_comp(a, PEnv<EpsCost>()), a);
  }
}

}  // namespace
}  // namespace solo
