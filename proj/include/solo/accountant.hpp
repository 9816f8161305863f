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
//
// Privacy-cost composition: the monoid structure behind each privacy-monad
// variant, the k-fold loop costs, advanced composition, and the legal
// conversions between variants. All composition is symbolic; doubles appear
// only when a precondition needs a numeric check.
#ifndef SOLO_ACCOUNTANT_HPP
#define SOLO_ACCOUNTANT_HPP

#include <cstdint>
#include <string>

#include "solo/env.hpp"
#include "solo/realexpr.hpp"

namespace solo {

enum class Variant { kEps, kED, kRDP };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kEps: return "EpsPM";
    case Variant::kED: return "EDPM";
    case Variant::kRDP: return "RDPPM";
  }
  return "?";
}

// Sequential composition for pure epsilon-DP: pointwise rational addition.
inline PEnv<EpsCost> eps_seq_comp(const PEnv<EpsCost>& a, const PEnv<EpsCost>& b) {
  return PEnv<EpsCost>::combine(a, b, [](const EpsCost& x, const EpsCost& y) { return x + y; });
}

// Sequential composition for (eps, delta)-DP: pointwise symbolic addition of
// both components.
inline PEnv<EDCost> ed_seq_comp(const PEnv<EDCost>& a, const PEnv<EDCost>& b) {
  return PEnv<EDCost>::combine(a, b, [](const EDCost& x, const EDCost& y) {
    if (x.is_inf() || y.is_inf()) return EDCost::infinity();
    return EDCost(RealExpr::add(x.eps(), y.eps()), RealExpr::add(x.delta(), y.delta()));
  });
}

// Sequential composition for RDP: additive at a fixed order alpha. A shared
// source carrying two different orders is an error.
inline PEnv<RDPCost> rdp_seq_comp(const PEnv<RDPCost>& a, const PEnv<RDPCost>& b) {
  return PEnv<RDPCost>::combine(a, b, [](const RDPCost& x, const RDPCost& y) {
    if (x.is_inf() || y.is_inf()) return RDPCost::infinity();
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.alpha() != y.alpha())
      throw SoloError(Code::kAlphaMismatch,
                      "RDP composition at mismatched orders " + x.alpha().str() +
                          " and " + y.alpha().str());
    return RDPCost(x.alpha(), RealExpr::add(x.eps(), y.eps()));
  });
}

// k-fold sequential composition of the same cost: every entry multiplied
// by k. Agrees with iterating seq_comp k times.
inline PEnv<EpsCost> scale_priv(std::uint64_t k, const PEnv<EpsCost>& p) {
  return p.map_values([k](const EpsCost& c) { return c.scaled(Rat(k)); });
}
inline PEnv<EDCost> scale_priv(std::uint64_t k, const PEnv<EDCost>& p) {
  if (k == 0) return PEnv<EDCost>();
  RealExpr kk = RealExpr::lit(Rat(k));
  return p.map_values([&kk](const EDCost& c) {
    if (c.is_inf()) return EDCost::infinity();
    return EDCost(RealExpr::mul(kk, c.eps()), RealExpr::mul(kk, c.delta()));
  });
}
inline PEnv<RDPCost> scale_priv(std::uint64_t k, const PEnv<RDPCost>& p) {
  if (k == 0) return PEnv<RDPCost>();
  RealExpr kk = RealExpr::lit(Rat(k));
  return p.map_values([&kk](const RDPCost& c) {
    if (c.is_inf()) return RDPCost::infinity();
    return RDPCost(c.alpha(), RealExpr::mul(kk, c.eps()));
  });
}

// Advanced composition: k-fold adaptive composition of an (eps, delta)
// mechanism yields (2*eps*sqrt(2k*ln(1/delta')), k*delta + delta'). The
// per-step eps and delta' must lie in (0, 1).
inline PEnv<EDCost> adv_comp(std::uint64_t k, const RealExpr& delta_prime,
                             const PEnv<EDCost>& p) {
  if (k == 0) throw SoloError(Code::kPrecondition, "advanced composition needs k >= 1");
  double dp = delta_prime.eval();
  if (!(dp > 0.0 && dp < 1.0))
    throw SoloError(Code::kPrecondition,
                    "advanced composition needs delta' in (0,1), got " + std::to_string(dp));
  // ln(1/delta') with the reciprocal folded when delta' is a literal, so the
  // rendered cost stays readable.
  RealExpr ln_arg = delta_prime.kind() == RealExpr::Kind::kLit
                        ? RealExpr::lit(Rat(1) / delta_prime.lit_value())
                        : RealExpr::div(RealExpr::lit(Rat(1)), delta_prime);
  RealExpr root = RealExpr::sqrt(RealExpr::mul(RealExpr::lit(Rat(2 * k)), RealExpr::ln(ln_arg)));
  return p.map_values([&](const EDCost& c) {
    if (c.is_inf()) return EDCost::infinity();
    double e = c.eps().eval();
    if (!(e > 0.0 && e < 1.0))
      throw SoloError(Code::kPrecondition,
                      "advanced composition needs per-step eps in (0,1), got " +
                          std::to_string(e));
    RealExpr eps_out = RealExpr::mul(RealExpr::mul(RealExpr::lit(Rat(2)), c.eps()), root);
    RealExpr delta_out =
        RealExpr::add(RealExpr::mul(RealExpr::lit(Rat(k)), c.delta()), delta_prime);
    return EDCost(eps_out, delta_out);
  });
}

// eps-DP weakens to (eps, 0)-DP.
inline PEnv<EDCost> conv_eps_to_ed(const PEnv<EpsCost>& p) {
  return p.map_values([](const EpsCost& c) {
    if (c.is_inf()) return EDCost::infinity();
    return EDCost(RealExpr::lit(c.value()), RealExpr::lit(Rat(0)));
  });
}

// Pure eps-DP is (alpha, eps)-RDP for every order alpha > 1.
inline PEnv<RDPCost> conv_eps_to_rdp(const PEnv<EpsCost>& p, const Rat& alpha) {
  if (!(alpha > Rat(1)))
    throw SoloError(Code::kDomain, "RDP order alpha must be > 1, got " + alpha.str());
  return p.map_values([&alpha](const EpsCost& c) {
    if (c.is_inf()) return RDPCost::infinity();
    return RDPCost(alpha, RealExpr::lit(c.value()));
  });
}

// (alpha, eps)-RDP converts to (eps + ln(1/delta)/(alpha - 1), delta)-DP.
inline PEnv<EDCost> conv_rdp_to_ed(const PEnv<RDPCost>& p, const RealExpr& delta) {
  double d = delta.eval();
  if (!(d > 0.0 && d < 1.0))
    throw SoloError(Code::kDomain, "RDP conversion needs delta in (0,1), got " + std::to_string(d));
  RealExpr ln_arg = delta.kind() == RealExpr::Kind::kLit
                        ? RealExpr::lit(Rat(1) / delta.lit_value())
                        : RealExpr::div(RealExpr::lit(Rat(1)), delta);
  return p.map_values([&](const RDPCost& c) {
    if (c.is_inf()) return EDCost::infinity();
    RealExpr shift = RealExpr::div(RealExpr::ln(ln_arg), RealExpr::lit(c.alpha() - Rat(1)));
    return EDCost(RealExpr::add(c.eps(), shift), delta);
  });
}

}  // namespace solo

#endif  // SOLO_ACCOUNTANT_HPP
