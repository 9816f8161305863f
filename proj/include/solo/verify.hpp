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
// Empirical soundness harness. Metric preservation is tested by evaluating
// deterministic sensitive programs on paired inputs and checking the dot
// product bound; differential privacy is tested by brute force over exact
// output distributions; the real-number lemmas behind the logical relation
// run as randomized properties.
#ifndef SOLO_VERIFY_HPP
#define SOLO_VERIFY_HPP

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solo/eval.hpp"
#include "solo/parser.hpp"
#include "solo/pretty.hpp"
#include "solo/typecheck.hpp"

namespace solo {

// Per-source input distances for the metric-preservation check. Distances
// are reals (infinity allowed), unlike the natural-valued sensitivities.
struct DistanceSpec {
  std::map<SourceName, double> distance;
};

struct Violation {
  std::string detail;
  double observed = 0;
  double bound = 0;
};

struct VerifyReport {
  std::string check;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<Violation> violations;
  double max_observed = 0;
  double bound = 0;
  std::string note;

  bool pass() const { return violations.empty(); }
};

namespace verify_detail {

inline std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// A paired input draw together with its realized distance under the source's
// declared metric. Realized distances never exceed the requested one, and the
// bound below uses the realized value, which only tightens the check.
struct PairedValue {
  Value a;
  Value b;
  double dist = 0;
};

inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform01();
}

inline PairedValue pair_inputs(const STypePtr& s, double d, Rng& rng) {
  switch (s->k) {
    case SType::K::kSReal: {
      double base = uniform_in(rng, -4, 4);
      if (s->nmetric == NMetric::kDiff) {
        if (std::isinf(d))
          return {Value::real(base), Value::real(uniform_in(rng, -4, 4)),
                  std::numeric_limits<double>::infinity()};
        double delta = uniform_in(rng, -d, d);
        return {Value::real(base), Value::real(base + delta), std::abs(delta)};
      }
      // Discrete metric: differ with probability min(d, 1).
      if (rng.uniform01() < std::min(d, 1.0)) {
        double other = base + uniform_in(rng, 0.5, 8.0);
        return {Value::real(base), Value::real(other), 1.0};
      }
      return {Value::real(base), Value::real(base), 0.0};
    }
    case SType::K::kSList: {
      std::size_t len = 1 + rng.next_u64() % 5;
      std::vector<Value> xs, ys;
      double total = 0;
      for (std::size_t i = 0; i < len; ++i) {
        // Split the budget so the whole list stays within distance d.
        double share;
        switch (s->cmetric) {
          case CMetric::kLInf: share = d; break;
          case CMetric::kL1: share = d / static_cast<double>(len); break;
          case CMetric::kL2: share = d / std::sqrt(static_cast<double>(len)); break;
          default: share = d;
        }
        PairedValue p = pair_inputs(s->a, share, rng);
        xs.push_back(p.a);
        ys.push_back(p.b);
        switch (s->cmetric) {
          case CMetric::kLInf: total = std::max(total, p.dist); break;
          case CMetric::kL1: total += p.dist; break;
          case CMetric::kL2: total += p.dist * p.dist; break;
        }
      }
      if (s->cmetric == CMetric::kL2) total = std::sqrt(total);
      return {Value::list(std::move(xs)), Value::list(std::move(ys)), total};
    }
    case SType::K::kSProd: {
      double share = s->cmetric == CMetric::kLInf ? d : d / 2;
      PairedValue l = pair_inputs(s->a, share, rng);
      PairedValue r = pair_inputs(s->b, share, rng);
      double total;
      switch (s->cmetric) {
        case CMetric::kLInf: total = std::max(l.dist, r.dist); break;
        case CMetric::kL2: total = std::hypot(l.dist, r.dist); break;
        default: total = l.dist + r.dist;
      }
      return {Value::pair(l.a, r.a), Value::pair(l.b, r.b), total};
    }
    case SType::K::kSSet: {
      // Hamming metric: the neighbor drops up to floor(d) elements.
      std::size_t len = 2 + rng.next_u64() % 5;
      std::vector<Value> xs;
      for (std::size_t i = 0; i < len; ++i)
        xs.push_back(Value::real(uniform_in(rng, 0, 1)));
      auto removable = static_cast<std::size_t>(std::min<double>(d, static_cast<double>(len)));
      std::size_t removed = removable == 0 ? 0 : rng.next_u64() % (removable + 1);
      std::vector<Value> ys(xs.begin(), xs.end() - removed);
      return {Value::list(std::move(xs)), Value::list(std::move(ys)),
              static_cast<double>(removed)};
    }
    default:
      throw VerifyError(Code::kShapeMismatch,
                        "metric check does not support pairing inputs of type " +
                            pretty_stype(s));
  }
}

inline double required_delta_one_direction(const std::map<double, double>& p1,
                                           const std::map<double, double>& p2,
                                           double eps) {
  double excess = 0;
  double scale = std::exp(eps);
  for (const auto& [v, m] : p1) {
    auto it = p2.find(v);
    double q = it == p2.end() ? 0.0 : it->second;
    excess += std::max(0.0, m - scale * q);
  }
  return excess;
}

inline std::map<double, double> to_map(const Dist& d) {
  std::map<double, double> m;
  for (std::size_t i = 0; i < d.support.size(); ++i) m[d.support[i]] += d.mass[i];
  return m;
}

}  // namespace verify_detail

// Largest mass excess max(0, p1 - e^eps p2), summed, over both directions:
// the smallest delta for which the pair satisfies the DP inequality at eps.
inline double required_delta(const Dist& d1, const Dist& d2, double eps) {
  auto p1 = verify_detail::to_map(d1);
  auto p2 = verify_detail::to_map(d2);
  return std::max(verify_detail::required_delta_one_direction(p1, p2, eps),
                  verify_detail::required_delta_one_direction(p2, p1, eps));
}

// Smallest eps at which required_delta drops to tol, by bisection.
// required_delta is nonincreasing in eps, so bisection is exact up to the
// final interval width.
inline double bisect_tightest_eps(const Dist& d1, const Dist& d2, double tol,
                                  double hi = 16.0) {
  double lo = 0.0;
  if (required_delta(d1, d2, lo) <= tol) return 0.0;
  for (int i = 0; i < 60 && hi - lo > 1e-9; ++i) {
    double mid = (lo + hi) / 2;
    if (required_delta(d1, d2, mid) <= tol)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// --- metric preservation --------------------------------------------------------

// Evaluates the (deterministic) program on paired inputs drawn within the
// per-source distances and checks |v - v'| <= sum_o dist(o) * env(o).
inline VerifyReport check_metric_preservation(const TypedProgram& tp,
                                              const DistanceSpec& spec,
                                              std::uint64_t trials, Rng& rng) {
  VerifyReport report;
  report.check = "metric-preservation";
  const TypePtr& mt = tp.main_type;
  if (mt->k == Type::K::kPM)
    throw VerifyError(Code::kNotDeterministic,
                      "main is a private computation; the metric check covers the "
                      "deterministic sensitive fragment");
  if (mt->k != Type::K::kSensitive || mt->stype->k != SType::K::kSReal)
    throw VerifyError(Code::kNotDeterministic,
                      "main must have a sensitive real type, got " + pretty_type(mt));
  const SEnv& env = mt->env->lit.concrete;
  for (const SourceDecl& s : tp.program.sources) {
    auto it = spec.distance.find(s.name);
    double d = it == spec.distance.end() ? 0.0 : it->second;
    if (std::isinf(d) && !env.get(s.name).is_zero())
      throw VerifyError(Code::kUnboundedSpec,
                        "source '" + s.name + "' has infinite distance but sensitivity " +
                            env.get(s.name).str());
  }

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng trial_rng = rng.split(t);
    std::map<std::string, Value> in1, in2;
    double bound = 0;
    std::string detail;
    for (const SourceDecl& s : tp.program.sources) {
      auto it = spec.distance.find(s.name);
      double d = it == spec.distance.end() ? 0.0 : it->second;
      verify_detail::PairedValue pv = verify_detail::pair_inputs(s.stype, d, trial_rng);
      // Dot product of realized distances with the typed sensitivities;
      // 0 * inf stays 0, matching the environment algebra.
      Sens sens = env.get(s.name);
      if (pv.dist != 0) bound += pv.dist * sens.to_double();
      detail += s.name + "=" + value_str(pv.a) + "/" + value_str(pv.b) + " ";
      in1[s.name] = pv.a;
      in2[s.name] = pv.b;
    }
    Rng dummy1(0), dummy2(0);
    Evaluator ev1(&dummy1, 1u << 24);
    Evaluator ev2(&dummy2, 1u << 24);
    double v1 = ev1.eval(bind_defs(bind_sources(tp.program, in1), tp.program, ev1),
                         tp.program.main)
                    .num;
    double v2 = ev2.eval(bind_defs(bind_sources(tp.program, in2), tp.program, ev2),
                         tp.program.main)
                    .num;
    double got = std::abs(v1 - v2);
    // Binary rounding in double sums can overshoot an exact-arithmetic bound;
    // the slack is reported, never silently absorbed.
    double slack = 1e-9 * (1.0 + bound);
    report.max_observed = std::max(report.max_observed, got - bound);
    if (!(got <= bound + slack)) {
      report.violations.push_back({detail + "gave |" + verify_detail::fmt(v1) + " - " +
                                       verify_detail::fmt(v2) + "|",
                                   got, bound});
    }
    ++report.trials;
  }
  return report;
}

// --- differential privacy by brute force ----------------------------------------

struct DpClaim {
  double eps = 0;
  double delta = 0;
};

// The claimed cost of distinguishing inputs1 from inputs2: the sum of the
// budget entries of every source whose two inputs differ.
inline DpClaim claim_from_budget(const TypedProgram& tp,
                                 const std::map<std::string, Value>& in1,
                                 const std::map<std::string, Value>& in2) {
  if (tp.main_type->k != Type::K::kPM)
    throw VerifyError(Code::kNotPrivate, "main is not a private computation");
  const PrivAny& p = tp.main_type->penv->lit;
  DpClaim claim;
  for (const SourceDecl& s : tp.program.sources) {
    const Value& a = in1.at(s.name);
    const Value& b = in2.at(s.name);
    if (value_cmp(a, b) == 0) continue;
    switch (p.variant) {
      case Variant::kEps: claim.eps += p.eps.get(s.name).to_double(); break;
      case Variant::kED: {
        EDCost c = p.ed.get(s.name);
        if (c.is_inf()) {
          claim.eps = std::numeric_limits<double>::infinity();
        } else if (!c.is_zero()) {
          claim.eps += c.eps().eval();
          claim.delta += c.delta().eval();
        }
        break;
      }
      case Variant::kRDP:
        throw VerifyError(Code::kNotPrivate,
                          "convert Renyi budgets with conv_rdp_to_ed before the DP check");
    }
  }
  return claim;
}

inline VerifyReport check_dp(const TypedProgram& tp,
                             const std::map<std::string, Value>& inputs1,
                             const std::map<std::string, Value>& inputs2, const Grid& grid,
                             double tol = 1e-3,
                             std::optional<DpClaim> claim_override = std::nullopt) {
  VerifyReport report;
  report.check = "dp";
  DpClaim claim = claim_override ? *claim_override : claim_from_budget(tp, inputs1, inputs2);
  Dist d1 = eval_exact_output(tp, inputs1, grid);
  Dist d2 = eval_exact_output(tp, inputs2, grid);
  double need = required_delta(d1, d2, claim.eps);
  report.trials = 1;
  report.bound = claim.delta + tol;
  report.max_observed = need;
  report.note = "claimed eps = " + verify_detail::fmt(claim.eps) +
                ", delta = " + verify_detail::fmt(claim.delta) +
                "; tightest passing eps = " +
                verify_detail::fmt(bisect_tightest_eps(d1, d2, tol));
  if (!(need <= report.bound))
    report.violations.push_back(
        {"required delta exceeds the claim at eps = " + verify_detail::fmt(claim.eps), need,
         report.bound});
  return report;
}

// --- the real-number lemmas behind the logical relation --------------------------

// Randomized checks of the plus/times/triangle compatibility lemmas plus the
// monoid laws the accountant relies on. Draws leave a relative margin so
// binary rounding cannot flip an exact-arithmetic inequality.
inline VerifyReport check_lemmas(std::uint64_t trials, Rng& rng) {
  using verify_detail::fmt;
  using verify_detail::uniform_in;
  VerifyReport report;
  report.check = "lemmas";
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng r = rng.split(t);
    double bound = uniform_in(r, 1e-3, 10);
    double r1 = uniform_in(r, -100, 100);
    double r2 = r1 + uniform_in(r, -bound, bound) * (1 - 1e-6);
    double r3 = uniform_in(r, -100, 100);

    // Plus respects: |(r1 + r3) - (r2 + r3)| <= bound.
    if (!(std::abs((r1 + r3) - (r2 + r3)) <= bound))
      report.violations.push_back({"plus-respects r1=" + fmt(r1) + " r2=" + fmt(r2) +
                                       " r3=" + fmt(r3),
                                   std::abs((r1 + r3) - (r2 + r3)), bound});

    // Times respects: |k r1 - k r2| <= k bound for k >= 0 (k = 0 degenerates).
    double k = t % 97 == 0 ? 0.0 : uniform_in(r, 0, 50);
    if (!(std::abs(k * r1 - k * r2) <= k * bound + 1e-12))
      report.violations.push_back(
          {"times-respects k=" + fmt(k), std::abs(k * r1 - k * r2), k * bound});

    // Triangle: r1 ~ r2 at bound and r2 ~ r4 at bound2 imply r1 ~ r4 at the sum.
    double bound2 = uniform_in(r, 1e-3, 10);
    double r4 = r2 + uniform_in(r, -bound2, bound2) * (1 - 1e-6);
    if (!(std::abs(r1 - r4) <= bound + bound2))
      report.violations.push_back({"triangle", std::abs(r1 - r4), bound + bound2});
    ++report.trials;
  }

  // Monoid laws for the environment algebra, at the same trial count.
  static const char* names[] = {"a", "b", "c"};
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng r = rng.split(trials + t);
    auto random_env = [&r]() {
      SEnv e;
      std::size_t n = r.next_u64() % 3;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t raw = r.next_u64() % 7;
        e.set(names[r.next_u64() % 3], raw == 6 ? Sens::infinity() : Sens(raw));
      }
      return e;
    };
    SEnv a = random_env(), b = random_env(), c = random_env();
    bool ok = senv_plus(a, b) == senv_plus(b, a) &&
              senv_plus(senv_plus(a, b), c) == senv_plus(a, senv_plus(b, c)) &&
              senv_plus(a, SEnv()) == a;
    auto pa = senv_truncate(EpsCost(Rat(1, 2)), a);
    auto pb = senv_truncate(EpsCost(Rat(3, 2)), b);
    ok = ok && eps_seq_comp(pa, pb) == eps_seq_comp(pb, pa) &&
         eps_seq_comp(pa, PEnv<EpsCost>()) == pa;
    if (!ok) report.violations.push_back({"environment monoid laws", 1, 0});
    ++report.trials;
  }
  return report;
}

// --- type-directed program generator ----------------------------------------------

// Generates programs in the deterministic sensitive fragment (sensitive
// arithmetic, scaling, pairs, lists, lambda and application) that typecheck
// by construction. Case alternatives reuse one generated expression so both
// arms carry identical environments.
class ProgramGen {
 public:
  ProgramGen(std::uint64_t seed, int size) : rng_(seed), budget_(size) {}

  Program gen() {
    Program p;
    std::size_t nsrc = 1 + rng_.next_u64() % 3;
    for (std::size_t i = 0; i < nsrc; ++i) {
      std::string name = "o" + std::to_string(i);
      bool list = rng_.next_u64() % 4 == 0;
      NMetric m = NMetric::kDiff;
      if (list) {
        CMetric cm = rng_.next_u64() % 2 == 0 ? CMetric::kL1 : CMetric::kLInf;
        p.sources.push_back({name, SType::slist(cm, SType::sreal(m)), {}});
        lists_.push_back({name, cm});
      } else {
        p.sources.push_back({name, SType::sreal(m), {}});
        reals_.emplace_back(name);
      }
    }
    if (reals_.empty()) {
      p.sources.push_back({"oz", SType::sreal(NMetric::kDiff), {}});
      reals_.emplace_back("oz");
    }
    p.main = sreal_expr(3);
    return p;
  }

 private:
  ExprBuilder node(Expr::K k) {
    auto e = std::make_shared<Expr>();
    e->k = k;
    e->id = next_id_++;
    return e;
  }

  ExprPtr var(const std::string& name) {
    auto e = node(Expr::K::kVar);
    e->name = name;
    return e;
  }

  ExprPtr sing(std::uint64_t k) {
    auto e = node(Expr::K::kSing);
    e->rat = Rat(k);
    return e;
  }

  // A sensitive real expression; every leaf is a source or a bound variable.
  ExprPtr sreal_expr(int depth) {
    --budget_;
    if (depth == 0 || budget_ <= 0) return leaf();
    switch (rng_.next_u64() % 8) {
      case 0: return leaf();
      case 1: {  // splus
        auto e = node(Expr::K::kBinOp);
        e->op = BinK::kPlus;
        e->kids = {sreal_expr(depth - 1), sreal_expr(depth - 1)};
        return e;
      }
      case 2: {  // stimes
        auto e = node(Expr::K::kBinOp);
        e->op = BinK::kLTimes;
        e->kids = {sing(rng_.next_u64() % 5), sreal_expr(depth - 1)};
        return e;
      }
      case 3: {  // spair / sproj
        auto pr = node(Expr::K::kSPair);
        pr->cmetric = rng_.next_u64() % 2 == 0 ? CMetric::kL1 : CMetric::kLInf;
        pr->kids = {sreal_expr(depth - 1), sreal_expr(depth - 1)};
        auto e = node(Expr::K::kSProj);
        e->proj = 1 + static_cast<int>(rng_.next_u64() % 2);
        e->kids = {pr};
        return e;
      }
      case 4: {  // scase with identical alternatives
        if (lists_.empty()) return leaf();
        const auto& [lname, lm] = lists_[rng_.next_u64() % lists_.size()];
        auto e = node(Expr::K::kSCase);
        e->sensitive_case = true;
        e->name = fresh("h");
        e->name2 = fresh("t");
        ExprPtr arm = sreal_expr(depth - 1);
        e->kids = {var(lname), arm, arm};
        return e;
      }
      case 5: {  // let
        auto e = node(Expr::K::kLet);
        e->name = fresh("v");
        e->kids = {sreal_expr(depth - 1), nullptr};
        bound_.push_back(e->name);
        e->kids[1] = sreal_expr(depth - 1);
        bound_.pop_back();
        return e;
      }
      case 6: {  // plain pairs of sensitive values, then projection
        auto pr = node(Expr::K::kPair);
        pr->kids = {sreal_expr(depth - 1), sreal_expr(depth - 1)};
        auto e = node(Expr::K::kProj);
        e->proj = 1 + static_cast<int>(rng_.next_u64() % 2);
        e->kids = {pr};
        return e;
      }
      default: {  // lambda / application: requires a concrete annotation,
                  // so the argument is always a bare source reference.
        const std::string& src = reals_[rng_.next_u64() % reals_.size()];
        auto lam = node(Expr::K::kLam);
        lam->name2 = fresh("x");
        lam->type = Type::sensitive_lit(SType::sreal(NMetric::kDiff),
                                        SymEnv::of(SEnv::singleton(src, Sens(1))));
        bound_.push_back(lam->name2);
        lam->kids = {sreal_expr(depth - 1)};
        bound_.pop_back();
        auto e = node(Expr::K::kApp);
        e->kids = {lam, var(src)};
        return e;
      }
    }
  }

  ExprPtr leaf() {
    if (!bound_.empty() && rng_.next_u64() % 2 == 0)
      return var(bound_[rng_.next_u64() % bound_.size()]);
    return var(reals_[rng_.next_u64() % reals_.size()]);
  }

  std::string fresh(const char* stem) {
    return std::string(stem) + std::to_string(next_fresh_++);
  }

  Rng rng_;
  int budget_;
  int next_id_ = 0;
  int next_fresh_ = 0;
  std::vector<std::string> reals_;
  std::vector<std::pair<std::string, CMetric>> lists_;
  std::vector<std::string> bound_;
};

inline Program gen_random_program(std::uint64_t seed, int size) {
  return ProgramGen(seed, size).gen();
}

}  // namespace solo

#endif  // SOLO_VERIFY_HPP
