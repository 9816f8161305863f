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
// Step-indexed big-step interpreter. Two modes share one code path: in
// sampling mode the privacy mechanisms draw real noise from a seeded
// generator; in exact mode they build finite distributions and bind forms
// the exact finite mixture. Steps count function applications only, and the
// step budget doubles as a nontermination guard.
#ifndef SOLO_EVAL_HPP
#define SOLO_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "solo/ast.hpp"
#include "solo/mechanisms.hpp"
#include "solo/typecheck.hpp"

namespace solo {

struct Value;
struct ValueDist;

struct VEnvNode;
using ValueEnv = std::shared_ptr<const VEnvNode>;

struct Value {
  enum class K { kBool, kReal, kPair, kList, kClosure, kDist };
  K k = K::kReal;
  bool bv = false;
  double num = 0;
  std::shared_ptr<const std::vector<Value>> items;  // kPair (size 2), kList
  ExprPtr lam;                                      // kClosure
  ValueEnv captured;                                // kClosure
  std::shared_ptr<const ValueDist> dist;            // kDist

  static Value boolean(bool b) {
    Value v;
    v.k = K::kBool;
    v.bv = b;
    return v;
  }
  static Value real(double r) {
    Value v;
    v.k = K::kReal;
    v.num = r;
    return v;
  }
  static Value pair(Value a, Value b) {
    Value v;
    v.k = K::kPair;
    v.items = std::make_shared<std::vector<Value>>(std::vector<Value>{std::move(a), std::move(b)});
    return v;
  }
  static Value list(std::vector<Value> xs) {
    Value v;
    v.k = K::kList;
    v.items = std::make_shared<std::vector<Value>>(std::move(xs));
    return v;
  }
  static Value closure(ExprPtr lam, ValueEnv env) {
    Value v;
    v.k = K::kClosure;
    v.lam = std::move(lam);
    v.captured = std::move(env);
    return v;
  }
  static Value of_dist(ValueDist d);
};

struct VEnvNode {
  std::string name;
  Value value;
  ValueEnv next;
};

inline ValueEnv venv_bind(ValueEnv env, std::string name, Value v) {
  return std::make_shared<VEnvNode>(VEnvNode{std::move(name), std::move(v), std::move(env)});
}
inline const Value* venv_lookup(const ValueEnv& env, const std::string& name) {
  for (const VEnvNode* n = env.get(); n; n = n->next.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

// Total order over first-order values, used to keep distribution supports
// sorted and mergeable.
inline int value_cmp(const Value& a, const Value& b) {
  auto rank = [](const Value& v) { return static_cast<int>(v.k); };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  switch (a.k) {
    case Value::K::kBool: return a.bv == b.bv ? 0 : (a.bv < b.bv ? -1 : 1);
    case Value::K::kReal: return a.num == b.num ? 0 : (a.num < b.num ? -1 : 1);
    case Value::K::kPair:
    case Value::K::kList: {
      std::size_t n = std::min(a.items->size(), b.items->size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = value_cmp((*a.items)[i], (*b.items)[i]);
        if (c != 0) return c;
      }
      if (a.items->size() == b.items->size()) return 0;
      return a.items->size() < b.items->size() ? -1 : 1;
    }
    default:
      throw EvalError(Code::kStuckTerm, "closures and distributions are not comparable");
  }
}

// A finite distribution over first-order values: sorted support, masses
// summing to 1 within 1e-9.
struct ValueDist {
  std::vector<std::pair<Value, double>> entries;

  static ValueDist point(Value v) {
    ValueDist d;
    d.entries.emplace_back(std::move(v), 1.0);
    return d;
  }

  void add(const Value& v, double mass) {
    if (mass <= 0) return;
    auto it = std::lower_bound(
        entries.begin(), entries.end(), v,
        [](const auto& e, const Value& x) { return value_cmp(e.first, x) < 0; });
    if (it != entries.end() && value_cmp(it->first, v) == 0)
      it->second += mass;
    else
      entries.insert(it, {v, mass});
  }

  double total_mass() const {
    double t = 0;
    for (const auto& [v, m] : entries) t += m;
    return t;
  }
};

inline Value Value::of_dist(ValueDist d) {
  Value v;
  v.k = K::kDist;
  v.dist = std::make_shared<ValueDist>(std::move(d));
  return v;
}

struct StepBudget {
  std::uint64_t fuel = 0;
  std::uint64_t consumed = 0;
};

struct TraceEntry {
  std::string mech;
  double center = 0;
  double scale = 0;
  double sample = 0;

  std::string json() const {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "{\"mech\":\"%s\",\"center\":%.17g,\"scale\":%.17g,\"sample\":%.17g}",
                  mech.c_str(), center, scale, sample);
    return buf;
  }
};

class Evaluator {
 public:
  enum class Mode { kSampling, kExact };

  // Sampling mode.
  Evaluator(Rng* rng, std::uint64_t fuel, std::vector<TraceEntry>* trace = nullptr)
      : mode_(Mode::kSampling), rng_(rng), trace_(trace) {
    budget_.fuel = fuel;
  }
  // Exact mode.
  Evaluator(const Grid& grid, std::uint64_t fuel)
      : mode_(Mode::kExact), grid_(grid) {
    grid_.bins();  // validate
    budget_.fuel = fuel;
  }

  std::uint64_t steps() const { return budget_.consumed; }
  void set_mixture_caps(std::size_t components, std::size_t support) {
    mixture_components_cap_ = components;
    support_cap_ = support;
  }

  Value eval(const ValueEnv& env, const ExprPtr& e) {
    switch (e->k) {
      case Expr::K::kVar: {
        if (const Value* v = venv_lookup(env, e->name)) return *v;
        throw EvalError(Code::kStuckTerm, "unbound variable '" + e->name + "' at runtime",
                        e->pos);
      }
      case Expr::K::kBoolLit: return Value::boolean(e->bval);
      case Expr::K::kRealLit: return Value::real(e->rat.to_double());
      case Expr::K::kSing: return Value::real(e->rat.to_double());

      case Expr::K::kBinOp: {
        Value l = eval(env, e->kids[0]);
        Value r = eval(env, e->kids[1]);
        double a = as_real(l), b = as_real(r);
        return Value::real(e->op == BinK::kPlus ? a + b : a * b);
      }

      case Expr::K::kIf: {
        Value c = eval(env, e->kids[0]);
        if (c.k != Value::K::kBool)
          throw EvalError(Code::kStuckTerm, "if-condition did not evaluate to a bool",
                          e->pos);
        return eval(env, c.bv ? e->kids[1] : e->kids[2]);
      }

      case Expr::K::kPair:
      case Expr::K::kSPair:
        return Value::pair(eval(env, e->kids[0]), eval(env, e->kids[1]));
      case Expr::K::kProj:
      case Expr::K::kSProj: {
        Value v = eval(env, e->kids[0]);
        if (v.k != Value::K::kPair)
          throw EvalError(Code::kStuckTerm, "projection from a non-pair", e->pos);
        return (*v.items)[e->proj == 1 ? 0 : 1];
      }

      case Expr::K::kNil:
      case Expr::K::kSNil: return Value::list({});
      case Expr::K::kCons:
      case Expr::K::kSCons: {
        Value h = eval(env, e->kids[0]);
        Value t = eval(env, e->kids[1]);
        if (t.k != Value::K::kList)
          throw EvalError(Code::kStuckTerm, "cons onto a non-list", e->pos);
        std::vector<Value> xs;
        xs.reserve(t.items->size() + 1);
        xs.push_back(std::move(h));
        xs.insert(xs.end(), t.items->begin(), t.items->end());
        return Value::list(std::move(xs));
      }

      case Expr::K::kCase:
      case Expr::K::kSCase: {
        Value s = eval(env, e->kids[0]);
        if (s.k != Value::K::kList)
          throw EvalError(Code::kStuckTerm, "case on a non-list", e->pos);
        if (s.items->empty()) return eval(env, e->kids[1]);
        Value head = (*s.items)[0];
        Value tail = Value::list(std::vector<Value>(s.items->begin() + 1, s.items->end()));
        ValueEnv inner = venv_bind(venv_bind(env, e->name, std::move(head)), e->name2,
                                   std::move(tail));
        return eval(inner, e->kids[2]);
      }

      case Expr::K::kLam: return Value::closure(e, env);

      case Expr::K::kApp: {
        Value f = eval(env, e->kids[0]);
        Value a = eval(env, e->kids[1]);
        return apply(f, a, e->pos);
      }

      case Expr::K::kLet: {
        // Sugar for (fun(x : t) => e2)(e1): one application step.
        Value v = eval(env, e->kids[0]);
        spend(e->pos);
        return eval(venv_bind(env, e->name, std::move(v)), e->kids[1]);
      }

      case Expr::K::kReveal:
      case Expr::K::kReturn: {
        Value v = eval(env, e->kids[0]);
        if (mode_ == Mode::kExact) return Value::of_dist(ValueDist::point(std::move(v)));
        return v;
      }

      case Expr::K::kLaplace: {
        double s = as_real(eval(env, e->kids[0]));
        double eps = as_real(eval(env, e->kids[1]));
        double center = as_real(eval(env, e->kids[2]));
        return laplace_value(center, s / eps, e->pos);
      }

      case Expr::K::kBind: {
        Value m = eval(env, e->kids[0]);
        if (mode_ == Mode::kSampling)
          return eval(venv_bind(env, e->name, std::move(m)), e->kids[1]);
        return mix(m, e->pos, [&](const Value& v) {
          return eval(venv_bind(env, e->name, v), e->kids[1]);
        });
      }

      case Expr::K::kPrimCall: return prim(env, e);
    }
    throw EvalError(Code::kInternal, "unreachable expression kind", e->pos);
  }

  Value apply(const Value& f, const Value& a, SourcePos pos) {
    if (f.k != Value::K::kClosure)
      throw EvalError(Code::kStuckTerm, "application of a non-function", pos);
    spend(pos);
    ValueEnv env = f.captured;
    if (!f.lam->name.empty()) env = venv_bind(env, f.lam->name, f);
    env = venv_bind(env, f.lam->name2, a);
    return eval(env, f.lam->kids[0]);
  }

 private:
  void spend(SourcePos pos) {
    if (budget_.consumed >= budget_.fuel)
      throw EvalError(Code::kOutOfFuel,
                      "step budget of " + std::to_string(budget_.fuel) + " exhausted", pos);
    ++budget_.consumed;
  }

  static double as_real(const Value& v) {
    if (v.k != Value::K::kReal)
      throw EvalError(Code::kStuckTerm, "expected a numeric value");
    return v.num;
  }
  static const std::vector<Value>& as_list(const Value& v) {
    if (v.k != Value::K::kList)
      throw EvalError(Code::kStuckTerm, "expected a list value");
    return *v.items;
  }

  Value laplace_value(double center, double scale, SourcePos pos) {
    if (mode_ == Mode::kSampling) {
      double x = laplace_sample(center, scale, *rng_);
      if (trace_) trace_->push_back({"laplace", center, scale, x});
      return Value::real(x);
    }
    if (scale == 0) return Value::of_dist(ValueDist::point(Value::real(center)));
    Dist d;
    try {
      d = laplace_pmf(center, scale, grid_);
    } catch (const SoloError& err) {
      throw EvalError(err.code(), err.what(), pos);
    }
    return Value::of_dist(from_pmf(d));
  }

  Value gauss_value(double center, double sigma, SourcePos pos) {
    if (mode_ == Mode::kSampling) {
      double x = gauss_sample(center, sigma, *rng_);
      if (trace_) trace_->push_back({"gauss", center, sigma, x});
      return Value::real(x);
    }
    if (sigma == 0) return Value::of_dist(ValueDist::point(Value::real(center)));
    Dist d;
    try {
      d = gauss_pmf(center, sigma, grid_);
    } catch (const SoloError& err) {
      throw EvalError(err.code(), err.what(), pos);
    }
    return Value::of_dist(from_pmf(d));
  }

  static ValueDist from_pmf(const Dist& d) {
    ValueDist out;
    out.entries.reserve(d.support.size());
    for (std::size_t i = 0; i < d.support.size(); ++i)
      if (d.mass[i] > 0) out.entries.emplace_back(Value::real(d.support[i]), d.mass[i]);
    return out;
  }

  // The exact-mode mixture of e-bind: runs the continuation at every support
  // value and sums the weighted result distributions.
  template <typename F>
  Value mix(const Value& m, SourcePos pos, F&& cont) {
    if (m.k != Value::K::kDist)
      throw EvalError(Code::kStuckTerm, "bind of a non-distribution in exact mode", pos);
    const ValueDist& d = *m.dist;
    if (d.entries.size() > mixture_components_cap_)
      throw EvalError(Code::kUnsupportedExact,
                      "bind continuation branches over " + std::to_string(d.entries.size()) +
                          " noisy values, above the mixture cap of " +
                          std::to_string(mixture_components_cap_),
                      pos);
    ValueDist out;
    std::uint64_t max_branch_steps = 0;
    std::uint64_t before = budget_.consumed;
    for (const auto& [v, mass] : d.entries) {
      budget_.consumed = before;
      Value r = cont(v);
      max_branch_steps = std::max(max_branch_steps, budget_.consumed - before);
      if (r.k != Value::K::kDist)
        throw EvalError(Code::kStuckTerm, "bind continuation did not produce a distribution",
                        pos);
      for (const auto& [rv, rmass] : r.dist->entries) out.add(rv, mass * rmass);
      if (out.entries.size() > support_cap_)
        throw EvalError(Code::kUnsupportedExact,
                        "exact distribution support exceeds " + std::to_string(support_cap_),
                        pos);
    }
    // e-bind's step index joins over all continuations.
    budget_.consumed = before + max_branch_steps;
    return Value::of_dist(std::move(out));
  }

  // --- trusted primitives at runtime -----------------------------------------

  Value prim(const ValueEnv& env, const ExprPtr& e);

  Mode mode_;
  Rng* rng_ = nullptr;
  Grid grid_{0, 1, 1};
  StepBudget budget_;
  std::vector<TraceEntry>* trace_ = nullptr;
  std::size_t mixture_components_cap_ = 8192;
  std::size_t support_cap_ = 1 << 20;
};

namespace eval_detail {

inline double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Counts dictionary mass with keys in [lo, hi).
inline double dict_range_count(const std::vector<Value>& dict, double lo, double hi) {
  double total = 0;
  for (const Value& kv : dict) {
    double key = (*kv.items)[0].num;
    if (key >= lo && key < hi) total += (*kv.items)[1].num;
  }
  return total;
}

}  // namespace eval_detail

inline Value Evaluator::prim(const ValueEnv& env, const ExprPtr& e) {
  const std::string& n = e->name;
  std::vector<Value> statics;
  statics.reserve(e->statics.size());
  for (const ExprPtr& s : e->statics) statics.push_back(eval(env, s));
  std::vector<Value> args;
  args.reserve(e->kids.size());
  for (const ExprPtr& a : e->kids) args.push_back(eval(env, a));
  using eval_detail::clamp01;
  using eval_detail::dict_range_count;

  if (n == "clip") {
    std::vector<Value> out;
    for (const Value& v : as_list(args[0])) out.push_back(Value::real(clamp01(v.num)));
    return Value::list(std::move(out));
  }
  if (n == "sum") {
    double t = 0;
    for (const Value& v : as_list(args[0])) t += v.num;
    return Value::real(t);
  }
  if (n == "map" || n == "lmap") {
    std::vector<Value> out;
    for (const Value& v : as_list(args[1])) out.push_back(apply(args[0], v, e->pos));
    return Value::list(std::move(out));
  }
  if (n == "zip") {
    const auto& a = as_list(args[0]);
    const auto& b = as_list(args[1]);
    if (a.size() != b.size())
      throw EvalError(Code::kShapeMismatch, "zip of lists with different lengths", e->pos);
    std::vector<Value> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(Value::pair(a[i], b[i]));
    return Value::list(std::move(out));
  }
  if (n == "nth") {
    const auto& xs = as_list(args[0]);
    double di = as_real(args[1]);
    auto i = static_cast<std::size_t>(di);
    if (di < 0 || i >= xs.size())
      throw EvalError(Code::kShapeMismatch, "nth index out of range", e->pos);
    return xs[i];
  }
  if (n == "divd") {
    double d = as_real(args[1]);
    if (d == 0) throw EvalError(Code::kDivideByZero, "division by zero", e->pos);
    return Value::real(as_real(args[0]) / d);
  }
  if (n == "lt") return Value::boolean(as_real(args[0]) < as_real(args[1]));

  if (n == "listlaplace") {
    double scale = as_real(statics[0]) / as_real(statics[1]);
    if (mode_ == Mode::kExact)
      throw EvalError(Code::kUnsupportedExact,
                      "vector-valued mechanisms are not supported in exact mode", e->pos);
    std::vector<Value> out;
    for (const Value& v : as_list(args[0]))
      out.push_back(laplace_value(v.num, scale, e->pos));
    return Value::list(std::move(out));
  }
  if (n == "mlaplace") {
    double scale = as_real(statics[0]) / as_real(statics[1]);
    if (mode_ == Mode::kExact)
      throw EvalError(Code::kUnsupportedExact,
                      "vector-valued mechanisms are not supported in exact mode", e->pos);
    std::vector<Value> rows;
    for (const Value& row : as_list(args[0])) {
      std::vector<Value> out;
      for (const Value& v : as_list(row)) out.push_back(laplace_value(v.num, scale, e->pos));
      rows.push_back(Value::list(std::move(out)));
    }
    return Value::list(std::move(rows));
  }
  if (n == "gauss" || n == "listgauss") {
    double sigma =
        gauss_sigma(as_real(statics[0]), as_real(statics[1]), as_real(statics[2]));
    if (n == "gauss") return gauss_value(as_real(args[0]), sigma, e->pos);
    if (mode_ == Mode::kExact)
      throw EvalError(Code::kUnsupportedExact,
                      "vector-valued mechanisms are not supported in exact mode", e->pos);
    std::vector<Value> out;
    for (const Value& v : as_list(args[0])) out.push_back(gauss_value(v.num, sigma, e->pos));
    return Value::list(std::move(out));
  }

  if (n == "mclip") {
    // Clips every row to L2 norm at most 1.
    std::vector<Value> rows;
    for (const Value& row : as_list(args[0])) {
      double norm2 = 0;
      for (const Value& v : as_list(row)) norm2 += v.num * v.num;
      double f = norm2 > 1.0 ? 1.0 / std::sqrt(norm2) : 1.0;
      std::vector<Value> out;
      for (const Value& v : as_list(row)) out.push_back(Value::real(v.num * f));
      rows.push_back(Value::list(std::move(out)));
    }
    return Value::list(std::move(rows));
  }
  if (n == "xgradient") {
    // Average of per-example squared-loss gradients, each clipped to L1 norm
    // at most 1, so one example moves the average by at most 2/m <= 1.
    const auto& theta_rows = as_list(args[0]);
    const auto& theta = as_list(theta_rows.at(0));
    const auto& xs = as_list(args[1]);
    const auto& ys = as_list(args[2]);
    if (xs.size() != ys.size() || xs.empty())
      throw EvalError(Code::kShapeMismatch, "xgradient needs matching nonempty matrices",
                      e->pos);
    std::size_t ncols = as_list(xs[0]).size();
    std::vector<double> g(ncols, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& row = as_list(xs[i]);
      double pred = 0;
      for (std::size_t j = 0; j < ncols; ++j) pred += theta.at(j).num * row[j].num;
      double resid = pred - as_list(ys[i])[0].num;
      std::vector<double> gi(ncols);
      double norm1 = 0;
      for (std::size_t j = 0; j < ncols; ++j) {
        gi[j] = resid * row[j].num;
        norm1 += std::abs(gi[j]);
      }
      double f = norm1 > 1.0 ? 1.0 / norm1 : 1.0;
      for (std::size_t j = 0; j < ncols; ++j) g[j] += gi[j] * f;
    }
    std::vector<Value> out;
    for (double v : g) out.push_back(Value::real(v / static_cast<double>(xs.size())));
    return Value::list({Value::list(std::move(out))});
  }
  if (n == "msub") {
    const auto& a = as_list(args[0]);
    const auto& b = as_list(args[1]);
    if (a.size() != b.size())
      throw EvalError(Code::kShapeMismatch, "msub of mismatched matrices", e->pos);
    std::vector<Value> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& ra = as_list(a[i]);
      const auto& rb = as_list(b[i]);
      if (ra.size() != rb.size())
        throw EvalError(Code::kShapeMismatch, "msub of mismatched matrices", e->pos);
      std::vector<Value> out;
      for (std::size_t j = 0; j < ra.size(); ++j)
        out.push_back(Value::real(ra[j].num - rb[j].num));
      rows.push_back(Value::list(std::move(out)));
    }
    return Value::list(std::move(rows));
  }
  if (n == "mzeros") {
    auto r = static_cast<std::size_t>(as_real(statics[0]));
    auto c = static_cast<std::size_t>(as_real(statics[1]));
    std::vector<Value> rows;
    for (std::size_t i = 0; i < r; ++i)
      rows.push_back(Value::list(std::vector<Value>(c, Value::real(0.0))));
    return Value::list(std::move(rows));
  }

  if (n == "mloop" || n == "mloopi" || n == "advloop") {
    auto k = static_cast<std::uint64_t>(as_real(statics[0]));
    const Value& init = args[0];
    const Value& f = args[1];
    if (mode_ == Mode::kExact) {
      Value acc = Value::of_dist(ValueDist::point(init));
      for (std::uint64_t i = 0; i < k; ++i) {
        acc = mix(acc, e->pos, [&](const Value& v) {
          Value step = n == "mloopi"
                           ? apply(apply(f, Value::real(static_cast<double>(i)), e->pos), v,
                                   e->pos)
                           : apply(f, v, e->pos);
          return step;
        });
      }
      return acc;
    }
    Value acc = init;
    for (std::uint64_t i = 0; i < k; ++i) {
      acc = n == "mloopi"
                ? apply(apply(f, Value::real(static_cast<double>(i)), e->pos), acc, e->pos)
                : apply(f, acc, e->pos);
    }
    return acc;
  }

  if (n == "expmech" || n == "expnloop") {
    double eps;
    std::uint64_t k = 1;
    if (n == "expmech") {
      eps = as_real(statics[0]);
    } else {
      k = static_cast<std::uint64_t>(as_real(statics[0]));
      eps = as_real(statics[1]);
    }
    const auto& queries = as_list(args[0]);
    const auto& db = as_list(args[1]);
    std::vector<Value> syn(as_list(args[2]));
    auto scores_of = [&](const std::vector<Value>& current_syn) {
      std::vector<double> scores;
      for (const Value& q : queries) {
        double lo = (*q.items)[0].num, hi = (*q.items)[1].num;
        scores.push_back(std::abs(dict_range_count(db, lo, hi) -
                                  dict_range_count(current_syn, lo, hi)));
      }
      return scores;
    };
    if (n == "expmech") {
      std::vector<double> scores = scores_of(syn);
      if (mode_ == Mode::kExact) {
        std::vector<double> probs = exp_mech_probs(scores, eps, 1.0);
        ValueDist d;
        for (std::size_t i = 0; i < probs.size(); ++i)
          d.add(Value::real(static_cast<double>(i)), probs[i]);
        return Value::of_dist(std::move(d));
      }
      std::size_t i = exp_mech(scores, eps, 1.0, *rng_);
      if (trace_) trace_->push_back({"expmech", 0, eps, static_cast<double>(i)});
      return Value::real(static_cast<double>(i));
    }
    if (mode_ == Mode::kExact)
      throw EvalError(Code::kUnsupportedExact,
                      "expnloop is not supported in exact mode", e->pos);
    double syn_total = 0;
    for (const Value& kv : syn) syn_total += (*kv.items)[1].num;
    for (std::uint64_t it = 0; it < k; ++it) {
      std::vector<double> scores = scores_of(syn);
      std::size_t qi = exp_mech(scores, eps, 1.0, *rng_);
      if (trace_) trace_->push_back({"expmech", 0, eps, static_cast<double>(qi)});
      double lo = (*queries[qi].items)[0].num, hi = (*queries[qi].items)[1].num;
      double measured = laplace_sample(dict_range_count(db, lo, hi), 1.0 / eps, *rng_);
      if (trace_)
        trace_->push_back({"laplace", dict_range_count(db, lo, hi), 1.0 / eps, measured});
      // Multiplicative-weights update toward the measured answer.
      double syn_answer = dict_range_count(syn, lo, hi);
      double denom = 2.0 * std::max(1.0, syn_total);
      std::vector<Value> updated;
      double new_total = 0;
      for (const Value& kv : syn) {
        double key = (*kv.items)[0].num;
        double w = (*kv.items)[1].num;
        double inq = key >= lo && key < hi ? 1.0 : 0.0;
        double next = w * std::exp(inq * (measured - syn_answer) / denom);
        new_total += next;
        updated.push_back(Value::pair(Value::real(key), Value::real(next)));
      }
      // Renormalize to the original total mass.
      if (new_total > 0) {
        for (Value& kv : updated) {
          double key = (*kv.items)[0].num;
          double w = (*kv.items)[1].num * (syn_total / new_total);
          kv = Value::pair(Value::real(key), Value::real(w));
        }
      }
      syn = std::move(updated);
    }
    return Value::list(std::move(syn));
  }

  if (n == "conv_eps_to_ed" || n == "conv_eps_to_rdp" || n == "conv_rdp_to_ed")
    return args[0];

  if (n == "assign") {
    const auto& centroids = as_list(args[0]);
    std::vector<Value> out;
    for (const Value& pt : as_list(args[1])) {
      double px = (*pt.items)[0].num, py = (*pt.items)[1].num;
      std::size_t best = 0;
      double bestd = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < centroids.size(); ++i) {
        double cx = (*centroids[i].items)[0].num, cy = (*centroids[i].items)[1].num;
        double d = (px - cx) * (px - cx) + (py - cy) * (py - cy);
        if (d < bestd) {
          bestd = d;
          best = i;
        }
      }
      out.push_back(Value::pair(pt, Value::real(static_cast<double>(best))));
    }
    return Value::list(std::move(out));
  }
  if (n == "ppartition") {
    const auto& tagged = as_list(args[0]);
    std::size_t nclusters = 0;
    for (const Value& tp : tagged)
      nclusters = std::max(nclusters, static_cast<std::size_t>((*tp.items)[1].num) + 1);
    std::vector<std::vector<Value>> groups(nclusters);
    for (const Value& tp : tagged)
      groups[static_cast<std::size_t>((*tp.items)[1].num)].push_back((*tp.items)[0]);
    std::vector<Value> out;
    for (auto& g : groups) out.push_back(Value::list(std::move(g)));
    return Value::list(std::move(out));
  }
  if (n == "totx" || n == "toty") {
    double t = 0;
    for (const Value& pt : as_list(args[0]))
      t += clamp01((*pt.items)[n == "totx" ? 0 : 1].num);
    return Value::real(t);
  }
  if (n == "ssize")
    return Value::real(static_cast<double>(as_list(args[0]).size()));
  if (n == "bag_count_below") {
    double cutoff = as_real(args[0]);
    double c = 0;
    for (const Value& v : as_list(args[1]))
      if (v.num < cutoff) c += 1;
    return Value::real(c);
  }
  throw EvalError(Code::kInternal, "primitive '" + n + "' has no runtime", e->pos);
}

// --- program-level entry points ------------------------------------------------

struct RunResult {
  Value value;
  std::uint64_t steps = 0;
  std::vector<TraceEntry> trace;
};

inline ValueEnv bind_sources(const Program& p, const std::map<std::string, Value>& inputs) {
  ValueEnv env;
  for (const SourceDecl& s : p.sources) {
    auto it = inputs.find(s.name);
    if (it == inputs.end())
      throw EvalError(Code::kMissingSource, "no input provided for source '" + s.name + "'",
                      s.pos);
    env = venv_bind(env, s.name, it->second);
  }
  return env;
}

// Top-level definitions become curried closures; a zero-parameter definition
// evaluates eagerly, in declaration order.
inline ValueEnv bind_defs(ValueEnv env, const Program& p, Evaluator& ev) {
  for (const DefDecl& d : p.defs) {
    if (d.params.empty()) {
      env = venv_bind(env, d.name, ev.eval(env, d.body));
      continue;
    }
    ExprPtr body = d.body;
    for (auto it = d.params.rbegin(); it != d.params.rend(); ++it) {
      auto lam = std::make_shared<Expr>();
      lam->k = Expr::K::kLam;
      lam->name2 = *it;
      lam->pos = d.pos;
      lam->kids = {body};
      body = lam;
    }
    env = venv_bind(env, d.name, Value::closure(body, env));
  }
  return env;
}

// Deterministic sampled execution: identical (program, inputs, seed, fuel)
// yields an identical value and trace.
inline RunResult run_program(const TypedProgram& tp,
                             const std::map<std::string, Value>& inputs,
                             std::uint64_t seed, std::uint64_t fuel,
                             bool want_trace = false) {
  Rng rng(seed);
  RunResult out;
  Evaluator ev(&rng, fuel, want_trace ? &out.trace : nullptr);
  ValueEnv env = bind_defs(bind_sources(tp.program, inputs), tp.program, ev);
  out.value = ev.eval(env, tp.program.main);
  out.steps = ev.steps();
  return out;
}

// Exact output distribution of a program whose main is a private computation
// over reals.
inline Dist eval_exact_output(const TypedProgram& tp,
                              const std::map<std::string, Value>& inputs, const Grid& grid,
                              std::uint64_t fuel = 1u << 24) {
  if (tp.main_type->k != Type::K::kPM || tp.main_type->inner->k != Type::K::kReal)
    throw EvalError(Code::kUnsupportedExact,
                    "exact evaluation needs main to be a private real computation");
  Evaluator ev(grid, fuel);
  ValueEnv env = bind_defs(bind_sources(tp.program, inputs), tp.program, ev);
  Value v = ev.eval(env, tp.program.main);
  if (v.k != Value::K::kDist)
    throw EvalError(Code::kInternal, "exact evaluation did not produce a distribution");
  Dist d;
  for (const auto& [val, mass] : v.dist->entries) {
    if (val.k != Value::K::kReal)
      throw EvalError(Code::kUnsupportedExact, "exact output support must be real-valued");
    d.support.push_back(val.num);
    d.mass.push_back(mass);
  }
  return d;
}

// Renders a value deterministically (for CLI output and golden tests).
inline std::string value_str(const Value& v) {
  char buf[40];
  switch (v.k) {
    case Value::K::kBool: return v.bv ? "true" : "false";
    case Value::K::kReal:
      std::snprintf(buf, sizeof buf, "%.17g", v.num);
      return buf;
    case Value::K::kPair:
      return "(" + value_str((*v.items)[0]) + ", " + value_str((*v.items)[1]) + ")";
    case Value::K::kList: {
      std::string s = "[";
      for (std::size_t i = 0; i < v.items->size(); ++i) {
        if (i) s += ", ";
        s += value_str((*v.items)[i]);
      }
      return s + "]";
    }
    case Value::K::kClosure: return "<fun>";
    case Value::K::kDist: {
      std::string s = "dist{";
      for (std::size_t i = 0; i < v.dist->entries.size() && i < 8; ++i) {
        if (i) s += ", ";
        s += value_str(v.dist->entries[i].first);
      }
      if (v.dist->entries.size() > 8) s += ", ...";
      return s + "}";
    }
  }
  return "";
}

}  // namespace solo

#endif  // SOLO_EVAL_HPP
