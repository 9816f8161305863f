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
// The typechecker. Syntax-directed synthesis: every expression has at most
// one derivable type, environment arithmetic is delegated to the environment
// algebra, and privacy composition to the accountant. Trusted primitives are
// checked against a fixed registry of signatures; map-style higher-order
// primitives check their function argument under a fresh skolem environment
// and reject any leak of outside sensitivity into it.
#ifndef SOLO_TYPECHECK_HPP
#define SOLO_TYPECHECK_HPP

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "solo/ast.hpp"
#include "solo/pretty.hpp"

namespace solo {

struct TypedProgram {
  Program program;
  std::vector<std::pair<std::string, std::string>> def_types;  // name -> rendered type
  TypePtr main_type;
};

struct BudgetRow {
  SourceName source;
  std::string cost;     // symbolic rendering
  std::string numeric;  // float rendering
};

namespace check_detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Signature summaries for diagnostics; the checking logic lives in
// Checker::check_prim. Arities are (static args, value args).
struct PrimSig {
  int statics;
  int args;
  const char* signature;
};

inline const std::map<std::string, PrimSig>& prim_registry() {
  static const std::map<std::string, PrimSig> kReg = {
      {"clip", {0, 1, "slist L1 (sreal disc) E -> slist L1 (sreal diff) E"}},
      {"sum", {0, 1, "slist L1 (sreal diff) E -> sreal diff E"}},
      {"map", {0, 2, "(forall e. A e -> B (s * e)) -> slist m (A) E -> slist m (B) (s * E)"}},
      {"lmap", {0, 2, "(a -> b) -> list(a) -> list(b)"}},
      {"zip", {0, 2, "list(a) -> list(b) -> list(prod(a, b))"}},
      {"nth", {0, 2, "list(a) -> real -> a"}},
      {"divd", {0, 2, "real -> real -> real"}},
      {"lt", {0, 2, "real -> real -> bool"}},
      {"listlaplace", {2, 1, "[s, eps] slist L1 (sreal diff) E -> EpsPM trunc[eps](E) list(real)"}},
      {"gauss", {3, 1, "[s, eps, delta] sreal diff E -> EDPM trunced[eps, delta](E) real"}},
      {"listgauss", {3, 1, "[s, eps, delta] slist L2 (sreal diff) E -> EDPM trunced[eps, delta](E) list(real)"}},
      {"mlaplace", {2, 1, "[s, eps] smatrix L1 [r, c] (sreal diff) E -> EpsPM trunc[eps](E) list(list(real))"}},
      {"mclip", {0, 1, "smatrix m [r, c] (sreal disc) E -> smatrix m [r, c] (sreal diff) E"}},
      {"xgradient", {0, 3, "list(list(real)) -> smatrix LInf [r, c] (sreal diff) E1 -> smatrix LInf [r, 1] (sreal diff) E2 -> smatrix L1 [1, c] (sreal diff) join(E1, E2)"}},
      {"msub", {0, 2, "list(list(real)) -> list(list(real)) -> list(list(real))"}},
      {"mzeros", {2, 0, "[r, c] -> list(list(real))"}},
      {"advloop", {2, 2, "[k, delta'] a -> (a -> EDPM P a) -> EDPM advcomp(k, delta', P) a"}},
      {"mloop", {1, 2, "[k] a -> (a -> PM P a) -> PM scale[k](P) a"}},
      {"mloopi", {1, 2, "[k] a -> (real -> a -> PM P a) -> PM scale[k](P) a"}},
      {"expmech", {1, 3, "[eps] list(prod(real, real)) -> sdict LInf (sreal disc, sreal diff) E -> list(prod(real, real)) -> EpsPM trunc[eps](E) real"}},
      {"expnloop", {2, 3, "[k, eps] list(prod(real, real)) -> sdict LInf (sreal disc, sreal diff) E -> list(prod(real, real)) -> EpsPM scale[2k](trunc[eps](E)) list(prod(real, real))"}},
      {"conv_eps_to_ed", {0, 1, "EpsPM P a -> EDPM conv(P) a"}},
      {"conv_eps_to_rdp", {1, 1, "[alpha] EpsPM P a -> RDPPM conv(P, alpha) a"}},
      {"conv_rdp_to_ed", {1, 1, "[delta] RDPPM P a -> EDPM conv(P, delta) a"}},
      {"assign", {0, 2, "list(prod(real, real)) -> sset(prod(real, real)) E -> sset(prod(prod(real, real), real)) E"}},
      {"ppartition", {0, 1, "sset(prod(prod(real, real), real)) E -> slist L1 (sset(prod(real, real))) E"}},
      {"totx", {0, 1, "sset(prod(real, real)) E -> sreal diff E"}},
      {"toty", {0, 1, "sset(prod(real, real)) E -> sreal diff E"}},
      {"ssize", {0, 1, "sset(a) E -> sreal diff E"}},
      {"bag_count_below", {0, 2, "real -> sset(real) E -> sreal diff E"}},
  };
  return kReg;
}

class Checker {
 public:
  explicit Checker(const Program* prog) : prog_(prog) {
    if (prog_) {
      for (const DefDecl& d : prog_->defs) {
        if (defs_.count(d.name))
          throw TypeError(Code::kTypeMismatch, "duplicate definition '" + d.name + "'", d.pos);
        defs_[d.name] = &d;
      }
    }
  }

  TypedProgram run() {
    TypedProgram out;
    out.program = *prog_;
    base_scope_.clear();
    for (const SourceDecl& s : prog_->sources)
      base_scope_.emplace_back(
          s.name, Type::sensitive_lit(s.stype, SymEnv::of(SEnv::singleton(s.name, Sens(1)))));
    for (const DefDecl& d : prog_->defs) {
      if (d.env_vars.empty()) {
        // Monomorphic definitions are checked eagerly against their own
        // declared parameter types; polymorphic ones at each use.
        at_pos(d.pos, [&] {
          std::vector<TypePtr> declared;
          TypePtr rest = d.signature;
          for (std::size_t i = 0; i < d.params.size() && rest->k == Type::K::kFun; ++i) {
            declared.push_back(resolve_type(rest->a, d.pos));
            rest = rest->b;
          }
          return check_def_instance(d, declared, d.pos);
        });
      }
      std::string sig = d.env_vars.empty() ? "" : render_forall(d.env_vars);
      out.def_types.emplace_back(d.name, sig + pretty_type(d.signature));
    }
    scope_ = base_scope_;
    out.main_type = synth(prog_->main);
    return out;
  }

  // Checks one expression under an explicit environment (no program context).
  TypePtr typecheck_expr(const std::vector<std::pair<std::string, TypePtr>>& gamma,
                         const ExprPtr& e) {
    scope_.clear();
    for (const auto& [n, t] : gamma) scope_.emplace_back(n, t);
    return synth(e);
  }

 private:
  using Scope = std::vector<std::pair<std::string, TypePtr>>;

  static std::string render_forall(const std::vector<std::string>& vars) {
    std::string s = "forall";
    for (const std::string& v : vars) s += " " + v;
    return s + ". ";
  }

  const TypePtr* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  [[noreturn]] static void fail(Code c, const std::string& msg, SourcePos pos) {
    throw TypeError(c, msg, pos);
  }

  // Attaches a source position to accountant and environment-algebra errors.
  template <typename F>
  auto at_pos(SourcePos pos, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const TypeError&) {
      throw;
    } catch (const SoloError& err) {
      fail(err.code(), err.what(), pos);
    }
  }

  static const SymEnv& env_of(const TypePtr& t) {
    if (t->k != Type::K::kSensitive || t->env->k != EnvTerm::K::kLit)
      throw TypeError(Code::kInternal, "expected a resolved sensitive type");
    return t->env->lit;
  }
  static const PrivAny& priv_of(const TypePtr& t) {
    if (t->k != Type::K::kPM || t->penv->k != PrivTerm::K::kLit)
      throw TypeError(Code::kInternal, "expected a resolved private type");
    return t->penv->lit;
  }

  static bool is_realish(const TypePtr& t) {
    return t->k == Type::K::kReal || t->k == Type::K::kRealSing;
  }
  static bool is_sreal(const TypePtr& t) {
    return t->k == Type::K::kSensitive && t->stype->k == SType::K::kSReal;
  }

  // --- resolution of written types under the active variable bindings -------

  SymEnv resolve_env(const EnvTermPtr& t, SourcePos pos) {
    switch (t->k) {
      case EnvTerm::K::kLit: return t->lit;
      case EnvTerm::K::kWild:
        fail(Code::kUnification,
             "wildcard environment '_' is only allowed on map-style function arguments", pos);
      case EnvTerm::K::kVar: {
        auto it = env_bindings_.find(t->var);
        if (it == env_bindings_.end())
          fail(Code::kUnbound, "unbound environment variable '" + t->var + "'", pos);
        return it->second;
      }
      case EnvTerm::K::kPlus:
        return resolve_env(t->a, pos).plus(resolve_env(t->b, pos));
      case EnvTerm::K::kScale:
        return resolve_env(t->a, pos).scale(Sens(t->factor));
      case EnvTerm::K::kJoin:
        return resolve_env(t->a, pos).join(resolve_env(t->b, pos));
    }
    fail(Code::kInternal, "unreachable", pos);
  }

  PrivAny resolve_priv(const PrivTermPtr& t, SourcePos pos) {
    switch (t->k) {
      case PrivTerm::K::kLit: return t->lit;
      case PrivTerm::K::kTrunc: {
        const SEnv& e = resolve_env(t->env, pos).require_concrete("truncation");
        return PrivAny::of(senv_truncate(EpsCost(t->eps), e));
      }
      case PrivTerm::K::kTruncED: {
        const SEnv& e = resolve_env(t->env, pos).require_concrete("truncation");
        EDCost c(RealExpr::lit(t->eps), RealExpr::lit(t->delta));
        return PrivAny::of_ed(senv_truncate(c, e));
      }
      case PrivTerm::K::kPlus:
        return PrivAny::seq_comp(resolve_priv(t->a, pos), resolve_priv(t->b, pos));
      case PrivTerm::K::kScale: return resolve_priv(t->a, pos).scaled(t->factor);
      case PrivTerm::K::kToInf: {
        const SEnv& e = resolve_env(t->env, pos).require_concrete("scale-to-infinity");
        return PrivAny::of(senv_scale_to_inf<EpsCost>(e));
      }
    }
    fail(Code::kInternal, "unreachable", pos);
  }

  TypePtr resolve_type(const TypePtr& t, SourcePos pos) {
    switch (t->k) {
      case Type::K::kBool:
      case Type::K::kReal:
      case Type::K::kRealSing: return t;
      case Type::K::kFun: return Type::fun(resolve_type(t->a, pos), resolve_type(t->b, pos));
      case Type::K::kProd:
        return Type::prod(resolve_type(t->a, pos), resolve_type(t->b, pos));
      case Type::K::kList: return Type::list(resolve_type(t->a, pos));
      case Type::K::kPM:
        return Type::pm_lit(t->variant, resolve_priv(t->penv, pos),
                            resolve_type(t->inner, pos));
      case Type::K::kSensitive:
        return Type::sensitive_lit(t->stype, resolve_env(t->env, pos));
    }
    fail(Code::kInternal, "unreachable", pos);
  }

  // Matches a declared parameter type against an actual argument type,
  // binding environment variables on first use. Environment variables unify
  // only against whole environments.
  void match_param(const TypePtr& sig, const TypePtr& actual, const std::string& def_name,
                   SourcePos pos) {
    auto mismatch = [&]() {
      fail(Code::kTypeMismatch,
           "argument of '" + def_name + "' has type " + pretty_type(actual) +
               " but the signature expects " + pretty_type(sig),
           pos);
    };
    if (sig->k == Type::K::kSensitive) {
      if (actual->k != Type::K::kSensitive || !stype_equal(sig->stype, actual->stype))
        mismatch();
      const SymEnv& got = env_of(actual);
      if (sig->env->k == EnvTerm::K::kVar && !env_bindings_.count(sig->env->var)) {
        env_bindings_[sig->env->var] = got;
        return;
      }
      if (resolve_env(sig->env, pos) != got) mismatch();
      return;
    }
    if (sig->k != actual->k) mismatch();
    switch (sig->k) {
      case Type::K::kBool:
      case Type::K::kReal: return;
      case Type::K::kRealSing:
        if (sig->sing != actual->sing) mismatch();
        return;
      case Type::K::kFun:
      case Type::K::kProd:
        match_param(sig->a, actual->a, def_name, pos);
        match_param(sig->b, actual->b, def_name, pos);
        return;
      case Type::K::kList: match_param(sig->a, actual->a, def_name, pos); return;
      case Type::K::kPM:
        if (sig->variant != actual->variant) mismatch();
        if (resolve_priv(sig->penv, pos) != priv_of(actual)) mismatch();
        match_param(sig->inner, actual->inner, def_name, pos);
        return;
      default: mismatch();
    }
  }

  // --- definitions -----------------------------------------------------------

  // Checks a definition body at one concrete instantiation of its
  // environment variables, memoized per instantiation.
  TypePtr check_def_instance(const DefDecl& d,
                             const std::vector<TypePtr>& arg_types, SourcePos site) {
    // Split the signature into parameter types and result.
    std::vector<TypePtr> params;
    TypePtr rest = d.signature;
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (rest->k != Type::K::kFun)
        fail(Code::kTypeMismatch,
             "definition '" + d.name + "' declares " + std::to_string(d.params.size()) +
                 " parameters but its signature has fewer arrows",
             d.pos);
      params.push_back(rest->a);
      rest = rest->b;
    }
    if (arg_types.size() != params.size())
      fail(Code::kArity,
           "definition '" + d.name + "' expects " + std::to_string(params.size()) +
               " arguments, got " + std::to_string(arg_types.size()),
           site);

    auto saved_bindings = std::move(env_bindings_);
    env_bindings_.clear();
    for (std::size_t i = 0; i < params.size(); ++i)
      match_param(params[i], arg_types[i], d.name, site);
    for (const std::string& v : d.env_vars)
      if (!env_bindings_.count(v))
        fail(Code::kUnification,
             "cannot infer environment variable '" + v + "' of '" + d.name + "'", site);

    std::vector<TypePtr> resolved_params;
    for (const TypePtr& p : params) resolved_params.push_back(resolve_type(p, site));
    TypePtr resolved_result = resolve_type(rest, site);

    std::string key = d.name;
    for (const TypePtr& p : resolved_params) key += "|" + pretty_type(p);
    if (!checked_instances_.count(key)) {
      if (in_progress_.count(d.name))
        fail(Code::kTypeMismatch,
             "recursive definition '" + d.name + "'; use fun[self](...) for recursion",
             site);
      in_progress_.insert(d.name);
      Scope saved_scope = std::move(scope_);
      scope_ = base_scope_;
      for (std::size_t i = 0; i < params.size(); ++i)
        scope_.emplace_back(d.params[i], resolved_params[i]);
      TypePtr derived = synth(d.body);
      scope_ = std::move(saved_scope);
      in_progress_.erase(d.name);
      if (!type_equal(derived, resolved_result))
        fail(Code::kTypeMismatch,
             "body of '" + d.name + "' has type " + pretty_type(derived) +
                 " but the signature declares " + pretty_type(resolved_result),
             d.pos);
      checked_instances_.insert(key);
    }
    env_bindings_ = std::move(saved_bindings);

    TypePtr t = resolved_result;
    for (auto it = resolved_params.rbegin(); it != resolved_params.rend(); ++it)
      t = Type::fun(*it, t);
    return t;
  }

  // --- expression synthesis ---------------------------------------------------

  // Environment-algebra and accountant failures (joins with no canonical
  // form, overflow, mismatched Renyi orders) surface as positioned type
  // errors at the expression that triggered them.
  TypePtr synth(const ExprPtr& e) {
    return at_pos(e->pos, [&] { return synth_impl(e); });
  }

  TypePtr synth_impl(const ExprPtr& e) {
    switch (e->k) {
      case Expr::K::kVar: {
        if (const TypePtr* t = lookup(e->name)) return *t;
        if (defs_.count(e->name)) {
          const DefDecl& d = *defs_.at(e->name);
          if (d.params.empty()) return check_def_instance(d, {}, e->pos);
          fail(Code::kTypeMismatch,
               "definition '" + e->name + "' must be applied to its arguments", e->pos);
        }
        if (primitive_names().count(e->name))
          fail(Code::kTypeMismatch, "primitive '" + e->name + "' must be applied", e->pos);
        fail(Code::kUnbound, "unbound variable '" + e->name + "'", e->pos);
      }
      case Expr::K::kBoolLit: return Type::boolean();
      case Expr::K::kRealLit: return Type::real();
      case Expr::K::kSing: return Type::real_sing(e->rat);

      case Expr::K::kBinOp: return synth_binop(e);
      case Expr::K::kIf: {
        TypePtr c = synth(e->kids[0]);
        if (c->k == Type::K::kSensitive)
          fail(Code::kSensitiveBranch,
               "cannot branch on a sensitive value of type " + pretty_type(c), e->pos);
        if (c->k != Type::K::kBool)
          fail(Code::kTypeMismatch,
               "if-condition must be bool, got " + pretty_type(c), e->pos);
        TypePtr t = synth(e->kids[1]);
        TypePtr f = synth(e->kids[2]);
        require_same_arms(t, f, e->pos);
        return t;
      }

      case Expr::K::kPair:
        return Type::prod(synth(e->kids[0]), synth(e->kids[1]));
      case Expr::K::kProj: {
        TypePtr t = synth(e->kids[0]);
        if (t->k != Type::K::kProd)
          fail(Code::kTypeMismatch, "proj needs a pair, got " + pretty_type(t), e->pos);
        return e->proj == 1 ? t->a : t->b;
      }
      case Expr::K::kSPair: {
        TypePtr l = synth(e->kids[0]);
        TypePtr r = synth(e->kids[1]);
        if (l->k != Type::K::kSensitive || r->k != Type::K::kSensitive)
          fail(Code::kTypeMismatch,
               "spair needs sensitive components, got " + pretty_type(l) + " and " +
                   pretty_type(r),
               e->pos);
        SymEnv env = e->cmetric == CMetric::kLInf ? env_of(l).join(env_of(r))
                                                  : env_of(l).plus(env_of(r));
        return Type::sensitive_lit(SType::sprod(e->cmetric, l->stype, r->stype), env);
      }
      case Expr::K::kSProj: {
        TypePtr t = synth(e->kids[0]);
        if (t->k != Type::K::kSensitive || t->stype->k != SType::K::kSProd)
          fail(Code::kTypeMismatch, "sproj needs a sensitive pair, got " + pretty_type(t),
               e->pos);
        return Type::sensitive_lit(e->proj == 1 ? t->stype->a : t->stype->b, env_of(t));
      }

      case Expr::K::kNil: return Type::list(resolve_type(e->type, e->pos));
      case Expr::K::kCons: {
        TypePtr h = synth(e->kids[0]);
        TypePtr t = synth(e->kids[1]);
        if (t->k != Type::K::kList || !type_equal(t->a, h))
          fail(Code::kTypeMismatch,
               "cons of " + pretty_type(h) + " onto " + pretty_type(t), e->pos);
        return t;
      }
      case Expr::K::kSNil:
        return Type::sensitive_lit(SType::slist(e->cmetric, e->stype), SymEnv());
      case Expr::K::kSCons: {
        TypePtr h = synth(e->kids[0]);
        TypePtr t = synth(e->kids[1]);
        if (h->k != Type::K::kSensitive || t->k != Type::K::kSensitive ||
            t->stype->k != SType::K::kSList || !stype_equal(t->stype->a, h->stype))
          fail(Code::kTypeMismatch,
               "scons of " + pretty_type(h) + " onto " + pretty_type(t), e->pos);
        CMetric m = t->stype->cmetric;
        SymEnv env = m == CMetric::kLInf ? env_of(h).join(env_of(t))
                                         : env_of(h).plus(env_of(t));
        return Type::sensitive_lit(t->stype, env);
      }

      case Expr::K::kCase: {
        TypePtr s = synth(e->kids[0]);
        if (s->k == Type::K::kSensitive)
          fail(Code::kTypeMismatch,
               "case on a sensitive list needs the snil/scons form", e->pos);
        if (s->k != Type::K::kList)
          fail(Code::kTypeMismatch, "case needs a list, got " + pretty_type(s), e->pos);
        TypePtr nil_arm = synth(e->kids[1]);
        scope_.emplace_back(e->name, s->a);
        scope_.emplace_back(e->name2, s);
        TypePtr cons_arm = synth(e->kids[2]);
        scope_.pop_back();
        scope_.pop_back();
        require_same_arms(nil_arm, cons_arm, e->pos);
        return nil_arm;
      }
      case Expr::K::kSCase: {
        TypePtr s = synth(e->kids[0]);
        if (s->k != Type::K::kSensitive || s->stype->k != SType::K::kSList)
          fail(Code::kTypeMismatch, "case needs a sensitive list, got " + pretty_type(s),
               e->pos);
        TypePtr nil_arm = synth(e->kids[1]);
        // Both binders live at the scrutinee's full environment.
        scope_.emplace_back(e->name, Type::sensitive_lit(s->stype->a, env_of(s)));
        scope_.emplace_back(e->name2, s);
        TypePtr cons_arm = synth(e->kids[2]);
        scope_.pop_back();
        scope_.pop_back();
        require_same_arms(nil_arm, cons_arm, e->pos);
        return nil_arm;
      }

      case Expr::K::kLam: {
        TypePtr dom = resolve_type(e->type, e->pos);
        TypePtr cod;
        if (!e->name.empty()) {
          // Recursive function: the result annotation closes the knot.
          cod = resolve_type(e->type2, e->pos);
          scope_.emplace_back(e->name, Type::fun(dom, cod));
          scope_.emplace_back(e->name2, dom);
          TypePtr body = synth(e->kids[0]);
          scope_.pop_back();
          scope_.pop_back();
          if (!type_equal(body, cod))
            fail(Code::kTypeMismatch,
                 "recursive function body has type " + pretty_type(body) +
                     " but declares " + pretty_type(cod),
                 e->pos);
          return Type::fun(dom, cod);
        }
        scope_.emplace_back(e->name2, dom);
        TypePtr body = synth(e->kids[0]);
        scope_.pop_back();
        if (e->type2) {
          cod = resolve_type(e->type2, e->pos);
          if (!type_equal(body, cod))
            fail(Code::kTypeMismatch,
                 "function body has type " + pretty_type(body) + " but declares " +
                     pretty_type(cod),
                 e->pos);
        }
        return Type::fun(dom, body);
      }

      case Expr::K::kApp: return synth_app(e);
      case Expr::K::kLet: {
        TypePtr t1 = synth(e->kids[0]);
        scope_.emplace_back(e->name, t1);
        TypePtr t2 = synth(e->kids[1]);
        scope_.pop_back();
        return t2;
      }

      case Expr::K::kReveal: {
        TypePtr t = synth(e->kids[0]);
        if (t->k != Type::K::kSensitive)
          fail(Code::kTypeMismatch, "reveal needs a sensitive value, got " + pretty_type(t),
               e->pos);
        const SEnv& env = env_of(t).require_concrete("reveal");
        return Type::pm_lit(Variant::kEps, PrivAny::of(senv_scale_to_inf<EpsCost>(env)),
                            plain_of_stype(t->stype));
      }
      case Expr::K::kLaplace: {
        Rat s = singleton_value(e->kids[0], "laplace sensitivity bound");
        Rat eps = singleton_value(e->kids[1], "laplace privacy parameter");
        if (eps.is_zero())
          fail(Code::kDomain, "laplace needs eps > 0", e->pos);
        TypePtr t = synth(e->kids[2]);
        if (!is_sreal(t))
          fail(Code::kTypeMismatch,
               "laplace needs a sensitive real, got " + pretty_type(t), e->pos);
        if (t->stype->nmetric != NMetric::kDiff)
          fail(Code::kMetricMismatch,
               "laplace needs the diff metric; clip the input to convert from disc",
               e->pos);
        const SEnv& env = env_of(t).require_concrete("laplace");
        Sens max = senv_max(env);
        if (max.is_inf())
          fail(Code::kInfiniteSensitivity,
               "laplace argument has infinite sensitivity " + env.str(), e->pos);
        if (!(Rat(max.value()) <= s))
          fail(Code::kTypeMismatch,
               "laplace argument is " + max.str() + "-sensitive in " + env.str() +
                   ", above the declared bound " + s.str(),
               e->pos);
        return Type::pm_lit(Variant::kEps,
                            PrivAny::of(senv_truncate(EpsCost(eps), env)), Type::real());
      }
      case Expr::K::kReturn: {
        TypePtr t = synth(e->kids[0]);
        return Type::pm_lit(Variant::kEps, PrivAny(), t);
      }
      case Expr::K::kBind: {
        TypePtr m1 = synth(e->kids[0]);
        if (m1->k != Type::K::kPM)
          fail(Code::kTypeMismatch,
               "left side of '<-' must be a private computation, got " + pretty_type(m1),
               e->pos);
        scope_.emplace_back(e->name, m1->inner);
        TypePtr m2 = synth(e->kids[1]);
        scope_.pop_back();
        if (m2->k != Type::K::kPM)
          fail(Code::kTypeMismatch,
               "body of a bind must be a private computation, got " + pretty_type(m2),
               e->pos);
        PrivAny p = at_pos(e->pos, [&] { return PrivAny::seq_comp(priv_of(m1), priv_of(m2)); });
        Variant v = p.empty() ? Variant::kEps : p.variant;
        return Type::pm_lit(v, p, m2->inner);
      }

      case Expr::K::kPrimCall: return check_prim(e);
    }
    fail(Code::kInternal, "unreachable expression kind", e->pos);
  }

  TypePtr synth_binop(const ExprPtr& e) {
    TypePtr l = synth(e->kids[0]);
    TypePtr r = synth(e->kids[1]);
    switch (e->op) {
      case BinK::kPlus: {
        if (is_realish(l) && is_realish(r)) return Type::real();
        if (is_sreal(l) && is_sreal(r)) {
          if (l->stype->nmetric != r->stype->nmetric)
            fail(Code::kMetricMismatch,
                 "cannot add " + pretty_type(l) + " and " + pretty_type(r), e->pos);
          return Type::sensitive_lit(l->stype, env_of(l).plus(env_of(r)));
        }
        fail(Code::kTypeMismatch,
             "cannot add " + pretty_type(l) + " and " + pretty_type(r), e->pos);
      }
      case BinK::kTimes: {
        if (is_realish(l) && is_realish(r)) return Type::real();
        fail(Code::kTypeMismatch,
             "<*> multiplies plain reals; use ltimes to scale a sensitive value",
             e->pos);
      }
      case BinK::kLTimes: {
        if (l->k != Type::K::kRealSing)
          fail(Code::kTypeMismatch,
               "left operand of ltimes must be a singleton real (sing(k)), got " +
                   pretty_type(l),
               e->pos);
        if (!l->sing.is_integer())
          fail(Code::kTypeMismatch,
               "sensitivity scaling requires a natural factor, got " + l->sing.str(),
               e->pos);
        if (!is_sreal(r))
          fail(Code::kTypeMismatch,
               "right operand of ltimes must be a sensitive real, got " + pretty_type(r),
               e->pos);
        return Type::sensitive_lit(r->stype, env_of(r).scale(Sens(l->sing.num())));
      }
    }
    fail(Code::kInternal, "unreachable", e->pos);
  }

  // Case and if alternatives must agree exactly. A disagreement that
  // disappears under environment erasure (a sensitive arm against its plain
  // twin, or two arms with different costs) is an environment-level error.
  void require_same_arms(const TypePtr& a, const TypePtr& b, SourcePos pos) {
    if (type_equal(a, b)) return;
    Code c = type_equal(erase_envs(a), erase_envs(b)) ? Code::kBranchEnvMismatch
                                                      : Code::kTypeMismatch;
    fail(c,
         std::string(c == Code::kBranchEnvMismatch
                         ? "branch alternatives carry different sensitivity or privacy: "
                         : "branch alternatives have different types: ") +
             pretty_type(a) + " vs " + pretty_type(b),
         pos);
  }

  Rat singleton_value(const ExprPtr& e, const char* what) {
    TypePtr t = synth(e);
    if (t->k != Type::K::kRealSing)
      fail(Code::kTypeMismatch,
           std::string(what) + " must be a singleton real (sing(r)), got " + pretty_type(t),
           e->pos);
    return t->sing;
  }

  std::uint64_t nat_static(const ExprPtr& e, const char* what) {
    Rat r = singleton_value(e, what);
    if (!r.is_integer())
      fail(Code::kTypeMismatch, std::string(what) + " must be a natural number", e->pos);
    return r.num();
  }

  // --- applications -----------------------------------------------------------

  TypePtr synth_app(const ExprPtr& e) {
    std::vector<ExprPtr> args;
    ExprPtr base = e;
    while (base->k == Expr::K::kApp) {
      args.insert(args.begin(), base->kids[1]);
      base = base->kids[0];
    }
    std::size_t consumed = 0;
    TypePtr t;
    if (base->k == Expr::K::kVar && !lookup(base->name) && defs_.count(base->name)) {
      const DefDecl& d = *defs_.at(base->name);
      if (args.size() < d.params.size())
        fail(Code::kArity,
             "definition '" + d.name + "' expects " + std::to_string(d.params.size()) +
                 " arguments, got " + std::to_string(args.size()),
             e->pos);
      std::vector<TypePtr> arg_types;
      for (std::size_t i = 0; i < d.params.size(); ++i)
        arg_types.push_back(synth(args[i]));
      TypePtr ft = check_def_instance(d, arg_types, e->pos);
      for (std::size_t i = 0; i < d.params.size(); ++i) ft = ft->b;
      t = ft;
      consumed = d.params.size();
    } else {
      t = synth(base);
    }
    for (std::size_t i = consumed; i < args.size(); ++i) {
      if (t->k != Type::K::kFun)
        fail(Code::kTypeMismatch,
             "cannot apply a value of type " + pretty_type(t), args[i]->pos);
      TypePtr at = synth(args[i]);
      if (!type_equal(at, t->a))
        fail(Code::kTypeMismatch,
             "argument has type " + pretty_type(at) + " but the function expects " +
                 pretty_type(t->a),
             args[i]->pos);
      t = t->b;
    }
    return t;
  }

  // --- trusted primitives -------------------------------------------------------

  void expect_prim_arity(const ExprPtr& e, const PrimSig& sig) {
    if (static_cast<int>(e->statics.size()) != sig.statics)
      fail(Code::kArity,
           "'" + e->name + "' takes " + std::to_string(sig.statics) +
               " static arguments: " + sig.signature,
           e->pos);
    if (static_cast<int>(e->kids.size()) != sig.args)
      fail(Code::kArity,
           "'" + e->name + "' takes " + std::to_string(sig.args) + " arguments: " +
               sig.signature,
           e->pos);
  }

  TypePtr sensitive_arg(const ExprPtr& e, std::size_t i, const char* expected) {
    TypePtr t = synth(e->kids[i]);
    if (t->k != Type::K::kSensitive)
      fail(Code::kTypeMismatch,
           "'" + e->name + "' needs " + expected + ", got " + pretty_type(t),
           e->kids[i]->pos);
    return t;
  }

  void require_stype(const ExprPtr& e, const TypePtr& t, const STypePtr& want,
                     const char* note) {
    if (!stype_equal(t->stype, want)) {
      Code c = Code::kTypeMismatch;
      // A metric-only disagreement gets the dedicated diagnostic.
      if (t->stype->k == want->k) c = Code::kMetricMismatch;
      fail(c,
           "'" + e->name + "' needs " + pretty_stype(want) + " (" + note + "), got " +
               pretty_stype(t->stype),
           e->pos);
    }
  }

  TypePtr plain_arg(const ExprPtr& e, std::size_t i, const TypePtr& want) {
    TypePtr t = synth(e->kids[i]);
    TypePtr got = t->k == Type::K::kRealSing && want->k == Type::K::kReal ? Type::real() : t;
    if (!type_equal(got, want))
      fail(Code::kTypeMismatch,
           "'" + e->name + "' needs " + pretty_type(want) + ", got " + pretty_type(t),
           e->kids[i]->pos);
    return t;
  }

  TypePtr check_prim(const ExprPtr& e) {
    const auto& reg = prim_registry();
    auto it = reg.find(e->name);
    if (it == reg.end())
      fail(Code::kUnbound, "unregistered primitive '" + e->name + "'", e->pos);
    expect_prim_arity(e, it->second);
    const std::string& n = e->name;

    static const STypePtr kSRealDiff = SType::sreal(NMetric::kDiff);
    static const STypePtr kSRealDisc = SType::sreal(NMetric::kDisc);
    static const TypePtr kPt = Type::prod(Type::real(), Type::real());

    if (n == "clip") {
      TypePtr t = sensitive_arg(e, 0, "an L1 list of discrete-metric reals");
      require_stype(e, t, SType::slist(CMetric::kL1, kSRealDisc), "clip converts disc to diff");
      return Type::sensitive_lit(SType::slist(CMetric::kL1, kSRealDiff), env_of(t));
    }
    if (n == "sum") {
      TypePtr t = sensitive_arg(e, 0, "an L1 list of diff-metric reals");
      require_stype(e, t, SType::slist(CMetric::kL1, kSRealDiff),
                    "sum needs bounded elements; clip first");
      return Type::sensitive_lit(kSRealDiff, env_of(t));
    }
    if (n == "map") return check_map(e);
    if (n == "lmap") {
      TypePtr f = synth(e->kids[0]);
      if (f->k != Type::K::kFun)
        fail(Code::kTypeMismatch, "'lmap' needs a function, got " + pretty_type(f),
             e->kids[0]->pos);
      plain_arg(e, 1, Type::list(f->a));
      return Type::list(f->b);
    }
    if (n == "zip") {
      TypePtr a = synth(e->kids[0]);
      TypePtr b = synth(e->kids[1]);
      if (a->k != Type::K::kList || b->k != Type::K::kList)
        fail(Code::kTypeMismatch, "'zip' needs two lists", e->pos);
      return Type::list(Type::prod(a->a, b->a));
    }
    if (n == "nth") {
      TypePtr a = synth(e->kids[0]);
      if (a->k != Type::K::kList)
        fail(Code::kTypeMismatch, "'nth' needs a list, got " + pretty_type(a),
             e->kids[0]->pos);
      plain_arg(e, 1, Type::real());
      return a->a;
    }
    if (n == "divd") {
      plain_arg(e, 0, Type::real());
      plain_arg(e, 1, Type::real());
      return Type::real();
    }
    if (n == "lt") {
      plain_arg(e, 0, Type::real());
      plain_arg(e, 1, Type::real());
      return Type::boolean();
    }

    if (n == "listlaplace" || n == "mlaplace") {
      Rat s = singleton_value(e->statics[0], "sensitivity bound");
      Rat eps = singleton_value(e->statics[1], "privacy parameter");
      if (eps.is_zero()) fail(Code::kDomain, "'" + n + "' needs eps > 0", e->pos);
      TypePtr t = sensitive_arg(e, 0, "a sensitive L1 collection");
      TypePtr result_inner;
      if (n == "listlaplace") {
        require_stype(e, t, SType::slist(CMetric::kL1, kSRealDiff),
                      "the vector Laplace mechanism needs L1 diff lists");
        result_inner = Type::list(Type::real());
      } else {
        if (t->stype->k != SType::K::kSMatrix || t->stype->cmetric != CMetric::kL1 ||
            !stype_equal(t->stype->a, kSRealDiff))
          fail(t->stype->k == SType::K::kSMatrix ? Code::kMetricMismatch
                                                 : Code::kTypeMismatch,
               "'mlaplace' needs an L1 diff matrix, got " + pretty_stype(t->stype), e->pos);
        result_inner = Type::list(Type::list(Type::real()));
      }
      const SEnv& env = env_of(t).require_concrete(n.c_str());
      Sens max = senv_max(env);
      if (max.is_inf())
        fail(Code::kInfiniteSensitivity, "'" + n + "' argument has infinite sensitivity",
             e->pos);
      if (!(Rat(max.value()) <= s))
        fail(Code::kTypeMismatch,
             "'" + n + "' argument is " + max.str() + "-sensitive, above the bound " +
                 s.str(),
             e->pos);
      return Type::pm_lit(Variant::kEps, PrivAny::of(senv_truncate(EpsCost(eps), env)),
                          result_inner);
    }

    if (n == "gauss" || n == "listgauss") {
      Rat s = singleton_value(e->statics[0], "sensitivity bound");
      Rat eps = singleton_value(e->statics[1], "privacy parameter");
      Rat delta = singleton_value(e->statics[2], "failure probability");
      if (eps.is_zero() || s.is_zero())
        fail(Code::kDomain, "'" + n + "' needs s > 0 and eps > 0", e->pos);
      if (delta.is_zero() || !(delta < Rat(1)))
        fail(Code::kDomain, "'" + n + "' needs delta in (0,1)", e->pos);
      TypePtr t = sensitive_arg(e, 0, "a diff-metric input");
      TypePtr result_inner;
      if (n == "gauss") {
        if (!is_sreal(t) || t->stype->nmetric != NMetric::kDiff)
          fail(is_sreal(t) ? Code::kMetricMismatch : Code::kTypeMismatch,
               "'gauss' needs sreal diff, got " + pretty_stype(t->stype), e->pos);
        result_inner = Type::real();
      } else {
        require_stype(e, t, SType::slist(CMetric::kL2, kSRealDiff),
                      "the Gaussian mechanism uses the L2 metric");
        result_inner = Type::list(Type::real());
      }
      const SEnv& env = env_of(t).require_concrete(n.c_str());
      Sens max = senv_max(env);
      if (max.is_inf())
        fail(Code::kInfiniteSensitivity, "'" + n + "' argument has infinite sensitivity",
             e->pos);
      if (!(Rat(max.value()) <= s))
        fail(Code::kTypeMismatch,
             "'" + n + "' argument is " + max.str() + "-sensitive, above the bound " +
                 s.str(),
             e->pos);
      EDCost cost(RealExpr::lit(eps), RealExpr::lit(delta));
      return Type::pm_lit(Variant::kED, PrivAny::of_ed(senv_truncate(cost, env)),
                          result_inner);
    }

    if (n == "mclip") {
      TypePtr t = sensitive_arg(e, 0, "a disc-metric matrix");
      if (t->stype->k != SType::K::kSMatrix || !stype_equal(t->stype->a, kSRealDisc))
        fail(Code::kTypeMismatch,
             "'mclip' needs a disc-metric matrix, got " + pretty_stype(t->stype), e->pos);
      return Type::sensitive_lit(
          SType::smatrix(t->stype->cmetric, t->stype->rows, t->stype->cols, kSRealDiff),
          env_of(t));
    }
    if (n == "xgradient") {
      plain_arg(e, 0, Type::list(Type::list(Type::real())));
      TypePtr x = sensitive_arg(e, 1, "an LInf diff matrix of examples");
      TypePtr y = sensitive_arg(e, 2, "an LInf diff matrix of labels");
      if (x->stype->k != SType::K::kSMatrix || x->stype->cmetric != CMetric::kLInf ||
          !stype_equal(x->stype->a, kSRealDiff))
        fail(Code::kTypeMismatch,
             "'xgradient' examples must be smatrix LInf (sreal diff), got " +
                 pretty_stype(x->stype),
             e->pos);
      if (y->stype->k != SType::K::kSMatrix || y->stype->cmetric != CMetric::kLInf ||
          y->stype->cols != 1 || y->stype->rows != x->stype->rows ||
          !stype_equal(y->stype->a, kSRealDiff))
        fail(Code::kTypeMismatch,
             "'xgradient' labels must be smatrix LInf [rows, 1] (sreal diff) with matching "
             "rows",
             e->pos);
      return Type::sensitive_lit(
          SType::smatrix(CMetric::kL1, 1, x->stype->cols, kSRealDiff),
          env_of(x).join(env_of(y)));
    }
    if (n == "msub") {
      plain_arg(e, 0, Type::list(Type::list(Type::real())));
      plain_arg(e, 1, Type::list(Type::list(Type::real())));
      return Type::list(Type::list(Type::real()));
    }
    if (n == "mzeros") {
      nat_static(e->statics[0], "row count");
      nat_static(e->statics[1], "column count");
      return Type::list(Type::list(Type::real()));
    }

    if (n == "advloop") {
      std::uint64_t k = nat_static(e->statics[0], "iteration count");
      Rat dp = singleton_value(e->statics[1], "delta'");
      TypePtr init = synth(e->kids[0]);
      TypePtr f = synth(e->kids[1]);
      if (f->k != Type::K::kFun || f->b->k != Type::K::kPM ||
          !type_equal(f->a, init) || !type_equal(f->b->inner, init))
        fail(Code::kTypeMismatch,
             "'advloop' body must have type a -> EDPM P a matching the initial value",
             e->pos);
      if (priv_of(f->b).variant != Variant::kED && !priv_of(f->b).empty())
        fail(Code::kTypeMismatch,
             "'advloop' needs an (eps, delta) body; use conv_eps_to_ed or gauss", e->pos);
      try {
        PEnv<EDCost> out = adv_comp(k, RealExpr::lit(dp), priv_of(f->b).ed);
        return Type::pm_lit(Variant::kED, PrivAny::of_ed(out), init);
      } catch (const SoloError& err) {
        fail(err.code(), err.what(), e->pos);
      }
    }
    if (n == "mloop" || n == "mloopi") {
      std::uint64_t k = nat_static(e->statics[0], "iteration count");
      TypePtr init = synth(e->kids[0]);
      TypePtr f = synth(e->kids[1]);
      TypePtr body = f;
      if (n == "mloopi") {
        if (f->k != Type::K::kFun || f->a->k != Type::K::kReal)
          fail(Code::kTypeMismatch,
               "'mloopi' body must have type real -> a -> PM P a", e->pos);
        body = f->b;
      }
      if (body->k != Type::K::kFun || body->b->k != Type::K::kPM ||
          !type_equal(body->a, init) || !type_equal(body->b->inner, init))
        fail(Code::kTypeMismatch,
             "'" + n + "' body must loop a private computation over the initial value's "
                       "type: " + it->second.signature,
             e->pos);
      PrivAny p = at_pos(e->pos, [&] { return priv_of(body->b).scaled(k); });
      return Type::pm_lit(p.empty() ? Variant::kEps : p.variant, p, init);
    }

    if (n == "expmech" || n == "expnloop") {
      Rat eps;
      std::uint64_t k = 1;
      if (n == "expmech") {
        eps = singleton_value(e->statics[0], "privacy parameter");
      } else {
        k = nat_static(e->statics[0], "iteration count");
        eps = singleton_value(e->statics[1], "privacy parameter");
      }
      if (eps.is_zero()) fail(Code::kDomain, "'" + n + "' needs eps > 0", e->pos);
      plain_arg(e, 0, Type::list(kPt));  // queries as (lo, hi) ranges
      std::size_t dict_idx = 1;
      TypePtr db = sensitive_arg(e, dict_idx, "a sensitive dictionary");
      require_stype(e, db, SType::sdict(CMetric::kLInf, kSRealDisc, kSRealDiff),
                    "histogram keyed by disc reals");
      plain_arg(e, 2, Type::list(kPt));  // synthetic histogram as an assoc list
      const SEnv& env = env_of(db).require_concrete(n.c_str());
      PEnv<EpsCost> cost = senv_truncate(EpsCost(eps), env);
      if (n == "expmech")
        return Type::pm_lit(Variant::kEps, PrivAny::of(cost), Type::real());
      // One exponential-mechanism selection plus one Laplace measurement per
      // iteration: 2k mechanisms in total.
      return Type::pm_lit(Variant::kEps, PrivAny::of(scale_priv(2 * k, cost)),
                          Type::list(kPt));
    }

    if (n == "conv_eps_to_ed" || n == "conv_eps_to_rdp" || n == "conv_rdp_to_ed") {
      TypePtr t = synth(e->kids[0]);
      if (t->k != Type::K::kPM)
        fail(Code::kTypeMismatch,
             "'" + n + "' needs a private computation, got " + pretty_type(t), e->pos);
      const PrivAny& p = priv_of(t);
      try {
        if (n == "conv_eps_to_ed") {
          if (!p.empty() && p.variant != Variant::kEps)
            fail(Code::kTypeMismatch, "'conv_eps_to_ed' needs an EpsPM computation", e->pos);
          return Type::pm_lit(Variant::kED, PrivAny::of_ed(conv_eps_to_ed(p.eps)), t->inner);
        }
        if (n == "conv_eps_to_rdp") {
          Rat alpha = singleton_value(e->statics[0], "Renyi order alpha");
          if (!p.empty() && p.variant != Variant::kEps)
            fail(Code::kTypeMismatch, "'conv_eps_to_rdp' needs an EpsPM computation", e->pos);
          return Type::pm_lit(Variant::kRDP, PrivAny::of_rdp(conv_eps_to_rdp(p.eps, alpha)),
                              t->inner);
        }
        Rat delta = singleton_value(e->statics[0], "conversion delta");
        if (!p.empty() && p.variant != Variant::kRDP)
          fail(Code::kTypeMismatch, "'conv_rdp_to_ed' needs an RDPPM computation", e->pos);
        return Type::pm_lit(Variant::kED,
                            PrivAny::of_ed(conv_rdp_to_ed(p.rdp, RealExpr::lit(delta))),
                            t->inner);
      } catch (const TypeError&) {
        throw;
      } catch (const SoloError& err) {
        fail(err.code(), err.what(), e->pos);
      }
    }

    if (n == "assign") {
      plain_arg(e, 0, Type::list(kPt));
      TypePtr t = sensitive_arg(e, 1, "a sensitive set of points");
      require_stype(e, t, SType::sset(kPt), "two-dimensional points");
      return Type::sensitive_lit(SType::sset(Type::prod(kPt, Type::real())), env_of(t));
    }
    if (n == "ppartition") {
      TypePtr t = sensitive_arg(e, 0, "a sensitive set of indexed points");
      require_stype(e, t, SType::sset(Type::prod(kPt, Type::real())),
                    "points paired with a cluster index");
      return Type::sensitive_lit(SType::slist(CMetric::kL1, SType::sset(kPt)), env_of(t));
    }
    if (n == "totx" || n == "toty") {
      TypePtr t = sensitive_arg(e, 0, "a sensitive set of points");
      require_stype(e, t, SType::sset(kPt), "coordinates are clamped to [0,1]");
      return Type::sensitive_lit(kSRealDiff, env_of(t));
    }
    if (n == "ssize") {
      TypePtr t = sensitive_arg(e, 0, "a sensitive set");
      if (t->stype->k != SType::K::kSSet)
        fail(Code::kTypeMismatch, "'ssize' needs a sensitive set, got " +
                                      pretty_stype(t->stype),
             e->pos);
      return Type::sensitive_lit(kSRealDiff, env_of(t));
    }
    if (n == "bag_count_below") {
      plain_arg(e, 0, Type::real());
      TypePtr t = sensitive_arg(e, 1, "a sensitive set of reals");
      require_stype(e, t, SType::sset(Type::real()), "counts are 1-sensitive per record");
      return Type::sensitive_lit(kSRealDiff, env_of(t));
    }
    fail(Code::kInternal, "primitive '" + n + "' is registered but not implemented", e->pos);
  }

  // map : (forall e. A e -> B (s * e)) -> slist m (A) E -> slist m (B) (s * E).
  // The function argument is checked under a fresh skolem environment; any
  // sensitivity that reaches the body from outside the parameter cannot be
  // expressed as s * skolem and is rejected as an escaping environment.
  TypePtr check_map(const ExprPtr& e) {
    TypePtr xs = sensitive_arg(e, 1, "a sensitive list");
    if (xs->stype->k != SType::K::kSList)
      fail(Code::kTypeMismatch,
           "'map' needs a sensitive list, got " + pretty_stype(xs->stype), e->pos);
    const STypePtr& elem = xs->stype->a;

    const ExprPtr& f = e->kids[0];
    if (f->k != Expr::K::kLam)
      fail(Code::kUnification,
           "'map' needs a literal fun(x : <stype> _) => ... argument so its sensitivity "
           "scale can be inferred",
           f->pos);
    if (!f->name.empty())
      fail(Code::kUnification, "'map' does not accept recursive functions", f->pos);
    if (f->type->k != Type::K::kSensitive || f->type->env->k != EnvTerm::K::kWild)
      fail(Code::kUnification,
           "'map' function parameter must be annotated with the wildcard environment, "
           "e.g. fun(x : sreal diff _) => ...",
           f->pos);
    if (!stype_equal(f->type->stype, elem))
      fail(Code::kTypeMismatch,
           "'map' function takes " + pretty_stype(f->type->stype) +
               " but the list holds " + pretty_stype(elem),
           f->pos);

    int sk = next_skolem_++;
    scope_.emplace_back(f->name2, Type::sensitive_lit(elem, SymEnv::skolem(sk)));
    TypePtr body = synth(f->kids[0]);
    scope_.pop_back();

    if (body->k != Type::K::kSensitive)
      fail(Code::kUnification,
           "'map' function must return a sensitive value, got " + pretty_type(body),
           f->pos);
    const SymEnv& benv = env_of(body);
    Sens scale = Sens(0);
    for (const auto& [id, c] : benv.skolems) {
      if (id != sk)
        fail(Code::kEnvEscape,
             "'map' function leaks an enclosing map's abstract environment", f->pos);
      scale = c;
    }
    if (!benv.concrete.empty())
      fail(Code::kEnvEscape,
           "'map' function captures sensitive data " + benv.concrete.str() +
               " from outside its parameter; its type cannot generalize",
           f->pos);
    return Type::sensitive_lit(SType::slist(xs->stype->cmetric, body->stype),
                               env_of(xs).scale(scale));
  }

  const Program* prog_;
  std::map<std::string, const DefDecl*> defs_;
  Scope base_scope_;
  Scope scope_;
  std::map<std::string, SymEnv> env_bindings_;
  std::set<std::string> checked_instances_;
  std::set<std::string> in_progress_;
  int next_skolem_ = 1;
};

}  // namespace check_detail

inline TypedProgram typecheck_program(const Program& p) {
  check_detail::Checker c(&p);
  return c.run();
}

// Checks a single expression under an explicit type environment.
inline TypePtr typecheck_expr(const std::vector<std::pair<std::string, TypePtr>>& gamma,
                              const ExprPtr& e) {
  check_detail::Checker c(nullptr);
  return c.typecheck_expr(gamma, e);
}

// Per-source privacy costs of a program whose main is a private computation.
inline std::vector<BudgetRow> budget_report(const TypedProgram& tp) {
  const TypePtr& t = tp.main_type;
  if (t->k != Type::K::kPM)
    throw TypeError(Code::kNotPrivate,
                    "main has type " + pretty_type(t) +
                        "; only private computations have a privacy budget");
  const PrivAny& p = t->penv->lit;
  std::vector<BudgetRow> rows;
  using check_detail::fmt_double;
  switch (p.variant) {
    case Variant::kEps:
      for (const auto& [o, c] : p.eps)
        rows.push_back({o, "eps = " + c.str(), "eps = " + fmt_double(c.to_double())});
      break;
    case Variant::kED:
      for (const auto& [o, c] : p.ed) {
        if (c.is_inf()) {
          rows.push_back({o, "inf", "inf"});
          continue;
        }
        rows.push_back({o, "eps = " + c.eps().str() + ", delta = " + c.delta().str(),
                        "eps = " + fmt_double(c.eps().eval()) +
                            ", delta = " + fmt_double(c.delta().eval())});
      }
      break;
    case Variant::kRDP:
      for (const auto& [o, c] : p.rdp) {
        if (c.is_inf()) {
          rows.push_back({o, "inf", "inf"});
          continue;
        }
        rows.push_back({o, "alpha = " + c.alpha().str() + ", eps = " + c.eps().str(),
                        "alpha = " + c.alpha().str() +
                            ", eps = " + fmt_double(c.eps().eval())});
      }
      break;
  }
  return rows;
}

}  // namespace solo

#endif  // SOLO_TYPECHECK_HPP
