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
// Abstract syntax: types, sensitive types, environments-in-types, and the
// expression and program forms. The concrete grammar lives in the parser;
// docs/grammar.ebnf documents it.
#ifndef SOLO_AST_HPP
#define SOLO_AST_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "solo/accountant.hpp"
#include "solo/env.hpp"

namespace solo {

enum class NMetric { kDiff, kDisc };
enum class CMetric { kL1, kL2, kLInf };

inline const char* nmetric_name(NMetric m) { return m == NMetric::kDiff ? "diff" : "disc"; }
inline const char* cmetric_name(CMetric m) {
  switch (m) {
    case CMetric::kL1: return "L1";
    case CMetric::kL2: return "L2";
    case CMetric::kLInf: return "LInf";
  }
  return "?";
}

// A sensitivity environment as it appears in a checked type: a concrete part
// over named sources plus coefficients over skolem environment variables.
// Skolems exist only while the checker inspects the body of a map-style
// polymorphic function argument; user-visible types are always concrete.
struct SymEnv {
  SEnv concrete;
  std::map<int, Sens> skolems;

  SymEnv() = default;
  static SymEnv of(SEnv e) {
    SymEnv s;
    s.concrete = std::move(e);
    return s;
  }
  static SymEnv skolem(int id) {
    SymEnv s;
    s.skolems[id] = Sens(1);
    return s;
  }

  bool is_concrete() const { return skolems.empty(); }
  bool empty() const { return concrete.empty() && skolems.empty(); }

  friend bool operator==(const SymEnv& a, const SymEnv& b) {
    return a.concrete == b.concrete && a.skolems == b.skolems;
  }
  friend bool operator!=(const SymEnv& a, const SymEnv& b) { return !(a == b); }

  SymEnv plus(const SymEnv& o) const {
    SymEnv r;
    r.concrete = senv_plus(concrete, o.concrete);
    r.skolems = skolems;
    for (const auto& [id, c] : o.skolems) {
      Sens cur = r.skolems.count(id) ? r.skolems[id] : Sens(0);
      Sens next = cur + c;
      if (next.is_zero())
        r.skolems.erase(id);
      else
        r.skolems[id] = next;
    }
    return r;
  }

  // Pointwise maximum. A join that mixes a skolem with concrete sources has
  // no canonical form (the abstract environment may overlap any source), so
  // it is rejected the same way the host typechecker rejects a stuck type.
  SymEnv join(const SymEnv& o) const {
    if (*this == o) return *this;
    if (empty()) return o;
    if (o.empty()) return *this;
    if (is_concrete() && o.is_concrete()) {
      SymEnv r;
      r.concrete = senv_join(concrete, o.concrete);
      return r;
    }
    if (concrete.empty() && o.concrete.empty() && skolems.size() == 1 &&
        o.skolems.size() == 1 && skolems.begin()->first == o.skolems.begin()->first) {
      SymEnv r;
      r.skolems[skolems.begin()->first] =
          Sens::max(skolems.begin()->second, o.skolems.begin()->second);
      return r;
    }
    throw SoloError(Code::kEnvEscape,
                    "cannot join abstract environment " + str() + " with " + o.str());
  }

  SymEnv scale(Sens k) const {
    SymEnv r;
    r.concrete = senv_scale(k, concrete);
    for (const auto& [id, c] : skolems) {
      Sens s = k * c;
      if (!s.is_zero()) r.skolems[id] = s;
    }
    return r;
  }

  const SEnv& require_concrete(const char* what) const {
    if (!is_concrete())
      throw SoloError(Code::kEnvEscape,
                      std::string(what) + " needs a concrete sensitivity environment, got " + str());
    return concrete;
  }

  std::string str() const {
    if (is_concrete()) return concrete.str();
    std::string out = "[";
    bool first = true;
    for (const auto& [o, v] : concrete) {
      if (!first) out += ", ";
      first = false;
      out += o + ":" + v.str();
    }
    for (const auto& [id, c] : skolems) {
      if (!first) out += ", ";
      first = false;
      out += "?" + std::to_string(id) + ":" + c.str();
    }
    return out + "]";
  }
};

// A privacy environment of any variant. The empty environment compares equal
// across variants: a computation that spends nothing is not committed to a
// composition rule yet.
struct PrivAny {
  Variant variant = Variant::kEps;
  PEnv<EpsCost> eps;
  PEnv<EDCost> ed;
  PEnv<RDPCost> rdp;

  static PrivAny of(PEnv<EpsCost> p) {
    PrivAny a;
    a.variant = Variant::kEps;
    a.eps = std::move(p);
    return a;
  }
  static PrivAny of_ed(PEnv<EDCost> p) {
    PrivAny a;
    a.variant = Variant::kED;
    a.ed = std::move(p);
    return a;
  }
  static PrivAny of_rdp(PEnv<RDPCost> p) {
    PrivAny a;
    a.variant = Variant::kRDP;
    a.rdp = std::move(p);
    return a;
  }

  bool empty() const {
    switch (variant) {
      case Variant::kEps: return eps.empty();
      case Variant::kED: return ed.empty();
      case Variant::kRDP: return rdp.empty();
    }
    return true;
  }

  friend bool operator==(const PrivAny& a, const PrivAny& b) {
    if (a.empty() && b.empty()) return true;
    if (a.variant != b.variant) return false;
    switch (a.variant) {
      case Variant::kEps: return a.eps == b.eps;
      case Variant::kED: return a.ed == b.ed;
      case Variant::kRDP: return a.rdp == b.rdp;
    }
    return false;
  }
  friend bool operator!=(const PrivAny& a, const PrivAny& b) { return !(a == b); }

  // Sequential composition; a variant mismatch is only legal through an
  // empty side.
  static PrivAny seq_comp(const PrivAny& a, const PrivAny& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.variant != b.variant)
      throw SoloError(Code::kTypeMismatch,
                      std::string("cannot sequence ") + variant_name(a.variant) +
                          " with " + variant_name(b.variant) +
                          "; convert explicitly with conv_* primitives");
    switch (a.variant) {
      case Variant::kEps: return of(eps_seq_comp(a.eps, b.eps));
      case Variant::kED: return of_ed(ed_seq_comp(a.ed, b.ed));
      case Variant::kRDP: return of_rdp(rdp_seq_comp(a.rdp, b.rdp));
    }
    return a;
  }

  PrivAny scaled(std::uint64_t k) const {
    switch (variant) {
      case Variant::kEps: return of(scale_priv(k, eps));
      case Variant::kED: return of_ed(scale_priv(k, ed));
      case Variant::kRDP: return of_rdp(scale_priv(k, rdp));
    }
    return *this;
  }

  std::string str() const {
    switch (variant) {
      case Variant::kEps: return eps.str();
      case Variant::kED: return ed.str();
      case Variant::kRDP: return rdp.str();
    }
    return "[]";
  }
};

struct EnvTerm;
using EnvTermPtr = std::shared_ptr<const EnvTerm>;
struct PrivTerm;
using PrivTermPtr = std::shared_ptr<const PrivTerm>;
struct SType;
using STypePtr = std::shared_ptr<const SType>;
struct Type;
using TypePtr = std::shared_ptr<const Type>;
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Environment expression in a written type. Outside def signatures the only
// forms are kLit (a literal environment) and kWild (the `_` placeholder that
// map-style arguments use for their abstract environment).
struct EnvTerm {
  enum class K { kLit, kVar, kPlus, kScale, kJoin, kWild };
  K k = K::kLit;
  SymEnv lit;
  std::string var;
  std::uint64_t factor = 0;
  EnvTermPtr a, b;

  static EnvTermPtr of(SymEnv e) {
    auto t = std::make_shared<EnvTerm>();
    t->k = K::kLit;
    t->lit = std::move(e);
    return t;
  }
  static EnvTermPtr wild() {
    auto t = std::make_shared<EnvTerm>();
    t->k = K::kWild;
    return t;
  }
  static EnvTermPtr mkvar(std::string name) {
    auto t = std::make_shared<EnvTerm>();
    t->k = K::kVar;
    t->var = std::move(name);
    return t;
  }
  static EnvTermPtr plus(EnvTermPtr x, EnvTermPtr y) {
    auto t = std::make_shared<EnvTerm>();
    t->k = K::kPlus;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
  }
  static EnvTermPtr scale(std::uint64_t f, EnvTermPtr x) {
    auto t = std::make_shared<EnvTerm>();
    t->k = K::kScale;
    t->factor = f;
    t->a = std::move(x);
    return t;
  }
  static EnvTermPtr join(EnvTermPtr x, EnvTermPtr y) {
    auto t = std::make_shared<EnvTerm>();
    t->k = K::kJoin;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
  }
};

// Privacy-environment expression in a written type.
struct PrivTerm {
  enum class K { kLit, kTrunc, kTruncED, kPlus, kScale, kToInf };
  K k = K::kLit;
  PrivAny lit;
  Rat eps;
  Rat delta;
  std::uint64_t factor = 0;
  EnvTermPtr env;
  PrivTermPtr a, b;

  static PrivTermPtr of(PrivAny p) {
    auto t = std::make_shared<PrivTerm>();
    t->k = K::kLit;
    t->lit = std::move(p);
    return t;
  }
  static PrivTermPtr trunc(Rat e, EnvTermPtr env) {
    auto t = std::make_shared<PrivTerm>();
    t->k = K::kTrunc;
    t->eps = e;
    t->env = std::move(env);
    return t;
  }
  static PrivTermPtr trunc_ed(Rat e, Rat d, EnvTermPtr env) {
    auto t = std::make_shared<PrivTerm>();
    t->k = K::kTruncED;
    t->eps = e;
    t->delta = d;
    t->env = std::move(env);
    return t;
  }
  static PrivTermPtr plus(PrivTermPtr x, PrivTermPtr y) {
    auto t = std::make_shared<PrivTerm>();
    t->k = K::kPlus;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
  }
  static PrivTermPtr scale(std::uint64_t f, PrivTermPtr x) {
    auto t = std::make_shared<PrivTerm>();
    t->k = K::kScale;
    t->factor = f;
    t->a = std::move(x);
    return t;
  }
  static PrivTermPtr toinf(EnvTermPtr env) {
    auto t = std::make_shared<PrivTerm>();
    t->k = K::kToInf;
    t->env = std::move(env);
    return t;
  }
};

// Sensitive type skeleton. Environments never occur inside a sensitive type;
// they attach only at the outermost Sensitive layer.
struct SType {
  enum class K { kSReal, kSProd, kSList, kSSet, kSMatrix, kSDict };
  K k = K::kSReal;
  NMetric nmetric = NMetric::kDiff;  // kSReal
  CMetric cmetric = CMetric::kL1;    // compound forms
  STypePtr a, b;                     // element / key-value
  TypePtr elem;                      // kSSet element (a plain type)
  std::uint64_t rows = 0, cols = 0;  // kSMatrix

  static STypePtr sreal(NMetric m) {
    auto s = std::make_shared<SType>();
    s->k = K::kSReal;
    s->nmetric = m;
    return s;
  }
  static STypePtr sprod(CMetric m, STypePtr x, STypePtr y) {
    auto s = std::make_shared<SType>();
    s->k = K::kSProd;
    s->cmetric = m;
    s->a = std::move(x);
    s->b = std::move(y);
    return s;
  }
  static STypePtr slist(CMetric m, STypePtr x) {
    auto s = std::make_shared<SType>();
    s->k = K::kSList;
    s->cmetric = m;
    s->a = std::move(x);
    return s;
  }
  static STypePtr sset(TypePtr e) {
    auto s = std::make_shared<SType>();
    s->k = K::kSSet;
    s->elem = std::move(e);
    return s;
  }
  static STypePtr smatrix(CMetric m, std::uint64_t r, std::uint64_t c, STypePtr x) {
    auto s = std::make_shared<SType>();
    s->k = K::kSMatrix;
    s->cmetric = m;
    s->rows = r;
    s->cols = c;
    s->a = std::move(x);
    return s;
  }
  static STypePtr sdict(CMetric m, STypePtr key, STypePtr val) {
    auto s = std::make_shared<SType>();
    s->k = K::kSDict;
    s->cmetric = m;
    s->a = std::move(key);
    s->b = std::move(val);
    return s;
  }
};

struct Type {
  enum class K { kBool, kReal, kRealSing, kFun, kProd, kList, kPM, kSensitive };
  K k = K::kReal;
  Rat sing;                         // kRealSing
  TypePtr a, b;                     // kFun(a->b), kProd(a,b), kList(a)
  Variant variant = Variant::kEps;  // kPM
  PrivTermPtr penv;                 // kPM
  TypePtr inner;                    // kPM payload
  STypePtr stype;                   // kSensitive
  EnvTermPtr env;                   // kSensitive

  static TypePtr boolean() { return leaf(K::kBool); }
  static TypePtr real() { return leaf(K::kReal); }
  static TypePtr real_sing(Rat r) {
    auto t = std::make_shared<Type>();
    t->k = K::kRealSing;
    t->sing = r;
    return t;
  }
  static TypePtr fun(TypePtr d, TypePtr c) {
    auto t = std::make_shared<Type>();
    t->k = K::kFun;
    t->a = std::move(d);
    t->b = std::move(c);
    return t;
  }
  static TypePtr prod(TypePtr x, TypePtr y) {
    auto t = std::make_shared<Type>();
    t->k = K::kProd;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
  }
  static TypePtr list(TypePtr x) {
    auto t = std::make_shared<Type>();
    t->k = K::kList;
    t->a = std::move(x);
    return t;
  }
  static TypePtr pm(Variant v, PrivTermPtr p, TypePtr in) {
    auto t = std::make_shared<Type>();
    t->k = K::kPM;
    t->variant = v;
    t->penv = std::move(p);
    t->inner = std::move(in);
    return t;
  }
  static TypePtr pm_lit(Variant v, PrivAny p, TypePtr in) {
    return pm(v, PrivTerm::of(std::move(p)), std::move(in));
  }
  static TypePtr sensitive(STypePtr s, EnvTermPtr e) {
    auto t = std::make_shared<Type>();
    t->k = K::kSensitive;
    t->stype = std::move(s);
    t->env = std::move(e);
    return t;
  }
  static TypePtr sensitive_lit(STypePtr s, SymEnv e) {
    return sensitive(std::move(s), EnvTerm::of(std::move(e)));
  }

 private:
  static TypePtr leaf(K k) {
    auto t = std::make_shared<Type>();
    t->k = k;
    return t;
  }
};

// --- structural equality ----------------------------------------------------

inline bool stype_equal(const STypePtr& a, const STypePtr& b);
inline bool type_equal(const TypePtr& a, const TypePtr& b);

inline bool envterm_equal(const EnvTermPtr& a, const EnvTermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->k != b->k) return false;
  switch (a->k) {
    case EnvTerm::K::kLit: return a->lit == b->lit;
    case EnvTerm::K::kWild: return true;
    case EnvTerm::K::kVar: return a->var == b->var;
    case EnvTerm::K::kScale:
      return a->factor == b->factor && envterm_equal(a->a, b->a);
    default: return envterm_equal(a->a, b->a) && envterm_equal(a->b, b->b);
  }
}

inline bool privterm_equal(const PrivTermPtr& a, const PrivTermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->k != b->k) return false;
  switch (a->k) {
    case PrivTerm::K::kLit: return a->lit == b->lit;
    case PrivTerm::K::kTrunc: return a->eps == b->eps && envterm_equal(a->env, b->env);
    case PrivTerm::K::kTruncED:
      return a->eps == b->eps && a->delta == b->delta && envterm_equal(a->env, b->env);
    case PrivTerm::K::kPlus: return privterm_equal(a->a, b->a) && privterm_equal(a->b, b->b);
    case PrivTerm::K::kScale: return a->factor == b->factor && privterm_equal(a->a, b->a);
    case PrivTerm::K::kToInf: return envterm_equal(a->env, b->env);
  }
  return false;
}

inline bool stype_equal(const STypePtr& a, const STypePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->k != b->k) return false;
  switch (a->k) {
    case SType::K::kSReal: return a->nmetric == b->nmetric;
    case SType::K::kSProd:
      return a->cmetric == b->cmetric && stype_equal(a->a, b->a) && stype_equal(a->b, b->b);
    case SType::K::kSList: return a->cmetric == b->cmetric && stype_equal(a->a, b->a);
    case SType::K::kSSet: return type_equal(a->elem, b->elem);
    case SType::K::kSMatrix:
      return a->cmetric == b->cmetric && a->rows == b->rows && a->cols == b->cols &&
             stype_equal(a->a, b->a);
    case SType::K::kSDict:
      return a->cmetric == b->cmetric && stype_equal(a->a, b->a) && stype_equal(a->b, b->b);
  }
  return false;
}

inline bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->k != b->k) return false;
  switch (a->k) {
    case Type::K::kBool:
    case Type::K::kReal: return true;
    case Type::K::kRealSing: return a->sing == b->sing;
    case Type::K::kFun:
    case Type::K::kProd: return type_equal(a->a, b->a) && type_equal(a->b, b->b);
    case Type::K::kList: return type_equal(a->a, b->a);
    case Type::K::kPM: {
      if (!type_equal(a->inner, b->inner)) return false;
      // An empty privacy environment is variant-agnostic.
      if (a->penv->k == PrivTerm::K::kLit && b->penv->k == PrivTerm::K::kLit)
        return a->penv->lit == b->penv->lit;
      return a->variant == b->variant && privterm_equal(a->penv, b->penv);
    }
    case Type::K::kSensitive:
      return stype_equal(a->stype, b->stype) && envterm_equal(a->env, b->env);
  }
  return false;
}

// R(sigma): the plain twin of a sensitive type, as produced by reveal.
inline TypePtr plain_of_stype(const STypePtr& s) {
  switch (s->k) {
    case SType::K::kSReal: return Type::real();
    case SType::K::kSProd: return Type::prod(plain_of_stype(s->a), plain_of_stype(s->b));
    case SType::K::kSList: return Type::list(plain_of_stype(s->a));
    case SType::K::kSSet: return Type::list(s->elem);
    case SType::K::kSMatrix: return Type::list(Type::list(plain_of_stype(s->a)));
    case SType::K::kSDict:
      return Type::list(Type::prod(plain_of_stype(s->a), plain_of_stype(s->b)));
  }
  return Type::real();
}

// Erases every environment annotation; used to tell an environment-level
// branch disagreement apart from a structural one.
inline TypePtr erase_envs(const TypePtr& t) {
  switch (t->k) {
    case Type::K::kBool:
    case Type::K::kReal:
    case Type::K::kRealSing: return t;
    case Type::K::kFun: return Type::fun(erase_envs(t->a), erase_envs(t->b));
    case Type::K::kProd: return Type::prod(erase_envs(t->a), erase_envs(t->b));
    case Type::K::kList: return Type::list(erase_envs(t->a));
    case Type::K::kPM: return Type::pm_lit(Variant::kEps, PrivAny(), erase_envs(t->inner));
    case Type::K::kSensitive: return plain_of_stype(t->stype);
  }
  return t;
}

// --- expressions ------------------------------------------------------------

enum class BinK { kPlus, kTimes, kLTimes };

inline const char* bin_name(BinK b) {
  switch (b) {
    case BinK::kPlus: return "<+>";
    case BinK::kTimes: return "<*>";
    case BinK::kLTimes: return "ltimes";
  }
  return "?";
}

struct Expr {
  enum class K {
    kVar,
    kBoolLit,
    kRealLit,
    kSing,
    kBinOp,
    kIf,
    kPair,
    kProj,
    kSPair,
    kSProj,
    kNil,
    kCons,
    kCase,
    kSNil,
    kSCons,
    kSCase,
    kLam,
    kApp,
    kLet,
    kReveal,
    kLaplace,
    kReturn,
    kBind,
    kPrimCall,
  };

  K k;
  SourcePos pos;
  int id = 0;  // stable node id assigned by the parser

  std::string name;   // Var; binder of Bind/Let; Lam self; Case head binder; PrimCall name
  std::string name2;  // Lam param; Case tail binder
  bool bval = false;
  Rat rat;                       // kRealLit, kSing
  BinK op = BinK::kPlus;         // kBinOp
  int proj = 1;                  // kProj/kSProj: 1 or 2
  CMetric cmetric = CMetric::kL1;  // kSPair, kSNil
  bool sensitive_case = false;   // kCase vs kSCase share parsing helpers
  TypePtr type;                  // Lam param annotation; Nil element type
  TypePtr type2;                 // Lam result annotation (required when recursive)
  STypePtr stype;                // kSNil element
  std::vector<ExprPtr> kids;
  std::vector<ExprPtr> statics;  // kPrimCall bracket arguments
};

using ExprBuilder = std::shared_ptr<Expr>;

// Program-level declarations.
struct SourceDecl {
  SourceName name;
  STypePtr stype;
  SourcePos pos;
};

struct DefDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> env_vars;  // prenex `forall` environment variables
  TypePtr signature;
  ExprPtr body;
  SourcePos pos;
};

struct Program {
  std::vector<SourceDecl> sources;
  std::vector<DefDecl> defs;
  ExprPtr main;
  int node_count = 0;
};

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->k != b->k) return false;
  if (a->name != b->name || a->name2 != b->name2) return false;
  if (a->bval != b->bval || a->rat != b->rat || a->op != b->op || a->proj != b->proj)
    return false;
  if (a->cmetric != b->cmetric || a->sensitive_case != b->sensitive_case) return false;
  if ((a->type == nullptr) != (b->type == nullptr)) return false;
  if (a->type && !type_equal(a->type, b->type)) return false;
  if ((a->type2 == nullptr) != (b->type2 == nullptr)) return false;
  if (a->type2 && !type_equal(a->type2, b->type2)) return false;
  if ((a->stype == nullptr) != (b->stype == nullptr)) return false;
  if (a->stype && !stype_equal(a->stype, b->stype)) return false;
  if (a->kids.size() != b->kids.size() || a->statics.size() != b->statics.size())
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  for (std::size_t i = 0; i < a->statics.size(); ++i)
    if (!expr_equal(a->statics[i], b->statics[i])) return false;
  return true;
}

inline bool program_equal(const Program& a, const Program& b) {
  if (a.sources.size() != b.sources.size() || a.defs.size() != b.defs.size()) return false;
  for (std::size_t i = 0; i < a.sources.size(); ++i) {
    if (a.sources[i].name != b.sources[i].name) return false;
    if (!stype_equal(a.sources[i].stype, b.sources[i].stype)) return false;
  }
  for (std::size_t i = 0; i < a.defs.size(); ++i) {
    const DefDecl& x = a.defs[i];
    const DefDecl& y = b.defs[i];
    if (x.name != y.name || x.params != y.params || x.env_vars != y.env_vars) return false;
    if (!type_equal(x.signature, y.signature)) return false;
    if (!expr_equal(x.body, y.body)) return false;
  }
  return expr_equal(a.main, b.main);
}

// Names of the trusted primitives. The parser reserves these, and the
// typechecker's registry provides a signature for each; calling anything
// else is an unbound-variable error, never a silent fallback.
inline const std::set<std::string>& primitive_names() {
  static const std::set<std::string> kNames = {
      "clip",       "sum",        "map",         "lmap",       "zip",
      "nth",        "divd",       "lt",          "listlaplace", "gauss",
      "listgauss",  "mlaplace",   "mclip",       "xgradient",  "msub",
      "mzeros",     "advloop",    "mloop",       "mloopi",     "expmech",
      "expnloop",   "conv_eps_to_ed", "conv_eps_to_rdp", "conv_rdp_to_ed",
      "assign",     "ppartition", "totx",        "toty",       "ssize",
      "bag_count_below",
  };
  return kNames;
}

}  // namespace solo

#endif  // SOLO_AST_HPP
