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
// Pretty-printer. parse(pretty(p)) is structurally equal to p for every
// well-formed program; the round-trip property test enforces this.
#ifndef SOLO_PRETTY_HPP
#define SOLO_PRETTY_HPP

#include <string>
#include <vector>

#include "solo/ast.hpp"

namespace solo {

inline std::string pretty_type(const TypePtr& t);
inline std::string pretty_stype(const STypePtr& s);
inline std::string pretty_expr(const ExprPtr& e);

namespace pretty_detail {

// level 0 = sum position, 1 = operand position.
inline std::string envterm(const EnvTermPtr& t, int level) {
  switch (t->k) {
    case EnvTerm::K::kLit: return t->lit.str();
    case EnvTerm::K::kWild: return "_";
    case EnvTerm::K::kVar: return t->var;
    case EnvTerm::K::kPlus: {
      std::string s = envterm(t->a, 0) + " + " + envterm(t->b, 1);
      return level >= 1 ? "(" + s + ")" : s;
    }
    case EnvTerm::K::kScale:
      return std::to_string(t->factor) + " * " + envterm(t->a, 1);
    case EnvTerm::K::kJoin:
      return "join(" + envterm(t->a, 0) + ", " + envterm(t->b, 0) + ")";
  }
  return "";
}

inline std::string privterm(const PrivTermPtr& t, int level) {
  switch (t->k) {
    case PrivTerm::K::kLit: return t->lit.str();
    case PrivTerm::K::kTrunc:
      return "trunc[" + t->eps.str() + "](" + envterm(t->env, 0) + ")";
    case PrivTerm::K::kTruncED:
      return "trunced[" + t->eps.str() + ", " + t->delta.str() + "](" +
             envterm(t->env, 0) + ")";
    case PrivTerm::K::kPlus: {
      std::string s = privterm(t->a, 0) + " + " + privterm(t->b, 1);
      return level >= 1 ? "(" + s + ")" : s;
    }
    case PrivTerm::K::kScale:
      return "scale[" + std::to_string(t->factor) + "](" + privterm(t->a, 1) + ")";
    case PrivTerm::K::kToInf: return "toinf(" + envterm(t->env, 0) + ")";
  }
  return "";
}

// level 0 = full type, 1 = atom (function domains, PM payloads).
inline std::string type(const TypePtr& t, int level) {
  switch (t->k) {
    case Type::K::kBool: return "bool";
    case Type::K::kReal: return "real";
    case Type::K::kRealSing: return "real[" + t->sing.str() + "]";
    case Type::K::kFun: {
      std::string s = type(t->a, 1) + " -> " + type(t->b, 0);
      return level >= 1 ? "(" + s + ")" : s;
    }
    case Type::K::kProd: return "prod(" + type(t->a, 0) + ", " + type(t->b, 0) + ")";
    case Type::K::kList: return "list(" + type(t->a, 0) + ")";
    case Type::K::kPM:
      return std::string(variant_name(t->variant)) + " " + privterm(t->penv, 1) + " " +
             type(t->inner, 1);
    case Type::K::kSensitive:
      return pretty_stype(t->stype) + " " + envterm(t->env, 1);
  }
  return "";
}

inline std::string stype(const STypePtr& s) {
  switch (s->k) {
    case SType::K::kSReal: return std::string("sreal ") + nmetric_name(s->nmetric);
    case SType::K::kSProd:
      return std::string("spair ") + cmetric_name(s->cmetric) + " (" + stype(s->a) +
             ", " + stype(s->b) + ")";
    case SType::K::kSList:
      return std::string("slist ") + cmetric_name(s->cmetric) + " (" + stype(s->a) + ")";
    case SType::K::kSSet: return "sset(" + type(s->elem, 0) + ")";
    case SType::K::kSMatrix:
      return std::string("smatrix ") + cmetric_name(s->cmetric) + " [" +
             std::to_string(s->rows) + ", " + std::to_string(s->cols) + "] (" +
             stype(s->a) + ")";
    case SType::K::kSDict:
      return std::string("sdict ") + cmetric_name(s->cmetric) + " (" + stype(s->a) +
             ", " + stype(s->b) + ")";
  }
  return "";
}

// Expression precedence: 0 = full (bind/let/fun), 1 = sum, 2 = product,
// 3 = application/atom.
inline std::string expr(const ExprPtr& e, int level) {
  auto wrap = [&](const std::string& s, int mine) {
    return level > mine ? "(" + s + ")" : s;
  };
  switch (e->k) {
    case Expr::K::kVar: return e->name;
    case Expr::K::kBoolLit: return e->bval ? "true" : "false";
    case Expr::K::kRealLit: return e->rat.str();
    case Expr::K::kSing: return "sing(" + e->rat.str() + ")";
    case Expr::K::kBinOp: {
      int mine = e->op == BinK::kPlus ? 1 : 2;
      std::string s = expr(e->kids[0], mine) + " " + bin_name(e->op) + " " +
                      expr(e->kids[1], mine + 1);
      return wrap(s, mine);
    }
    case Expr::K::kIf:
      return "if(" + expr(e->kids[0], 0) + ") { " + expr(e->kids[1], 0) + " } { " +
             expr(e->kids[2], 0) + " }";
    case Expr::K::kPair:
      return "pair(" + expr(e->kids[0], 0) + ", " + expr(e->kids[1], 0) + ")";
    case Expr::K::kProj:
      return (e->proj == 1 ? "proj1(" : "proj2(") + expr(e->kids[0], 0) + ")";
    case Expr::K::kSPair:
      return std::string("spair[") + cmetric_name(e->cmetric) + "](" +
             expr(e->kids[0], 0) + ", " + expr(e->kids[1], 0) + ")";
    case Expr::K::kSProj:
      return (e->proj == 1 ? "sproj1(" : "sproj2(") + expr(e->kids[0], 0) + ")";
    case Expr::K::kNil: return "nil[" + type(e->type, 0) + "]";
    case Expr::K::kCons:
      return "cons(" + expr(e->kids[0], 0) + ", " + expr(e->kids[1], 0) + ")";
    case Expr::K::kSNil:
      return std::string("snil[") + cmetric_name(e->cmetric) + ", " + stype(e->stype) + "]";
    case Expr::K::kSCons:
      return "scons(" + expr(e->kids[0], 0) + ", " + expr(e->kids[1], 0) + ")";
    case Expr::K::kCase:
    case Expr::K::kSCase: {
      bool s = e->k == Expr::K::kSCase;
      return std::string("case(") + expr(e->kids[0], 0) + ") { " +
             (s ? "snil" : "nil") + " => " + expr(e->kids[1], 0) + " } { " +
             (s ? "scons(" : "cons(") + e->name + ", " + e->name2 + ") => " +
             expr(e->kids[2], 0) + " }";
    }
    case Expr::K::kLam: {
      std::string s = "fun";
      if (!e->name.empty()) s += "[" + e->name + "]";
      std::string ann = e->type ? type(e->type, 0) : std::string("_");
      s += "(" + e->name2 + " : " + ann + ")";
      if (e->type2) s += " : " + type(e->type2, 1);
      s += " => " + expr(e->kids[0], 0);
      return wrap(s, 0);
    }
    case Expr::K::kApp: {
      // Collapse an application spine: App(App(f,a),b) prints as f(a)(b).
      std::vector<ExprPtr> args;
      ExprPtr cur = e;
      while (cur->k == Expr::K::kApp) {
        args.push_back(cur->kids[1]);
        cur = cur->kids[0];
      }
      std::string out = expr(cur, 3);
      for (auto it = args.rbegin(); it != args.rend(); ++it)
        out += "(" + expr(*it, 0) + ")";
      return wrap(out, 3);
    }
    case Expr::K::kLet: {
      std::string s =
          "let " + e->name + " = " + expr(e->kids[0], 0) + " in " + expr(e->kids[1], 0);
      return wrap(s, 0);
    }
    case Expr::K::kReveal: return "reveal(" + expr(e->kids[0], 0) + ")";
    case Expr::K::kLaplace:
      return "laplace[" + expr(e->kids[0], 0) + ", " + expr(e->kids[1], 0) + "](" +
             expr(e->kids[2], 0) + ")";
    case Expr::K::kReturn: return "return(" + expr(e->kids[0], 0) + ")";
    case Expr::K::kBind: {
      std::string s = e->name + " <- " + expr(e->kids[0], 1) + "; " + expr(e->kids[1], 0);
      return wrap(s, 0);
    }
    case Expr::K::kPrimCall: {
      std::string s = e->name;
      if (!e->statics.empty()) {
        s += "[";
        for (std::size_t i = 0; i < e->statics.size(); ++i) {
          if (i) s += ", ";
          s += expr(e->statics[i], 0);
        }
        s += "]";
      }
      s += "(";
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) s += ", ";
        s += expr(e->kids[i], 0);
      }
      s += ")";
      return s;
    }
  }
  return "";
}

}  // namespace pretty_detail

inline std::string pretty_stype(const STypePtr& s) { return pretty_detail::stype(s); }
inline std::string pretty_type(const TypePtr& t) { return pretty_detail::type(t, 0); }
inline std::string pretty_expr(const ExprPtr& e) { return pretty_detail::expr(e, 0); }

inline std::string pretty_program(const Program& p) {
  std::string out;
  for (const SourceDecl& s : p.sources)
    out += "source " + s.name + " : " + pretty_stype(s.stype) + ";\n";
  if (!p.sources.empty()) out += "\n";
  for (const DefDecl& d : p.defs) {
    out += "def " + d.name;
    if (!d.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < d.params.size(); ++i) {
        if (i) out += ", ";
        out += d.params[i];
      }
      out += ")";
    }
    out += " : ";
    if (!d.env_vars.empty()) {
      out += "forall";
      for (const std::string& v : d.env_vars) out += " " + v;
      out += ". ";
    }
    out += pretty_type(d.signature) + " =\n  " + pretty_expr(d.body) + ";\n\n";
  }
  out += "main = " + pretty_expr(p.main) + ";\n";
  return out;
}

}  // namespace solo

#endif  // SOLO_PRETTY_HPP
