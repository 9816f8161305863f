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
// Recursive-descent parser for `.solo` sources. The grammar is documented in
// docs/grammar.ebnf; parsing is deterministic with at most two tokens of
// lookahead, and every AST node carries its source position.
#ifndef SOLO_PARSER_HPP
#define SOLO_PARSER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solo/ast.hpp"

namespace solo {

namespace parse_detail {

enum class Tok {
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kLBrace,
  kRBrace,
  kComma,
  kSemi,
  kColon,
  kEq,
  kDot,
  kPlus,
  kStar,
  kSlash,
  kUnderscore,
  kArrow,      // ->
  kFatArrow,   // =>
  kBindArrow,  // <-
  kOpPlus,     // <+>
  kOpTimes,    // <*>
  kEOF,
};

struct Token {
  Tok t;
  std::string text;
  Rat num;
  SourcePos pos;
};

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_';
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto pos = [&]() { return SourcePos{line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos p = pos();
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      out.push_back({Tok::kIdent, src.substr(i, j - i), Rat(), p});
      advance(j - i);
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j < src.size() && src[j] == '.' && j + 1 < src.size() && is_digit(src[j + 1])) {
        ++j;
        while (j < src.size() && is_digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          j = k;
          while (j < src.size() && is_digit(src[j])) ++j;
        }
      }
      std::string text = src.substr(i, j - i);
      std::optional<Rat> r;
      try {
        r = Rat::parse_decimal(text);
      } catch (const SoloError&) {
        throw ParseError("numeric literal '" + text + "' is out of range", p);
      }
      if (!r) throw ParseError("malformed numeric literal '" + text + "'", p);
      out.push_back({Tok::kNumber, text, *r, p});
      advance(j - i);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('-', '>')) {
      out.push_back({Tok::kArrow, "->", Rat(), p});
      advance(2);
      continue;
    }
    if (two('=', '>')) {
      out.push_back({Tok::kFatArrow, "=>", Rat(), p});
      advance(2);
      continue;
    }
    if (c == '<') {
      if (i + 2 < src.size() && src[i + 1] == '+' && src[i + 2] == '>') {
        out.push_back({Tok::kOpPlus, "<+>", Rat(), p});
        advance(3);
        continue;
      }
      if (i + 2 < src.size() && src[i + 1] == '*' && src[i + 2] == '>') {
        out.push_back({Tok::kOpTimes, "<*>", Rat(), p});
        advance(3);
        continue;
      }
      if (i + 1 < src.size() && src[i + 1] == '-') {
        out.push_back({Tok::kBindArrow, "<-", Rat(), p});
        advance(2);
        continue;
      }
      throw ParseError("stray '<'; expected '<+>', '<*>' or '<-'", p);
    }
    Tok t;
    switch (c) {
      case '(': t = Tok::kLParen; break;
      case ')': t = Tok::kRParen; break;
      case '[': t = Tok::kLBracket; break;
      case ']': t = Tok::kRBracket; break;
      case '{': t = Tok::kLBrace; break;
      case '}': t = Tok::kRBrace; break;
      case ',': t = Tok::kComma; break;
      case ';': t = Tok::kSemi; break;
      case ':': t = Tok::kColon; break;
      case '=': t = Tok::kEq; break;
      case '.': t = Tok::kDot; break;
      case '+': t = Tok::kPlus; break;
      case '*': t = Tok::kStar; break;
      case '/': t = Tok::kSlash; break;
      case '_': t = Tok::kUnderscore; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", p);
    }
    out.push_back({t, std::string(1, c), Rat(), p});
    advance(1);
  }
  out.push_back({Tok::kEOF, "<eof>", Rat(), pos()});
  return out;
}

inline const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "source", "def",    "main",   "forall", "let",   "in",     "fun",
      "if",     "case",   "nil",    "cons",   "snil",  "scons",  "pair",
      "spair",  "proj1",  "proj2",  "sproj1", "sproj2", "reveal", "laplace",
      "return", "sing",   "true",   "false",  "bool",  "real",   "list",
      "prod",   "sreal",  "slist",  "sset",   "smatrix", "sdict", "diff",
      "disc",   "L1",     "L2",     "LInf",   "EpsPM", "EDPM",   "RDPPM",
      "inf",    "trunc",  "trunced", "scale", "join",  "toinf",  "ltimes",
      "sqrt",   "ln",
  };
  return kw;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  Program program() {
    Program p;
    bool have_main = false;
    while (!at(Tok::kEOF)) {
      if (at_kw("source")) {
        next();
        SourceDecl d;
        d.pos = cur().pos;
        d.name = binder_name("source name");
        for (const SourceDecl& prev : p.sources)
          if (prev.name == d.name)
            throw ParseError("duplicate source '" + d.name + "'", d.pos);
        expect(Tok::kColon, "':'");
        d.stype = stype();
        expect(Tok::kSemi, "';'");
        p.sources.push_back(std::move(d));
      } else if (at_kw("def")) {
        next();
        DefDecl d;
        d.pos = cur().pos;
        d.name = binder_name("definition name");
        if (at(Tok::kLParen)) {
          next();
          while (true) {
            d.params.push_back(binder_name("parameter name"));
            if (at(Tok::kComma)) {
              next();
              continue;
            }
            break;
          }
          expect(Tok::kRParen, "')'");
        }
        expect(Tok::kColon, "':'");
        if (at_kw("forall")) {
          next();
          while (at(Tok::kIdent) && !keywords().count(cur().text))
            d.env_vars.push_back(binder_name("environment variable"));
          expect(Tok::kDot, "'.' after forall variables");
        }
        d.signature = type();
        expect(Tok::kEq, "'='");
        d.body = expr();
        expect(Tok::kSemi, "';'");
        p.defs.push_back(std::move(d));
      } else if (at_kw("main")) {
        next();
        expect(Tok::kEq, "'='");
        p.main = expr();
        expect(Tok::kSemi, "';'");
        have_main = true;
      } else {
        throw ParseError("expected 'source', 'def' or 'main', found '" + cur().text + "'",
                         cur().pos);
      }
    }
    if (!have_main) throw ParseError("program has no 'main' definition", cur().pos);
    p.node_count = next_id_;
    return p;
  }

  // Exposed for tests that parse fragments.
  TypePtr type() {
    TypePtr d = atom_type();
    if (at(Tok::kArrow)) {
      next();
      return Type::fun(d, type());
    }
    return d;
  }

  ExprPtr expr() {
    // x <- e1; e2
    if (at(Tok::kIdent) && !keywords().count(cur().text) && peek(1).t == Tok::kBindArrow) {
      auto e = node(Expr::K::kBind);
      e->name = binder_name("binder");
      next();  // <-
      e->kids.push_back(add_expr());
      expect(Tok::kSemi, "';'");
      e->kids.push_back(expr());
      return e;
    }
    if (at_kw("let")) {
      auto e = node(Expr::K::kLet);
      next();
      e->name = binder_name("binder");
      expect(Tok::kEq, "'='");
      e->kids.push_back(expr());
      expect_kw("in");
      e->kids.push_back(expr());
      return e;
    }
    if (at_kw("fun")) {
      auto e = node(Expr::K::kLam);
      next();
      if (at(Tok::kLBracket)) {
        next();
        e->name = binder_name("self name");
        expect(Tok::kRBracket, "']'");
      }
      expect(Tok::kLParen, "'('");
      e->name2 = binder_name("parameter name");
      expect(Tok::kColon, "':'");
      e->type = type();
      expect(Tok::kRParen, "')'");
      if (at(Tok::kColon)) {
        next();
        e->type2 = atom_type();
      }
      if (!e->name.empty() && !e->type2)
        throw ParseError("recursive 'fun[" + e->name + "]' needs a result type annotation",
                         e->pos);
      expect(Tok::kFatArrow, "'=>'");
      e->kids.push_back(expr());
      return e;
    }
    return add_expr();
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& peek(std::size_t n) const {
    return toks_[i_ + n < toks_.size() ? i_ + n : toks_.size() - 1];
  }
  bool at(Tok t) const { return cur().t == t; }
  bool at_kw(const char* k) const { return cur().t == Tok::kIdent && cur().text == k; }
  void next() { ++i_; }
  void expect(Tok t, const char* what) {
    if (!at(t))
      throw ParseError(std::string("expected ") + what + ", found '" + cur().text + "'",
                       cur().pos);
    next();
  }
  void expect_kw(const char* k) {
    if (!at_kw(k))
      throw ParseError(std::string("expected '") + k + "', found '" + cur().text + "'",
                       cur().pos);
    next();
  }

  std::string binder_name(const char* what) {
    if (!at(Tok::kIdent))
      throw ParseError(std::string("expected ") + what + ", found '" + cur().text + "'",
                       cur().pos);
    std::string n = cur().text;
    if (keywords().count(n) || primitive_names().count(n))
      throw ParseError("'" + n + "' is reserved and cannot be a " + what, cur().pos);
    next();
    return n;
  }

  ExprBuilder node(Expr::K k) {
    auto e = std::make_shared<Expr>();
    e->k = k;
    e->pos = cur().pos;
    e->id = next_id_++;
    return e;
  }

  Rat rat_lit() {
    if (!at(Tok::kNumber))
      throw ParseError("expected a numeric literal, found '" + cur().text + "'", cur().pos);
    Rat r = cur().num;
    next();
    if (at(Tok::kSlash)) {
      next();
      if (!at(Tok::kNumber) || !cur().num.is_integer())
        throw ParseError("expected an integer denominator", cur().pos);
      if (cur().num.is_zero()) throw ParseError("zero denominator", cur().pos);
      r = r / cur().num;
      next();
    }
    return r;
  }

  std::uint64_t nat_lit(const char* what) {
    if (!at(Tok::kNumber) || !cur().num.is_integer())
      throw ParseError(std::string("expected ") + what + ", found '" + cur().text + "'",
                       cur().pos);
    std::uint64_t v = cur().num.num();
    next();
    return v;
  }

  NMetric nmetric() {
    if (at_kw("diff")) {
      next();
      return NMetric::kDiff;
    }
    if (at_kw("disc")) {
      next();
      return NMetric::kDisc;
    }
    throw ParseError("expected 'diff' or 'disc', found '" + cur().text + "'", cur().pos);
  }

  CMetric cmetric() {
    if (at_kw("L1")) {
      next();
      return CMetric::kL1;
    }
    if (at_kw("L2")) {
      next();
      return CMetric::kL2;
    }
    if (at_kw("LInf")) {
      next();
      return CMetric::kLInf;
    }
    throw ParseError("expected 'L1', 'L2' or 'LInf', found '" + cur().text + "'", cur().pos);
  }

  // --- types ---------------------------------------------------------------

  STypePtr stype() {
    if (at_kw("sreal")) {
      next();
      return SType::sreal(nmetric());
    }
    if (at_kw("slist")) {
      next();
      CMetric m = cmetric();
      expect(Tok::kLParen, "'('");
      STypePtr e = stype();
      expect(Tok::kRParen, "')'");
      return SType::slist(m, e);
    }
    if (at_kw("spair")) {
      next();
      CMetric m = cmetric();
      expect(Tok::kLParen, "'('");
      STypePtr a = stype();
      expect(Tok::kComma, "','");
      STypePtr b = stype();
      expect(Tok::kRParen, "')'");
      return SType::sprod(m, a, b);
    }
    if (at_kw("sset")) {
      next();
      expect(Tok::kLParen, "'('");
      TypePtr e = type();
      expect(Tok::kRParen, "')'");
      return SType::sset(e);
    }
    if (at_kw("smatrix")) {
      next();
      CMetric m = cmetric();
      expect(Tok::kLBracket, "'['");
      std::uint64_t r = nat_lit("row count");
      expect(Tok::kComma, "','");
      std::uint64_t c = nat_lit("column count");
      expect(Tok::kRBracket, "']'");
      if (r == 0 || c == 0)
        throw ParseError("matrix dimensions must be positive", cur().pos);
      expect(Tok::kLParen, "'('");
      STypePtr e = stype();
      expect(Tok::kRParen, "')'");
      return SType::smatrix(m, r, c, e);
    }
    if (at_kw("sdict")) {
      next();
      CMetric m = cmetric();
      expect(Tok::kLParen, "'('");
      STypePtr k = stype();
      expect(Tok::kComma, "','");
      STypePtr v = stype();
      expect(Tok::kRParen, "')'");
      return SType::sdict(m, k, v);
    }
    throw ParseError("expected a sensitive type, found '" + cur().text + "'", cur().pos);
  }

  TypePtr atom_type() {
    if (at(Tok::kLParen)) {
      next();
      TypePtr t = type();
      expect(Tok::kRParen, "')'");
      return t;
    }
    if (at_kw("bool")) {
      next();
      return Type::boolean();
    }
    if (at_kw("real")) {
      next();
      if (at(Tok::kLBracket)) {
        next();
        Rat r = rat_lit();
        expect(Tok::kRBracket, "']'");
        return Type::real_sing(r);
      }
      return Type::real();
    }
    if (at_kw("list")) {
      next();
      expect(Tok::kLParen, "'('");
      TypePtr t = type();
      expect(Tok::kRParen, "')'");
      return Type::list(t);
    }
    if (at_kw("prod")) {
      next();
      expect(Tok::kLParen, "'('");
      TypePtr a = type();
      expect(Tok::kComma, "','");
      TypePtr b = type();
      expect(Tok::kRParen, "')'");
      return Type::prod(a, b);
    }
    if (at_kw("EpsPM") || at_kw("EDPM") || at_kw("RDPPM")) {
      Variant v = at_kw("EpsPM")   ? Variant::kEps
                  : at_kw("EDPM") ? Variant::kED
                                  : Variant::kRDP;
      next();
      PrivTermPtr p = privterm(v);
      TypePtr in = atom_type();
      return Type::pm(v, p, in);
    }
    STypePtr s = stype();
    EnvTermPtr e = envterm();
    return Type::sensitive(s, e);
  }

  // --- environment terms -----------------------------------------------------

  EnvTermPtr envterm() {
    EnvTermPtr t = envatom();
    while (at(Tok::kPlus)) {
      next();
      t = EnvTerm::plus(t, envatom());
    }
    return t;
  }

  EnvTermPtr envatom() {
    if (at(Tok::kUnderscore)) {
      next();
      return EnvTerm::wild();
    }
    if (at(Tok::kLParen)) {
      next();
      EnvTermPtr t = envterm();
      expect(Tok::kRParen, "')'");
      return t;
    }
    if (at(Tok::kNumber)) {
      std::uint64_t f = nat_lit("scale factor");
      expect(Tok::kStar, "'*'");
      return EnvTerm::scale(f, envatom());
    }
    if (at_kw("join")) {
      next();
      expect(Tok::kLParen, "'('");
      EnvTermPtr a = envterm();
      expect(Tok::kComma, "','");
      EnvTermPtr b = envterm();
      expect(Tok::kRParen, "')'");
      return EnvTerm::join(a, b);
    }
    if (at(Tok::kLBracket)) {
      next();
      SEnv env;
      if (!at(Tok::kRBracket)) {
        while (true) {
          if (!at(Tok::kIdent))
            throw ParseError("expected a source name, found '" + cur().text + "'", cur().pos);
          std::string name = cur().text;
          next();
          expect(Tok::kColon, "':'");
          Sens s;
          if (at_kw("inf")) {
            next();
            s = Sens::infinity();
          } else {
            s = Sens(nat_lit("sensitivity"));
          }
          env.set(name, s);
          if (at(Tok::kComma)) {
            next();
            continue;
          }
          break;
        }
      }
      expect(Tok::kRBracket, "']'");
      return EnvTerm::of(SymEnv::of(env));
    }
    if (at(Tok::kIdent) && !keywords().count(cur().text)) {
      std::string v = cur().text;
      next();
      return EnvTerm::mkvar(v);
    }
    throw ParseError("expected an environment, found '" + cur().text + "'", cur().pos);
  }

  // --- privacy terms ---------------------------------------------------------

  PrivTermPtr privterm(Variant v) {
    PrivTermPtr t = privatom(v);
    while (at(Tok::kPlus)) {
      next();
      t = PrivTerm::plus(t, privatom(v));
    }
    return t;
  }

  PrivTermPtr privatom(Variant v) {
    if (at(Tok::kLParen)) {
      next();
      PrivTermPtr t = privterm(v);
      expect(Tok::kRParen, "')'");
      return t;
    }
    if (at_kw("trunc")) {
      next();
      expect(Tok::kLBracket, "'['");
      Rat e = rat_lit();
      expect(Tok::kRBracket, "']'");
      expect(Tok::kLParen, "'('");
      EnvTermPtr env = envterm();
      expect(Tok::kRParen, "')'");
      return PrivTerm::trunc(e, env);
    }
    if (at_kw("trunced")) {
      next();
      expect(Tok::kLBracket, "'['");
      Rat e = rat_lit();
      expect(Tok::kComma, "','");
      Rat d = rat_lit();
      expect(Tok::kRBracket, "']'");
      expect(Tok::kLParen, "'('");
      EnvTermPtr env = envterm();
      expect(Tok::kRParen, "')'");
      return PrivTerm::trunc_ed(e, d, env);
    }
    if (at_kw("scale")) {
      next();
      expect(Tok::kLBracket, "'['");
      std::uint64_t f = nat_lit("scale factor");
      expect(Tok::kRBracket, "']'");
      expect(Tok::kLParen, "'('");
      PrivTermPtr t = privterm(v);
      expect(Tok::kRParen, "')'");
      return PrivTerm::scale(f, t);
    }
    if (at_kw("toinf")) {
      next();
      expect(Tok::kLParen, "'('");
      EnvTermPtr env = envterm();
      expect(Tok::kRParen, "')'");
      return PrivTerm::toinf(env);
    }
    if (at(Tok::kLBracket)) {
      next();
      PrivAny p;
      p.variant = v;
      if (!at(Tok::kRBracket)) {
        while (true) {
          if (!at(Tok::kIdent))
            throw ParseError("expected a source name, found '" + cur().text + "'", cur().pos);
          std::string name = cur().text;
          next();
          expect(Tok::kColon, "':'");
          parse_cost_into(p, name);
          if (at(Tok::kComma)) {
            next();
            continue;
          }
          break;
        }
      }
      expect(Tok::kRBracket, "']'");
      return PrivTerm::of(p);
    }
    throw ParseError("expected a privacy environment, found '" + cur().text + "'",
                     cur().pos);
  }

  void parse_cost_into(PrivAny& p, const std::string& name) {
    switch (p.variant) {
      case Variant::kEps: {
        if (at_kw("inf")) {
          next();
          p.eps.set(name, EpsCost::infinity());
        } else {
          p.eps.set(name, EpsCost(rat_lit()));
        }
        return;
      }
      case Variant::kED: {
        if (at_kw("inf")) {
          next();
          p.ed.set(name, EDCost::infinity());
          return;
        }
        expect(Tok::kLParen, "'('");
        RealExpr e = rexpr();
        expect(Tok::kComma, "','");
        RealExpr d = rexpr();
        expect(Tok::kRParen, "')'");
        p.ed.set(name, EDCost(e, d));
        return;
      }
      case Variant::kRDP: {
        if (at_kw("inf")) {
          next();
          p.rdp.set(name, RDPCost::infinity());
          return;
        }
        expect(Tok::kLParen, "'('");
        Rat alpha = rat_lit();
        expect(Tok::kComma, "','");
        RealExpr e = rexpr();
        expect(Tok::kRParen, "')'");
        p.rdp.set(name, RDPCost(alpha, e));
        return;
      }
    }
  }

  // --- symbolic real expressions (privacy-cost components) -------------------

  RealExpr rexpr() {
    RealExpr t = rterm();
    while (at(Tok::kPlus)) {
      next();
      t = RealExpr::add(t, rterm());
    }
    return t;
  }

  RealExpr rterm() {
    RealExpr t = ratom();
    while (at(Tok::kStar) || at(Tok::kSlash)) {
      bool mul = at(Tok::kStar);
      next();
      RealExpr r = ratom();
      if (mul) {
        t = RealExpr::mul(t, r);
      } else if (t.kind() == RealExpr::Kind::kLit && r.kind() == RealExpr::Kind::kLit) {
        // `n/d` over literals denotes the exact rational.
        if (r.lit_value().is_zero()) throw ParseError("zero denominator", cur().pos);
        t = RealExpr::lit(t.lit_value() / r.lit_value());
      } else {
        t = RealExpr::div(t, r);
      }
    }
    return t;
  }

  RealExpr ratom() {
    if (at(Tok::kNumber)) {
      Rat r = cur().num;
      next();
      return RealExpr::lit(r);
    }
    if (at_kw("inf")) {
      next();
      return RealExpr::inf();
    }
    if (at_kw("sqrt") || at_kw("ln")) {
      bool s = at_kw("sqrt");
      next();
      expect(Tok::kLParen, "'('");
      RealExpr e = rexpr();
      expect(Tok::kRParen, "')'");
      return s ? RealExpr::sqrt(e) : RealExpr::ln(e);
    }
    if (at(Tok::kLParen)) {
      next();
      RealExpr e = rexpr();
      expect(Tok::kRParen, "')'");
      return e;
    }
    throw ParseError("expected a real expression, found '" + cur().text + "'", cur().pos);
  }

  // --- expressions ------------------------------------------------------------

  ExprPtr add_expr() {
    ExprPtr t = mul_expr();
    while (at(Tok::kOpPlus)) {
      auto e = node(Expr::K::kBinOp);
      e->op = BinK::kPlus;
      next();
      e->kids = {t, mul_expr()};
      t = e;
    }
    return t;
  }

  ExprPtr mul_expr() {
    ExprPtr t = postfix_expr();
    while (at(Tok::kOpTimes) || at_kw("ltimes")) {
      auto e = node(Expr::K::kBinOp);
      e->op = at(Tok::kOpTimes) ? BinK::kTimes : BinK::kLTimes;
      next();
      e->kids = {t, postfix_expr()};
      t = e;
    }
    return t;
  }

  ExprPtr postfix_expr() {
    ExprPtr t = atom_expr();
    while (at(Tok::kLParen)) {
      auto e = node(Expr::K::kApp);
      next();
      std::vector<ExprPtr> args;
      if (!at(Tok::kRParen)) {
        while (true) {
          args.push_back(expr());
          if (at(Tok::kComma)) {
            next();
            continue;
          }
          break;
        }
      }
      expect(Tok::kRParen, "')'");
      if (args.empty())
        throw ParseError("application needs at least one argument", e->pos);
      // f(a, b) curries to f(a)(b).
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i == 0) {
          e->kids = {t, args[0]};
          t = e;
        } else {
          auto e2 = node(Expr::K::kApp);
          e2->kids = {t, args[i]};
          t = e2;
        }
      }
    }
    return t;
  }

  std::vector<ExprPtr> paren_args() {
    expect(Tok::kLParen, "'('");
    std::vector<ExprPtr> args;
    if (!at(Tok::kRParen)) {
      while (true) {
        args.push_back(expr());
        if (at(Tok::kComma)) {
          next();
          continue;
        }
        break;
      }
    }
    expect(Tok::kRParen, "')'");
    return args;
  }

  ExprPtr unary_kw(Expr::K k, const char* kw) {
    auto e = node(k);
    next();
    expect(Tok::kLParen, "'('");
    e->kids.push_back(expr());
    expect(Tok::kRParen, "')'");
    (void)kw;
    return e;
  }

  ExprPtr atom_expr() {
    if (at(Tok::kNumber)) {
      auto e = node(Expr::K::kRealLit);
      e->rat = rat_lit();
      return e;
    }
    if (at(Tok::kLParen)) {
      next();
      ExprPtr e = expr();
      expect(Tok::kRParen, "')'");
      return e;
    }
    if (!at(Tok::kIdent))
      throw ParseError("expected an expression, found '" + cur().text + "'", cur().pos);

    const std::string& w = cur().text;
    if (w == "true" || w == "false") {
      auto e = node(Expr::K::kBoolLit);
      e->bval = w == "true";
      next();
      return e;
    }
    if (w == "sing") {
      auto e = node(Expr::K::kSing);
      next();
      expect(Tok::kLParen, "'('");
      e->rat = rat_lit();
      expect(Tok::kRParen, "')'");
      return e;
    }
    if (w == "if") {
      auto e = node(Expr::K::kIf);
      next();
      expect(Tok::kLParen, "'('");
      e->kids.push_back(expr());
      expect(Tok::kRParen, "')'");
      expect(Tok::kLBrace, "'{'");
      e->kids.push_back(expr());
      expect(Tok::kRBrace, "'}' (if-expressions require both branches)");
      expect(Tok::kLBrace, "'{' (if-expressions require both branches)");
      e->kids.push_back(expr());
      expect(Tok::kRBrace, "'}'");
      return e;
    }
    if (w == "pair" || w == "cons" || w == "scons") {
      Expr::K k = w == "pair" ? Expr::K::kPair
                  : w == "cons" ? Expr::K::kCons
                                : Expr::K::kSCons;
      auto e = node(k);
      next();
      expect(Tok::kLParen, "'('");
      e->kids.push_back(expr());
      expect(Tok::kComma, "','");
      e->kids.push_back(expr());
      expect(Tok::kRParen, "')'");
      return e;
    }
    if (w == "spair") {
      auto e = node(Expr::K::kSPair);
      next();
      expect(Tok::kLBracket, "'['");
      e->cmetric = cmetric();
      expect(Tok::kRBracket, "']'");
      expect(Tok::kLParen, "'('");
      e->kids.push_back(expr());
      expect(Tok::kComma, "','");
      e->kids.push_back(expr());
      expect(Tok::kRParen, "')'");
      return e;
    }
    if (w == "proj1" || w == "proj2" || w == "sproj1" || w == "sproj2") {
      auto e = node(w[0] == 's' ? Expr::K::kSProj : Expr::K::kProj);
      e->proj = w.back() == '1' ? 1 : 2;
      next();
      expect(Tok::kLParen, "'('");
      e->kids.push_back(expr());
      expect(Tok::kRParen, "')'");
      return e;
    }
    if (w == "nil") {
      auto e = node(Expr::K::kNil);
      next();
      expect(Tok::kLBracket, "'['");
      e->type = type();
      expect(Tok::kRBracket, "']'");
      return e;
    }
    if (w == "snil") {
      auto e = node(Expr::K::kSNil);
      next();
      expect(Tok::kLBracket, "'['");
      e->cmetric = cmetric();
      expect(Tok::kComma, "','");
      e->stype = stype();
      expect(Tok::kRBracket, "']'");
      return e;
    }
    if (w == "case") {
      auto e = node(Expr::K::kCase);
      next();
      expect(Tok::kLParen, "'('");
      e->kids.push_back(expr());
      expect(Tok::kRParen, "')'");
      expect(Tok::kLBrace, "'{'");
      bool sensitive;
      if (at_kw("nil")) {
        sensitive = false;
      } else if (at_kw("snil")) {
        sensitive = true;
      } else {
        throw ParseError("expected 'nil' or 'snil' pattern, found '" + cur().text + "'",
                         cur().pos);
      }
      next();
      e->k = sensitive ? Expr::K::kSCase : Expr::K::kCase;
      e->sensitive_case = sensitive;
      expect(Tok::kFatArrow, "'=>'");
      e->kids.push_back(expr());
      expect(Tok::kRBrace, "'}'");
      expect(Tok::kLBrace, "'{' (case-expressions require both alternatives)");
      expect_kw(sensitive ? "scons" : "cons");
      expect(Tok::kLParen, "'('");
      e->name = binder_name("head binder");
      expect(Tok::kComma, "','");
      e->name2 = binder_name("tail binder");
      if (e->name == e->name2)
        throw ParseError("case binders must be distinct names", e->pos);
      expect(Tok::kRParen, "')'");
      expect(Tok::kFatArrow, "'=>'");
      e->kids.push_back(expr());
      expect(Tok::kRBrace, "'}'");
      return e;
    }
    if (w == "reveal") return unary_kw(Expr::K::kReveal, "reveal");
    if (w == "return") return unary_kw(Expr::K::kReturn, "return");
    if (w == "laplace") {
      auto e = node(Expr::K::kLaplace);
      next();
      expect(Tok::kLBracket, "'['");
      e->kids.push_back(expr());
      expect(Tok::kComma, "','");
      e->kids.push_back(expr());
      expect(Tok::kRBracket, "']'");
      expect(Tok::kLParen, "'('");
      e->kids.push_back(expr());
      expect(Tok::kRParen, "')'");
      return e;
    }
    if (primitive_names().count(w)) {
      auto e = node(Expr::K::kPrimCall);
      e->name = w;
      next();
      if (at(Tok::kLBracket)) {
        next();
        if (!at(Tok::kRBracket)) {
          while (true) {
            e->statics.push_back(expr());
            if (at(Tok::kComma)) {
              next();
              continue;
            }
            break;
          }
        }
        expect(Tok::kRBracket, "']'");
      }
      e->kids = paren_args();
      return e;
    }
    if (keywords().count(w))
      throw ParseError("unexpected keyword '" + w + "' in expression", cur().pos);
    if (peek(1).t == Tok::kLBracket) {
      // Bracketed static arguments are only valid on known primitives.
      throw ParseError("unknown primitive '" + w + "'", cur().pos);
    }
    auto e = node(Expr::K::kVar);
    e->name = w;
    next();
    return e;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int next_id_ = 0;
};

}  // namespace parse_detail

// Parses a complete `.solo` program. Throws ParseError with a position and
// an expected-token description on malformed input.
inline Program parse_program(const std::string& text) {
  parse_detail::Parser p(text);
  return p.program();
}

}  // namespace solo

#endif  // SOLO_PARSER_HPP
