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
// Symbolic nonnegative real expressions. Privacy costs for the (eps, delta)
// and Renyi variants are composed symbolically (sums, products, square roots
// and logarithms over exact rationals) and only evaluated to doubles at
// reporting and noise-calibration boundaries. Equality of expressions is
// structural after literal folding, never semantic.
#ifndef SOLO_REALEXPR_HPP
#define SOLO_REALEXPR_HPP

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "solo/diagnostics.hpp"
#include "solo/rational.hpp"

namespace solo {

class RealExpr {
 public:
  enum class Kind { kLit, kAdd, kMul, kDiv, kSqrt, kLn, kInf };

  static RealExpr lit(Rat r) { return RealExpr(std::make_shared<Node>(Node{Kind::kLit, r, nullptr, nullptr})); }
  static RealExpr inf() { return RealExpr(std::make_shared<Node>(Node{Kind::kInf, Rat(), nullptr, nullptr})); }

  // Constructors fold literal operands for + and *, and drop zero addends;
  // everything else stays structural so reports remain legible.
  static RealExpr add(const RealExpr& a, const RealExpr& b) {
    if (a.kind() == Kind::kLit && b.kind() == Kind::kLit)
      return lit(a.node_->lit + b.node_->lit);
    if (a.kind() == Kind::kLit && a.node_->lit.is_zero()) return b;
    if (b.kind() == Kind::kLit && b.node_->lit.is_zero()) return a;
    return binary(Kind::kAdd, a, b);
  }
  static RealExpr mul(const RealExpr& a, const RealExpr& b) {
    if (a.kind() == Kind::kLit && b.kind() == Kind::kLit)
      return lit(a.node_->lit * b.node_->lit);
    return binary(Kind::kMul, a, b);
  }
  static RealExpr div(const RealExpr& a, const RealExpr& b) {
    if (b.kind() == Kind::kLit && b.node_->lit.is_zero())
      throw SoloError(Code::kDivideByZero, "division by literal zero");
    return binary(Kind::kDiv, a, b);
  }
  static RealExpr sqrt(const RealExpr& a) { return unary(Kind::kSqrt, a); }
  static RealExpr ln(const RealExpr& a) { return unary(Kind::kLn, a); }

  Kind kind() const { return node_->kind; }
  const Rat& lit_value() const { return node_->lit; }
  const RealExpr left() const { return RealExpr(node_->a); }
  const RealExpr right() const { return RealExpr(node_->b); }

  // Deterministic double evaluation. Inf evaluates to +infinity.
  double eval() const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::kLit: return n.lit.to_double();
      case Kind::kInf: return std::numeric_limits<double>::infinity();
      case Kind::kAdd: return RealExpr(n.a).eval() + RealExpr(n.b).eval();
      case Kind::kMul: return RealExpr(n.a).eval() * RealExpr(n.b).eval();
      case Kind::kDiv: {
        double d = RealExpr(n.b).eval();
        if (d == 0.0) throw SoloError(Code::kDivideByZero, "division by zero in evaluation");
        return RealExpr(n.a).eval() / d;
      }
      case Kind::kSqrt: {
        double v = RealExpr(n.a).eval();
        if (v < 0) throw SoloError(Code::kDomain, "sqrt of negative value");
        return std::sqrt(v);
      }
      case Kind::kLn: {
        double v = RealExpr(n.a).eval();
        if (v < 0) throw SoloError(Code::kDomain, "ln of negative value");
        return std::log(v);
      }
    }
    throw SoloError(Code::kInternal, "unreachable");
  }

  // Structural equality after literal folding; NOT semantic equality.
  friend bool operator==(const RealExpr& a, const RealExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::kLit: return a.node_->lit == b.node_->lit;
      case Kind::kInf: return true;
      case Kind::kSqrt:
      case Kind::kLn: return a.left() == b.left();
      default: return a.left() == b.left() && a.right() == b.right();
    }
  }
  friend bool operator!=(const RealExpr& a, const RealExpr& b) { return !(a == b); }

  // Renders e.g. "2*(1/10)*sqrt(200*ln(100000))". Non-integer literals are
  // parenthesized inside products and quotients so the output re-parses
  // unambiguously; the grammar is documented in docs/grammar.ebnf.
  std::string str() const { return print(0); }

 private:
  struct Node {
    Kind kind;
    Rat lit;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  explicit RealExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static RealExpr binary(Kind k, const RealExpr& a, const RealExpr& b) {
    return RealExpr(std::make_shared<Node>(Node{k, Rat(), a.node_, b.node_}));
  }
  static RealExpr unary(Kind k, const RealExpr& a) {
    return RealExpr(std::make_shared<Node>(Node{k, Rat(), a.node_, nullptr}));
  }

  // level 0 = sum context, 1 = product context, 2 = atom context.
  std::string print(int level) const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::kLit: {
        std::string s = n.lit.str();
        if (!n.lit.is_integer() && level >= 1) return "(" + s + ")";
        return s;
      }
      case Kind::kInf: return "inf";
      case Kind::kAdd: {
        std::string s = RealExpr(n.a).print(0) + " + " + RealExpr(n.b).print(0);
        return level >= 1 ? "(" + s + ")" : s;
      }
      case Kind::kMul: {
        std::string s = RealExpr(n.a).print(1) + "*" + RealExpr(n.b).print(1);
        return level >= 2 ? "(" + s + ")" : s;
      }
      case Kind::kDiv: {
        std::string s = RealExpr(n.a).print(1) + "/" + RealExpr(n.b).print(2);
        return level >= 2 ? "(" + s + ")" : s;
      }
      case Kind::kSqrt: return "sqrt(" + RealExpr(n.a).print(0) + ")";
      case Kind::kLn: return "ln(" + RealExpr(n.a).print(0) + ")";
    }
    return "";
  }

  std::shared_ptr<const Node> node_;
};

// A privacy cost for (eps, delta)-differential privacy: a pair of symbolic
// nonnegative reals, or infinity.
class EDCost {
 public:
  EDCost() : inf_(false), eps_(RealExpr::lit(Rat(0))), delta_(RealExpr::lit(Rat(0))) {}
  EDCost(RealExpr eps, RealExpr delta) : inf_(false), eps_(eps), delta_(delta) {}
  static EDCost infinity() {
    EDCost c;
    c.inf_ = true;
    return c;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const {
    return !inf_ && eps_.kind() == RealExpr::Kind::kLit && eps_.lit_value().is_zero() &&
           delta_.kind() == RealExpr::Kind::kLit && delta_.lit_value().is_zero();
  }
  static EDCost zero() { return EDCost(); }

  const RealExpr& eps() const { return eps_; }
  const RealExpr& delta() const { return delta_; }

  friend bool operator==(const EDCost& a, const EDCost& b) {
    if (a.inf_ != b.inf_) return false;
    if (a.inf_) return true;
    return a.eps_ == b.eps_ && a.delta_ == b.delta_;
  }
  friend bool operator!=(const EDCost& a, const EDCost& b) { return !(a == b); }

  std::string str() const {
    if (inf_) return "inf";
    return "(" + eps_.str() + ", " + delta_.str() + ")";
  }

 private:
  bool inf_;
  RealExpr eps_;
  RealExpr delta_;
};

// A privacy cost for Renyi differential privacy at a fixed order alpha > 1.
class RDPCost {
 public:
  RDPCost() : inf_(false), alpha_(Rat(2)), eps_(RealExpr::lit(Rat(0))) {}
  RDPCost(Rat alpha, RealExpr eps) : inf_(false), alpha_(alpha), eps_(eps) {
    if (!(alpha > Rat(1)))
      throw SoloError(Code::kDomain, "RDP order alpha must be > 1");
  }
  static RDPCost infinity() {
    RDPCost c;
    c.inf_ = true;
    return c;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const {
    return !inf_ && eps_.kind() == RealExpr::Kind::kLit && eps_.lit_value().is_zero();
  }
  static RDPCost zero() { return RDPCost(); }

  const Rat& alpha() const { return alpha_; }
  const RealExpr& eps() const { return eps_; }

  friend bool operator==(const RDPCost& a, const RDPCost& b) {
    if (a.inf_ != b.inf_) return false;
    if (a.inf_) return true;
    return a.alpha_ == b.alpha_ && a.eps_ == b.eps_;
  }
  friend bool operator!=(const RDPCost& a, const RDPCost& b) { return !(a == b); }

  std::string str() const {
    if (inf_) return "inf";
    return "(" + alpha_.str() + ", " + eps_.str() + ")";
  }

 private:
  bool inf_;
  Rat alpha_;
  RealExpr eps_;
};

}  // namespace solo

#endif  // SOLO_REALEXPR_HPP
