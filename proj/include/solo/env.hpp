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
// Value-level algebra of sensitivity and privacy environments: ordered maps
// from data-source names to sensitivities (or privacy costs), with pointwise
// addition, maximum, scaling, truncation and comparison. Environments are
// immutable values; every operation returns a fresh normalized environment.
#ifndef SOLO_ENV_HPP
#define SOLO_ENV_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <type_traits>
#include <utility>

#include "solo/diagnostics.hpp"
#include "solo/rational.hpp"

namespace solo {

// A data-source name. Names compare byte-wise lexicographically, which fixes
// the key order of every environment.
using SourceName = std::string;

// A sensitivity: a natural number or infinity. Infinity absorbs addition,
// maximum and scaling by a nonzero factor; scaling by zero yields zero.
class Sens {
 public:
  Sens() : inf_(false), v_(0) {}
  Sens(std::uint64_t v) : inf_(false), v_(v) {}  // NOLINT: implicit by intent
  static Sens infinity() {
    Sens s;
    s.inf_ = true;
    return s;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }
  std::uint64_t value() const { return v_; }
  static Sens zero() { return Sens(0); }

  friend Sens operator+(Sens a, Sens b) {
    if (a.inf_ || b.inf_) return infinity();
    std::uint64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r))
      throw SoloError(Code::kDomain, "sensitivity overflow");
    return Sens(r);
  }
  friend Sens operator*(Sens a, Sens b) {
    // 0 * inf = 0: a source with zero uses contributes nothing.
    if (a.is_zero() || b.is_zero()) return Sens(0);
    if (a.inf_ || b.inf_) return infinity();
    std::uint64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r))
      throw SoloError(Code::kDomain, "sensitivity overflow");
    return Sens(r);
  }
  static Sens max(Sens a, Sens b) {
    if (a.inf_ || b.inf_) return infinity();
    return Sens(a.v_ >= b.v_ ? a.v_ : b.v_);
  }

  friend bool operator==(Sens a, Sens b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(Sens a, Sens b) { return !(a == b); }
  // x <= inf always holds.
  friend bool operator<=(Sens a, Sens b) {
    if (b.inf_) return true;
    if (a.inf_) return false;
    return a.v_ <= b.v_;
  }

  double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : static_cast<double>(v_);
  }

  std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

 private:
  bool inf_;
  std::uint64_t v_;
};

// A privacy cost for pure epsilon-differential privacy: a nonnegative
// rational or infinity.
class EpsCost {
 public:
  EpsCost() : inf_(false), v_() {}
  EpsCost(Rat v) : inf_(false), v_(v) {}  // NOLINT: implicit by intent
  static EpsCost infinity() {
    EpsCost c;
    c.inf_ = true;
    return c;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && v_.is_zero(); }
  const Rat& value() const { return v_; }
  static EpsCost zero() { return EpsCost(Rat(0)); }

  friend EpsCost operator+(const EpsCost& a, const EpsCost& b) {
    if (a.inf_ || b.inf_) return infinity();
    return EpsCost(a.v_ + b.v_);
  }
  EpsCost scaled(const Rat& k) const {
    if (inf_) return k.is_zero() ? zero() : infinity();
    return EpsCost(v_ * k);
  }

  friend bool operator==(const EpsCost& a, const EpsCost& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(const EpsCost& a, const EpsCost& b) { return !(a == b); }

  std::string str() const { return inf_ ? "inf" : v_.str(); }
  double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : v_.to_double();
  }

 private:
  bool inf_;
  Rat v_;
};

// An ordered map from source names to values of V, where V is a sensitivity
// or a privacy cost. Two invariants hold at all times: keys are strictly
// increasing, and no stored value is zero (an absent key means zero).
template <typename V>
class Env {
 public:
  Env() = default;

  static Env singleton(const SourceName& o, V v) {
    Env e;
    e.set(o, std::move(v));
    return e;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Zero for missing keys.
  V get(const SourceName& o) const {
    auto it = entries_.find(o);
    return it == entries_.end() ? V::zero() : it->second;
  }
  bool contains(const SourceName& o) const { return entries_.count(o) > 0; }

  void set(const SourceName& o, V v) {
    if (v.is_zero())
      entries_.erase(o);
    else
      entries_.insert_or_assign(o, std::move(v));
  }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const Env& a, const Env& b) { return a.entries_ == b.entries_; }
  friend bool operator!=(const Env& a, const Env& b) { return !(a == b); }

  // Pointwise combination over the key union; f(zero, v) and f(v, zero)
  // cover one-sided keys. The result is normalized.
  template <typename F>
  static Env combine(const Env& a, const Env& b, F&& f) {
    Env out;
    auto ia = a.entries_.begin(), ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
        out.set(ia->first, f(ia->second, V::zero()));
        ++ia;
      } else if (ia == a.entries_.end() || ib->first < ia->first) {
        out.set(ib->first, f(V::zero(), ib->second));
        ++ib;
      } else {
        out.set(ia->first, f(ia->second, ib->second));
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  template <typename F>
  auto map_values(F&& f) const {
    Env<std::decay_t<decltype(f(std::declval<V>()))>> out;
    for (const auto& [o, v] : entries_) out.set(o, f(v));
    return out;
  }

  // Canonical-form predicate: strictly increasing keys with no zero values.
  // std::map guarantees the order; this re-checks normalization for tests.
  bool canonical() const {
    for (const auto& [o, v] : entries_)
      if (v.is_zero()) return false;
    return true;
  }

  // Renders "[a:1, b:inf]"; "[]" when empty.
  std::string str() const {
    std::string out = "[";
    bool first = true;
    for (const auto& [o, v] : entries_) {
      if (!first) out += ", ";
      first = false;
      out += o + ":" + v.str();
    }
    return out + "]";
  }

 private:
  std::map<SourceName, V> entries_;
};

using SEnv = Env<Sens>;
template <typename C>
using PEnv = Env<C>;

// --- The sensitivity-environment operations -------------------------------

// Pointwise addition; keys present in either input appear in the output.
inline SEnv senv_plus(const SEnv& a, const SEnv& b) {
  return SEnv::combine(a, b, [](Sens x, Sens y) { return x + y; });
}

// Pointwise maximum.
inline SEnv senv_join(const SEnv& a, const SEnv& b) {
  return SEnv::combine(a, b, [](Sens x, Sens y) { return Sens::max(x, y); });
}

// Every entry multiplied by k; zero entries drop out.
inline SEnv senv_scale(Sens k, const SEnv& a) {
  return a.map_values([k](Sens v) { return k * v; });
}

// Every nonzero sensitivity replaced by the cost c. Zero is preserved
// (i.e. absent keys stay absent), so the output keys equal the input keys.
template <typename C>
PEnv<C> senv_truncate(const C& c, const SEnv& a) {
  return a.map_values([&c](Sens) { return c; });
}

// Every nonzero entry replaced by the infinite cost of C.
template <typename C>
PEnv<C> senv_scale_to_inf(const SEnv& a) {
  return a.map_values([](Sens) { return C::infinity(); });
}

// Maximum sensitivity across entries; zero for the empty environment.
inline Sens senv_max(const SEnv& a) {
  Sens m = Sens(0);
  for (const auto& [o, v] : a) m = Sens::max(m, v);
  return m;
}

// Pointwise order: true iff a(o) <= b(o) for every source o.
inline bool senv_leq(const SEnv& a, const SEnv& b) {
  bool ok = true;
  SEnv::combine(a, b, [&ok](Sens x, Sens y) {
    if (!(x <= y)) ok = false;
    return Sens(0);
  });
  return ok;
}

}  // namespace solo

#endif  // SOLO_ENV_HPP
