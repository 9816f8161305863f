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
#ifndef SOLO_RATIONAL_HPP
#define SOLO_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "solo/diagnostics.hpp"

namespace solo {

// Nonnegative rational in lowest terms. Numerators and denominators stay
// comfortably small at desk scale; arithmetic checks for overflow and fails
// loudly rather than wrapping.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(std::uint64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
  Rat(std::uint64_t n, std::uint64_t d) : num_(n), den_(d) {
    if (d == 0) throw SoloError(Code::kDivideByZero, "rational with zero denominator");
    reduce();
  }

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
               checked_mul(a.den_, b.den_));
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw SoloError(Code::kDivideByZero, "rational division by zero");
    return Rat(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }
  // Saturating subtraction; callers in this library only subtract smaller
  // from larger (alpha - 1 with alpha > 1).
  friend Rat operator-(const Rat& a, const Rat& b) {
    std::uint64_t an = checked_mul(a.num_, b.den_);
    std::uint64_t bn = checked_mul(b.num_, a.den_);
    return Rat(an > bn ? an - bn : 0, checked_mul(a.den_, b.den_));
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  // Renders "5" for integers and "5/2" otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Parses a decimal rational exactly: "3", "0.25", "1e-5", "2.5e3".
  // Returns nullopt on malformed input.
  static std::optional<Rat> parse_decimal(const std::string& text) {
    std::uint64_t ipart = 0, fpart = 0, fdigits = 0;
    std::int64_t exp10 = 0;
    std::size_t i = 0;
    if (i >= text.size() || !is_digit(text[i])) return std::nullopt;
    while (i < text.size() && is_digit(text[i])) ipart = ipart * 10 + (text[i++] - '0');
    if (i < text.size() && text[i] == '.') {
      ++i;
      if (i >= text.size() || !is_digit(text[i])) return std::nullopt;
      while (i < text.size() && is_digit(text[i])) {
        fpart = fpart * 10 + (text[i++] - '0');
        ++fdigits;
      }
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
      if (i >= text.size() || !is_digit(text[i])) return std::nullopt;
      std::int64_t e = 0;
      while (i < text.size() && is_digit(text[i])) e = e * 10 + (text[i++] - '0');
      exp10 = neg ? -e : e;
    }
    if (i != text.size()) return std::nullopt;
    Rat r = Rat(ipart) + Rat(fpart, pow10(fdigits));
    if (exp10 > 0) r = r * Rat(pow10(static_cast<std::uint64_t>(exp10)));
    if (exp10 < 0) r = r / Rat(pow10(static_cast<std::uint64_t>(-exp10)));
    return r;
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  static std::uint64_t pow10(std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = checked_mul(r, 10);
    return r;
  }

  static std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
      throw SoloError(Code::kDomain, "rational overflow in addition");
    return r;
  }
  static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
      throw SoloError(Code::kDomain, "rational overflow in multiplication");
    return r;
  }

  void reduce() {
    std::uint64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  std::uint64_t num_;
  std::uint64_t den_;
};

}  // namespace solo

#endif  // SOLO_RATIONAL_HPP
