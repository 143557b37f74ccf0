// Copyright 2026 The correq Authors.
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

#ifndef CORREQ_RATIONAL_H_
#define CORREQ_RATIONAL_H_

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace correq {

// Exact rational arithmetic on 64-bit numerator/denominator. Payoffs and
// chance probabilities are kept exact throughout game construction and are
// converted to floating point only when a linear program is emitted.
// Intermediate products use 128-bit arithmetic; a result that does not fit in
// 64 bits after normalization throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  // Intentionally implicit so that integer literals work as payoffs.
  constexpr Rational(int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(int64_t num, int64_t den) : num_(num), den_(den) { Normalize(); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
  std::string ToString() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Parses "p" or "p/q" (no whitespace). Throws std::invalid_argument on
  // malformed input and std::overflow_error when out of range.
  static Rational Parse(const std::string& text) {
    size_t slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        return Rational(ParseInt(text), 1);
      }
      return Rational(ParseInt(text.substr(0, slash)),
                      ParseInt(text.substr(slash + 1)));
    } catch (const std::out_of_range&) {
      throw std::overflow_error("rational out of range: " + text);
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return FromWide(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_,
                    Wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return FromWide(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_,
                    Wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return FromWide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return FromWide(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return Wide(a.num_) * b.den_ < Wide(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

 private:
  using Wide = __int128;

  static int64_t ParseInt(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational component");
    size_t pos = 0;
    int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad rational: " + s);
    return v;
  }

  static Rational FromWide(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    Wide g = Gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) {
      throw std::overflow_error("rational overflow");
    }
    Rational r;
    r.num_ = static_cast<int64_t>(num);
    r.den_ = static_cast<int64_t>(den);
    return r;
  }

  static Wide Gcd(Wide a, Wide b) {
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void Normalize() {
    Rational r = FromWide(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  int64_t num_;
  int64_t den_;
};

}  // namespace correq

template <>
struct std::hash<correq::Rational> {
  size_t operator()(const correq::Rational& r) const {
    return std::hash<int64_t>()(r.num()) * 31 + std::hash<int64_t>()(r.den());
  }
};

#endif  // CORREQ_RATIONAL_H_
