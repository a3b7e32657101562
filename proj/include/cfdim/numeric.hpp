#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace cfdim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Natural log of a positive big integer, accurate to double precision.
double log_big(const BigInt& v);

// Natural log of a positive rational.
double log_rational(const Rational& r);

inline double rational_to_double(const Rational& r) {
  return static_cast<double>(r);
}

// A strictly non-negative quantity stored in the log domain, with an optional
// exact rational fast path that survives multiplication and addition while the
// operands stay small enough to be worth carrying around.
class LogValue {
 public:
  LogValue() : log_(-std::numeric_limits<double>::infinity()) {}

  static LogValue zero() { return LogValue(); }

  static LogValue from_log(double lg) {
    LogValue v;
    v.log_ = lg;
    return v;
  }

  static LogValue from_double(double x);
  static LogValue from_rational(const Rational& r);

  bool is_zero() const { return log_ == -std::numeric_limits<double>::infinity(); }
  double log() const { return log_; }
  double to_double() const;

  bool has_exact() const { return exact_.has_value(); }
  const Rational& exact() const { return *exact_; }

  // x^e for a real exponent (drops the exact path unless e is 0 or 1).
  LogValue pow(double e) const;

  LogValue operator*(const LogValue& o) const;
  LogValue operator/(const LogValue& o) const;
  LogValue operator+(const LogValue& o) const;  // log-sum-exp
  LogValue& operator*=(const LogValue& o) { return *this = *this * o; }
  LogValue& operator+=(const LogValue& o) { return *this = *this + o; }

 private:
  // Exact path is dropped once numerator/denominator exceed this many bits;
  // beyond that the rational arithmetic costs more than it's worth.
  static constexpr unsigned kMaxExactBits = 2048;

  double log_;
  std::optional<Rational> exact_;

  void maybe_drop_exact();
};

// Sequential log-sum-exp over a fixed-order range; deterministic (the order of
// the inputs fully determines the rounding).
double log_sum_exp_pair(double a, double b);

}  // namespace cfdim
