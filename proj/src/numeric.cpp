#include "cfdim/numeric.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace cfdim {

double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_big: argument must be positive");
  // Doubles hold ~1024 bits of range; shift down only when necessary.
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits < 900) return std::log(static_cast<double>(v));
  const unsigned shift = bits - 64;
  const BigInt top = v >> shift;
  return std::log(static_cast<double>(top)) + shift * std::log(2.0);
}

double log_rational(const Rational& r) {
  if (r <= 0) throw std::domain_error("log_rational: argument must be positive");
  return log_big(numerator(r)) - log_big(denominator(r));
}

LogValue LogValue::from_double(double x) {
  if (x < 0) throw std::domain_error("LogValue: negative value");
  LogValue v;
  v.log_ = std::log(x);  // -inf for x == 0
  return v;
}

LogValue LogValue::from_rational(const Rational& r) {
  if (r < 0) throw std::domain_error("LogValue: negative value");
  LogValue v;
  if (r == 0) return v;
  v.log_ = log_rational(r);
  v.exact_ = r;
  v.maybe_drop_exact();
  return v;
}

double LogValue::to_double() const {
  if (exact_) return rational_to_double(*exact_);
  return std::exp(log_);
}

LogValue LogValue::pow(double e) const {
  if (is_zero()) {
    if (e <= 0) throw std::domain_error("LogValue::pow: 0 to non-positive power");
    return zero();
  }
  if (e == 1.0) return *this;
  LogValue v;
  v.log_ = log_ * e;
  if (exact_ && e == std::floor(e) && std::abs(e) <= 64) {
    const long n = static_cast<long>(e);
    Rational r = 1;
    const Rational base = n >= 0 ? *exact_ : Rational(1) / *exact_;
    for (long i = 0; i < std::labs(n); ++i) r *= base;
    v.exact_ = r;
    v.maybe_drop_exact();
  }
  return v;
}

LogValue LogValue::operator*(const LogValue& o) const {
  if (is_zero() || o.is_zero()) return zero();
  LogValue v;
  v.log_ = log_ + o.log_;
  if (exact_ && o.exact_) {
    v.exact_ = *exact_ * *o.exact_;
    v.maybe_drop_exact();
  }
  return v;
}

LogValue LogValue::operator/(const LogValue& o) const {
  if (o.is_zero()) throw std::domain_error("LogValue: division by zero");
  if (is_zero()) return zero();
  LogValue v;
  v.log_ = log_ - o.log_;
  if (exact_ && o.exact_) {
    v.exact_ = *exact_ / *o.exact_;
    v.maybe_drop_exact();
  }
  return v;
}

LogValue LogValue::operator+(const LogValue& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  LogValue v;
  v.log_ = log_sum_exp_pair(log_, o.log_);
  if (exact_ && o.exact_) {
    v.exact_ = *exact_ + *o.exact_;
    v.maybe_drop_exact();
    // Exact path wins for accuracy when available.
    if (v.exact_) v.log_ = log_rational(*v.exact_);
  }
  return v;
}

void LogValue::maybe_drop_exact() {
  if (!exact_) return;
  const BigInt& n = numerator(*exact_);
  const BigInt& d = denominator(*exact_);
  const unsigned nb = n == 0 ? 0 : boost::multiprecision::msb(boost::multiprecision::abs(n));
  const unsigned db = boost::multiprecision::msb(d);
  if (nb > kMaxExactBits || db > kMaxExactBits) exact_.reset();
}

double log_sum_exp_pair(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace cfdim
