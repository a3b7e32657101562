#include "cfdim/cf_core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cfdim {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  // b > 0 assumed.
  BigInt q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

// floor((p + sqrt(d)) / q) with q > 0, d > 0 non-square.
BigInt floor_surd(const BigInt& p, const BigInt& q, const BigInt& d) {
  const BigInt t = boost::multiprecision::sqrt(d);  // floor(sqrt(d))
  BigInt k = floor_div(p + t, q);
  // sqrt(d) in (t, t+1); fix up by at most one step each way.
  // k+1 <= (p+sqrt(d))/q  <=>  (k+1)q - p <= sqrt(d).
  while (true) {
    const BigInt c = (k + 1) * q - p;
    if (c <= 0 || c * c <= d) ++k; else break;
  }
  while (true) {
    const BigInt c = k * q - p;
    if (c > 0 && c * c > d) --k; else break;
  }
  return k;
}

}  // namespace

Word::Word(std::vector<std::int64_t> d) : digits(std::move(d)) {
  for (auto a : digits)
    if (a < 1) throw std::domain_error("Word: digits must be >= 1");
}

void Word::push(std::int64_t a) {
  if (a < 1) throw std::domain_error("Word: digits must be >= 1");
  digits.push_back(a);
}

bool CylinderInterval::contains(const Rational& x) const {
  if (x < left || x > right) return false;
  if (x == left && !closed_left) return false;
  if (x == right && !closed_right) return false;
  return true;
}

double gauss_map(double x) {
  if (x < 0.0 || x >= 1.0) throw std::domain_error("gauss_map: x must be in [0,1)");
  if (x == 0.0) return 0.0;
  const double y = 1.0 / x;
  return y - std::floor(y);
}

BigInt continuant(const std::int64_t* digits, std::size_t n) {
  BigInt q_prev = 0, q = 1;  // q_{-1}, q_0
  for (std::size_t i = 0; i < n; ++i) {
    BigInt next = digits[i] * q + q_prev;
    q_prev = std::move(q);
    q = std::move(next);
  }
  return q;
}

void ConvergentPair::advance(std::int64_t digit) {
  BigInt np = digit * p + p_prev;
  BigInt nq = digit * q + q_prev;
  p_prev = std::move(p);
  q_prev = std::move(q);
  p = std::move(np);
  q = std::move(nq);
  ++n;
}

ConvergentPair convergent_pair(const Word& w) {
  ConvergentPair c{/*p_prev=*/1, /*q_prev=*/0, /*p=*/0, /*q=*/1, /*n=*/0};
  for (auto a : w.digits) c.advance(a);
  return c;
}

std::vector<Convergent> convergents(const Word& w) {
  std::vector<Convergent> out;
  out.reserve(w.size());
  ConvergentPair c{1, 0, 0, 1, 0};
  for (auto a : w.digits) {
    c.advance(a);
    out.push_back({c.p, c.q, c.n});
  }
  return out;
}

CylinderInterval cylinder_interval(const Word& w) {
  if (w.empty()) throw std::domain_error("cylinder_interval: word must be non-empty");
  const auto c = convergent_pair(w);
  const Rational end(c.p, c.q);
  const Rational mid(c.p + c.p_prev, c.q + c.q_prev);
  CylinderInterval iv;
  iv.order = c.n;
  if (c.n % 2 == 0) {  // [p/q, (p+p')/(q+q'))
    iv.left = end;
    iv.right = mid;
    iv.closed_left = true;
    iv.closed_right = false;
  } else {  // ((p+p')/(q+q'), p/q]
    iv.left = mid;
    iv.right = end;
    iv.closed_left = false;
    iv.closed_right = true;
  }
  return iv;
}

Rational cylinder_length(const Word& w) {
  if (w.empty()) throw std::domain_error("cylinder_length: word must be non-empty");
  const auto c = convergent_pair(w);
  return Rational(1, c.q * (c.q + c.q_prev));
}

LogValue tn_derivative_magnitude(const Word& w, const Rational& x) {
  if (!cylinder_interval(w).contains(x))
    throw std::domain_error("tn_derivative_magnitude: x outside the cylinder");
  const auto c = convergent_pair(w);
  const Rational d = x * c.q_prev - c.p_prev;
  return LogValue::from_rational(Rational(1) / (d * d));
}

Expansion expand(const Rational& x, std::size_t n) {
  return expand(x, x, n);
}

Expansion expand(const Rational& lo, const Rational& hi, std::size_t n) {
  if (lo > hi) throw std::domain_error("expand: empty interval");
  if (lo < 0 || hi >= 1) throw std::domain_error("expand: interval must lie in [0,1)");
  Expansion out;
  Rational l = lo, r = hi;
  for (std::size_t i = 0; i < n; ++i) {
    if (l <= 0) {
      // The interval reaches 0: the value (to available precision) terminates.
      out.status = ExpandStatus::terminated_rational;
      return out;
    }
    // Digit of y in (0,1) is floor(1/y); over [l, r] the candidates range from
    // floor(1/r) to floor(1/l).
    const BigInt a_min = floor_div(denominator(r), numerator(r));
    const BigInt a_max = floor_div(denominator(l), numerator(l));
    BigInt a = a_min;
    if (a_min != a_max) {
      // Ambiguous: prefer a digit boundary 1/k inside the interval, which
      // corresponds to a terminating rational at this precision.
      const BigInt k = a_min + 1;
      const Rational boundary(1, k);
      if (boundary >= l && boundary <= r && a_max == k) {
        out.word.push(static_cast<std::int64_t>(k));
        out.status = ExpandStatus::terminated_rational;
        return out;
      }
      out.status = ExpandStatus::precision_exhausted;
      return out;
    }
    if (a > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("expand: digit exceeds int64 range");
    out.word.push(static_cast<std::int64_t>(a));
    // T maps [l, r] (order-reversing) to [1/r - a, 1/l - a].
    Rational nl = Rational(1) / r - Rational(a);
    Rational nr = Rational(1) / l - Rational(a);
    l = std::move(nl);
    r = std::move(nr);
    if (l == 0 && r == 0) {
      out.status = ExpandStatus::terminated_rational;
      return out;
    }
  }
  out.status = ExpandStatus::complete;
  return out;
}

Expansion expand(double x, std::size_t n, double eps) {
  if (x <= 0.0 || x >= 1.0) throw std::domain_error("expand: x must be in (0,1)");
  Rational lo(x);
  Rational hi(x);
  const Rational e(eps);
  lo -= e;
  hi += e;
  if (lo < 0) lo = 0;
  if (hi >= 1) hi = Rational(1) - Rational(1, BigInt(1) << 80);
  return expand(lo, hi, n);
}

Expansion expand_surd(const BigInt& p0, const BigInt& q0, const BigInt& d, std::size_t n) {
  if (d <= 0) throw std::domain_error("expand_surd: d must be positive");
  {
    const BigInt t = boost::multiprecision::sqrt(d);
    if (t * t == d) throw std::domain_error("expand_surd: d must be a non-square");
  }
  if (q0 <= 0) throw std::domain_error("expand_surd: denominator must be positive");
  // Normalize to Q | D - P^2 (multiply through by q0 when needed).
  BigInt P = p0, Q = q0, D = d;
  if ((D - P * P) % Q != 0) {
    P *= Q;
    D *= Q * Q;
    Q *= Q;
  }
  // Value must lie in (0,1): 0 < (P + sqrt(D))/Q < 1.
  {
    const BigInt k = floor_surd(P, Q, D);
    if (k != 0) throw std::domain_error("expand_surd: value must lie in (0,1)");
  }
  Expansion out;
  for (std::size_t i = 0; i < n; ++i) {
    // Invert: 1/x = (-P + sqrt(D)) / ((D - P^2)/Q).
    const BigInt Q1 = (D - P * P) / Q;
    if (Q1 <= 0) throw std::logic_error("expand_surd: invariant broken");
    const BigInt P1 = -P;
    const BigInt a = floor_surd(P1, Q1, D);
    if (a < 1 || a > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("expand_surd: digit out of range");
    out.word.push(static_cast<std::int64_t>(a));
    P = P1 - a * Q1;
    Q = Q1;
  }
  out.status = ExpandStatus::complete;
  return out;
}

KhintchineReport khintchine_check(const Word& w, std::size_t k) {
  const std::size_t n = w.size();
  if (k < 1 || k > n) throw std::domain_error("khintchine_check: k out of range");
  KhintchineReport rep;
  rep.k_is_last = (k == n);

  // P1: (a_k+1)/2 <= q_n(w) / q_{n-1}(w \ a_k) <= a_k + 1.
  std::vector<std::int64_t> deleted;
  deleted.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (i != k - 1) deleted.push_back(w.digits[i]);
  const BigInt q_full = continuant(w.digits.data(), n);
  const BigInt q_del = continuant(deleted.data(), deleted.size());
  rep.ratio = Rational(q_full, q_del);
  const std::int64_t ak = w.digits[k - 1];
  if (rep.ratio < Rational(ak + 1, 2) || rep.ratio > Rational(ak + 1)) rep.pass = false;

  // P2: q_j * q_{n-j} <= q_n <= 2 q_j q_{n-j} for every split.
  for (std::size_t j = 1; j < n; ++j) {
    const BigInt ql = continuant(w.digits.data(), j);
    const BigInt qr = continuant(w.digits.data() + j, n - j);
    if (!(ql * qr <= q_full && q_full <= 2 * ql * qr)) {
      rep.pass = false;
      rep.failed_splits.push_back(j);
    }
  }
  return rep;
}

LegendreVerdict legendre_check(const Rational& lo, const Rational& hi,
                               const BigInt& p, const BigInt& q) {
  if (q <= 0) throw std::domain_error("legendre_check: q must be positive");
  if (boost::multiprecision::gcd(p, q) != 1)
    throw std::domain_error("legendre_check: p/q must be in lowest terms");
  const Rational target(p, q);
  const Rational threshold(1, 2 * q * q);
  // Range of |x - p/q| over the interval.
  Rational dmin, dmax;
  if (target < lo) { dmin = lo - target; dmax = hi - target; }
  else if (target > hi) { dmin = target - hi; dmax = target - lo; }
  else { dmin = 0; const Rational a = target - lo, b = hi - target; dmax = a > b ? a : b; }
  if (dmin >= threshold) return LegendreVerdict::vacuous;
  if (dmax >= threshold) return LegendreVerdict::precision_error;

  // Hypothesis holds: p/q must appear among the convergents of x. Expand until
  // the continuant passes q, checking each convergent as it appears.
  Rational l = lo, r = hi;
  ConvergentPair c{1, 0, 0, 1, 0};
  bool exhausted = false;
  while (c.q < q) {
    if (l <= 0) { exhausted = true; break; }  // x terminated at this precision
    const BigInt a_min = denominator(r) / numerator(r);
    const BigInt a_max = denominator(l) / numerator(l);
    if (a_min != a_max) {
      const BigInt k = a_min + 1;
      const Rational boundary(1, k);
      if (boundary >= l && boundary <= r && a_max == k) {
        c.advance(static_cast<std::int64_t>(k));
        exhausted = true;
        break;
      }
      return LegendreVerdict::precision_error;
    }
    if (a_min > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("legendre_check: digit exceeds int64 range");
    c.advance(static_cast<std::int64_t>(a_min));
    Rational nl = Rational(1) / r - Rational(a_min);
    Rational nr = Rational(1) / l - Rational(a_min);
    l = std::move(nl);
    r = std::move(nr);
    if (l == 0 && r == 0) { exhausted = true; break; }
  }
  if (c.q == q && c.p == p) return LegendreVerdict::holds;
  if (exhausted && c.q < q) return LegendreVerdict::precision_error;
  return LegendreVerdict::violated;
}

}  // namespace cfdim
