#pragma once

#include "cfdim/numeric.hpp"

#include <cstdint>
#include <vector>

namespace cfdim {

// A finite string of partial quotients (a_1, ..., a_n), all >= 1.
struct Word {
  std::vector<std::int64_t> digits;

  Word() = default;
  explicit Word(std::vector<std::int64_t> d);

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }
  std::int64_t operator[](std::size_t i) const { return digits[i]; }  // 0-based
  void push(std::int64_t a);
  void pop() { digits.pop_back(); }

  bool operator==(const Word&) const = default;
};

struct Convergent {
  BigInt p;
  BigInt q;
  int index = 0;
};

// The basic cylinder I_n as an interval with exact rational endpoints.
// Even order: [p_n/q_n, (p_n+p_{n-1})/(q_n+q_{n-1})); odd order: the mirror.
struct CylinderInterval {
  Rational left;
  Rational right;
  bool closed_left = true;
  bool closed_right = false;
  int order = 0;

  bool contains(const Rational& x) const;
  Rational length() const { return right - left; }
};

double gauss_map(double x);

// Continuant q of a digit string (q_0 = 1 on the empty string).
BigInt continuant(const std::int64_t* digits, std::size_t n);

std::vector<Convergent> convergents(const Word& w);

// Final (p_n, q_n) together with (p_{n-1}, q_{n-1}); cheaper than the full list.
struct ConvergentPair {
  BigInt p_prev, q_prev;  // p_{n-1}, q_{n-1}
  BigInt p, q;            // p_n, q_n
  int n = 0;

  void advance(std::int64_t digit);
};
ConvergentPair convergent_pair(const Word& w);

CylinderInterval cylinder_interval(const Word& w);
Rational cylinder_length(const Word& w);  // 1/(q_n(q_n+q_{n-1}))

// |(T^n)'(x)| = 1/(x q_{n-1} - p_{n-1})^2 for x in the cylinder of w.
LogValue tn_derivative_magnitude(const Word& w, const Rational& x);

// --- Gauss-map expansion -----------------------------------------------------

enum class ExpandStatus {
  complete,             // all n digits produced
  terminated_rational,  // an iterate hit 0 (or a digit boundary) exactly
  precision_exhausted,  // interval ambiguity spans a digit boundary
};

struct Expansion {
  Word word;
  ExpandStatus status = ExpandStatus::complete;
};

// Exact expansion of a rational in [0,1).
Expansion expand(const Rational& x, std::size_t n);

// Interval expansion: digits shared by every point of [lo, hi].
Expansion expand(const Rational& lo, const Rational& hi, std::size_t n);

// Double input, treated as (value, precision): the interval [x-eps, x+eps].
// When the interval straddles a digit boundary 1/k, the boundary rational is
// preferred and the expansion reports rational termination.
Expansion expand(double x, std::size_t n, double eps = 1e-14);

// Exact expansion of the quadratic surd (p0 + sqrt(d)) / q0, which must lie in
// (0,1) with d a positive non-square.
Expansion expand_surd(const BigInt& p0, const BigInt& q0, const BigInt& d, std::size_t n);

// --- Classical inequality checks --------------------------------------------

struct KhintchineReport {
  bool pass = true;
  bool k_is_last = false;       // the flagged k = n edge case
  Rational ratio;               // q_n(w) / q_n(w with a_k deleted)
  std::vector<std::size_t> failed_splits;  // P2 split positions that failed
};

// P1 ratio bound for deleting digit k (1-based) and P2 product bounds for
// every split of w; everything exact.
KhintchineReport khintchine_check(const Word& w, std::size_t k);

enum class LegendreVerdict {
  holds,           // hypothesis held and p/q is a convergent
  vacuous,         // |x - p/q| >= 1/(2q^2): nothing to check
  violated,        // hypothesis held but p/q is not a convergent (a bug)
  precision_error  // x not known accurately enough to decide
};

// x given as an exact interval [lo, hi] (a point when lo == hi).
LegendreVerdict legendre_check(const Rational& lo, const Rational& hi,
                               const BigInt& p, const BigInt& q);

}  // namespace cfdim
