#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfdim/cf_core.hpp"

#include <cstdlib>
#include <random>

using namespace cfdim;

TEST_CASE("gauss map basics") {
  CHECK(gauss_map(0.0) == 0.0);
  CHECK(gauss_map(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(gauss_map(0.4) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rational expansion") {
  auto e = expand(Rational(1, 2), 5);
  CHECK(e.word.digits == std::vector<std::int64_t>{2});
  CHECK(e.status == ExpandStatus::terminated_rational);

  e = expand(Rational(2, 5), 3);
  CHECK(e.word.digits == std::vector<std::int64_t>{2, 2});
  CHECK(e.status == ExpandStatus::terminated_rational);
}

TEST_CASE("double expansion treats 0.4 as the boundary-adjacent rational") {
  auto e = expand(0.4, 3);
  CHECK(e.word.digits == std::vector<std::int64_t>{2, 2});
  CHECK(e.status == ExpandStatus::terminated_rational);
}

TEST_CASE("surd expansion: sqrt(2)-1 is all twos") {
  auto e = expand_surd(BigInt(-1), BigInt(1), BigInt(2), 5);
  CHECK(e.status == ExpandStatus::complete);
  CHECK(e.word.digits == std::vector<std::int64_t>{2, 2, 2, 2, 2});
  // Double-path expansion of the same number agrees.
  auto d = expand(std::sqrt(2.0) - 1.0, 5);
  CHECK(d.word.digits == e.word.digits);
}

TEST_CASE("convergents of small words") {
  auto cs = convergents(Word({1, 1, 1, 1}));
  REQUIRE(cs.size() == 4);
  CHECK(cs[0].p == 1); CHECK(cs[0].q == 1);
  CHECK(cs[1].p == 1); CHECK(cs[1].q == 2);
  CHECK(cs[2].p == 2); CHECK(cs[2].q == 3);
  CHECK(cs[3].p == 3); CHECK(cs[3].q == 5);

  cs = convergents(Word({2}));
  CHECK(cs[0].p == 1); CHECK(cs[0].q == 2);

  cs = convergents(Word({1, 2}));
  CHECK(cs[1].p == 2); CHECK(cs[1].q == 3);
}

TEST_CASE("cylinder intervals by parity") {
  auto c = cylinder_interval(Word({1}));
  CHECK(c.left == Rational(1, 2));
  CHECK(c.right == Rational(1, 1));
  CHECK(!c.closed_left);
  CHECK(c.closed_right);

  c = cylinder_interval(Word({1, 1}));
  CHECK(c.left == Rational(1, 2));
  CHECK(c.right == Rational(2, 3));
  CHECK(c.closed_left);
  CHECK(!c.closed_right);

  c = cylinder_interval(Word({2}));
  CHECK(c.left == Rational(1, 3));
  CHECK(c.right == Rational(1, 2));
}

TEST_CASE("cylinder lengths") {
  CHECK(cylinder_length(Word({1, 2})) == Rational(1, 12));
  CHECK(cylinder_length(Word({1})) == Rational(1, 2));
  CHECK(cylinder_length(Word({2, 2})) == Rational(1, 35));
}

TEST_CASE("derivative magnitude of T^n") {
  auto v = tn_derivative_magnitude(Word({2}), Rational(45, 100));
  CHECK(v.to_double() == doctest::Approx(1.0 / (0.45 * 0.45)).epsilon(1e-12));
  v = tn_derivative_magnitude(Word({1, 1}), Rational(6, 10));
  CHECK(v.to_double() == doctest::Approx(6.25).epsilon(1e-12));
}

TEST_CASE("exact identities over random words") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> len_d(1, 20);
  std::uniform_int_distribution<std::int64_t> digit_d(1, 30);
  for (int t = 0; t < 500; ++t) {
    Word w;
    const int len = len_d(rng);
    for (int i = 0; i < len; ++i) w.push(digit_d(rng));
    auto cp = convergent_pair(w);
    // Determinant identity p_n q_{n-1} - p_{n-1} q_n = (-1)^n (mirrored sign
    // convention: q_n p_{n-1} - p_n q_{n-1} = (-1)^n).
    const BigInt det = cp.q * cp.p_prev - cp.p * cp.q_prev;
    CHECK(det == ((len % 2 == 0) ? BigInt(1) : BigInt(-1)));
    // Length closed form vs interval subtraction.
    auto ci = cylinder_interval(w);
    CHECK(ci.length() == cylinder_length(w));
    CHECK(cylinder_length(w) == Rational(1, cp.q * (cp.q + cp.q_prev)));
  }
}

TEST_CASE("first-digit telescoping") {
  for (std::int64_t A : {1, 2, 5, 17, 100}) {
    Rational sum = 0;
    for (std::int64_t a = 1; a <= A; ++a) sum += cylinder_length(Word({a}));
    CHECK(sum == Rational(1) - Rational(1, A + 1));
  }
}

TEST_CASE("khintchine bounds") {
  CHECK(khintchine_check(Word({3, 1, 2}), 1).pass);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(khintchine_check(Word({1, 1, 1, 1, 1}), k).pass);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len_d(2, 20);
  std::uniform_int_distribution<std::int64_t> digit_d(1, 50);
  for (int t = 0; t < 300; ++t) {
    Word w;
    const int len = len_d(rng);
    for (int i = 0; i < len; ++i) w.push(digit_d(rng));
    std::uniform_int_distribution<std::size_t> k_d(1, w.size());
    CHECK(khintchine_check(w, k_d(rng)).pass);
  }
}

TEST_CASE("legendre criterion") {
  // x = 1/2, p/q = 1/2: zero distance, hypothesis holds, 1/2 = [2].
  CHECK(legendre_check(Rational(1, 2), Rational(1, 2), BigInt(1), BigInt(2)) ==
        LegendreVerdict::holds);
  // sqrt(2)-1 in a tight rational bracket; 2/5 = [2,2] is a convergent.
  const Rational lo(414213562373095048LL, 1000000000000000000LL);
  const Rational hi(414213562373095050LL, 1000000000000000000LL);
  CHECK(legendre_check(lo, hi, BigInt(2), BigInt(5)) == LegendreVerdict::holds);
  // 1/3 is too far from sqrt(2)-1 for the hypothesis: vacuous.
  CHECK(legendre_check(lo, hi, BigInt(1), BigInt(3)) == LegendreVerdict::vacuous);
}
