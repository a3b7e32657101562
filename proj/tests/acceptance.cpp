// End-to-end acceptance checks. Each criterion prints exactly one
// [PASS]/[FAIL] line (plus indented detail) and the process exits nonzero if
// any selected criterion fails.
#include "cfdim/cantor.hpp"
#include "cfdim/cf_core.hpp"
#include "cfdim/classify.hpp"
#include "cfdim/pressure.hpp"
#include "cfdim/solver.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

using namespace cfdim;

namespace {

bool check(bool ok, const char* what) {
  if (!ok) std::printf("    failed: %s\n", what);
  return ok;
}

// 1. The m=2 instance of the general potential equals the dedicated
//    -s^2 log B - s log|T'| path.
bool criterion1() {
  bool ok = true;
  for (double B : {1.5, 2.0, 8.0}) {
    const double a = solve_dimension(B, 20, 2).value;
    const double b = solve_dimension_squared(B, 20).value;
    std::printf("    B=%g: gm-path %.12f squared-path %.12f diff %.2e\n", B, a, b,
                std::abs(a - b));
    ok &= check(std::abs(a - b) <= 1e-9, "paths differ beyond 1e-9");
  }
  return ok;
}

// 2. Partition sums cross-validate the eigenvalue pressure. The finite-depth
//    normalized log-sum carries a log(c)/n bias, so the target tolerance at
//    n=12 is not reachable; the decreasing trend is, and both are reported.
bool criterion2() {
  PressureProblem prob;
  prob.M = 5;
  prob.B = 2.0;
  prob.m = 2;
  prob.s = 0.6;
  const double press = pressure_value(prob.s, prob.B, prob.M, prob.m);
  std::printf("    eigenvalue pressure: %.10f\n", press);
  std::vector<double> gaps;
  for (int n : {4, 8, 12}) {
    const double lhs = partition_sum(n, prob).value.log() / n;
    gaps.push_back(std::abs(lhs - press));
    std::printf("    n=%d: (1/n) log S_n = %.10f  |diff| = %.4e\n", n, lhs, gaps.back());
  }
  const bool decreasing = gaps[0] > gaps[1] && gaps[1] > gaps[2];
  const bool tol_met = gaps[2] <= 5e-3;
  if (!tol_met && decreasing) {
    // The gap behaves like log(c)/n; report the implied constant and the depth
    // that the 5e-3 target would need.
    const double logc = gaps[2] * 12.0;
    std::printf("    note: gap ~ log(c)/n with log(c) = %.3f; 5e-3 needs n = %.0f\n", logc,
                logc / 5e-3);
  }
  bool ok = check(decreasing, "diff not decreasing over n in {4,8,12}");
  ok &= check(tol_met, "|diff| at n=12 exceeds 5e-3");
  return ok;
}

// 3. Limit behavior of s_B and t_B, monotonicity, and s_B <= t_B.
bool criterion3() {
  TransferOptions opts;
  opts.tail = true;
  bool ok = true;
  for (int m : {1, 2}) {
    const double near1 = solve_dimension(1.0001, 100, m, 1e-10, opts).value;
    const double huge = solve_dimension(1e9, 100, m, 1e-10, opts).value;
    std::printf("    m=%d: B=1.0001 -> %.6f, B=1e9 -> %.6f\n", m, near1, huge);
    ok &= check(near1 >= 0.95, "B->1 limit below 0.95");
    ok &= check(huge >= 0.50 && huge <= 0.55, "B->infinity value outside [0.50, 0.55]");
  }
  const std::vector<double> grid = {1.5, 2.0, 4.0, 8.0, 32.0, 1000.0};
  std::vector<double> s_curve, t_curve;
  for (double B : grid) {
    s_curve.push_back(solve_dimension(B, 100, 1, 1e-10, opts).value);
    t_curve.push_back(solve_dimension(B, 100, 2, 1e-10, opts).value);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::printf("    B=%g: s_B=%.6f t_B=%.6f\n", grid[i], s_curve[i], t_curve[i]);
    ok &= check(s_curve[i] <= t_curve[i] + 1e-12, "s_B > t_B");
    if (i > 0) ok &= check(t_curve[i] <= t_curve[i - 1] + 1e-12, "t_B not non-increasing");
  }
  return ok;
}

// 4. Exact continued-fraction identities on random words: zero tolerance.
bool criterion4() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> len_d(1, 20);
  std::uniform_int_distribution<std::int64_t> digit_d(1, 1000);
  bool ok = true;
  for (int t = 0; t < 10000 && ok; ++t) {
    Word w;
    const int len = len_d(rng);
    for (int i = 0; i < len; ++i) w.push(digit_d(rng));
    auto cp = convergent_pair(w);
    const BigInt det = cp.q * cp.p_prev - cp.p * cp.q_prev;
    ok &= check(det == ((len % 2 == 0) ? BigInt(1) : BigInt(-1)), "determinant identity");
    const Rational length = cylinder_length(w);
    ok &= check(length == Rational(1, cp.q * (cp.q + cp.q_prev)), "length closed form");
    ok &= check(length == cylinder_interval(w).length(), "interval subtraction");
    ok &= check(length >= Rational(1, 2 * cp.q * cp.q), "length lower bound 1/(2q^2)");
    ok &= check(length <= Rational(1, cp.q * cp.q), "length upper bound 1/q^2");
    std::uniform_int_distribution<std::size_t> k_d(1, w.size());
    ok &= check(khintchine_check(w, k_d(rng)).pass, "Khintchine P1/P2");
  }
  for (std::int64_t A : {1, 3, 10, 250}) {
    Rational sum = 0;
    for (std::int64_t a = 1; a <= A; ++a) sum += cylinder_length(Word({a}));
    ok &= check(sum == Rational(1) - Rational(1, A + 1), "first-digit telescoping");
  }
  return ok;
}

// 5. Construction fidelity on the desk spec: exact case bounds, exact Gap I
//    values, exact gap floors.
bool criterion5() {
  CantorSpec sp;
  sp.B = 4.0;
  sp.s = 0.5;
  sp.M = 1;
  sp.L = 1;
  sp.n_seq = {2, 6, 14};
  sp = validate_spec(sp);
  bool ok = true;
  std::size_t n_words = 0, n_gap1 = 0;
  for (int level = 1; level <= 16 && ok; ++level) {
    enumerate_words(sp, level, 4u << 20, [&](const Word& w, const ConvergentPair& cp) {
      if (!ok) return;
      ++n_words;
      auto fl = fundamental_length(w, sp);
      ok &= check(fl.bound_ok, "SC case bound violated");
      auto g = gap(w, sp);
      ok &= check(g.floor_ok, "gap floor violated");
      ok &= check(g.G >= g.floor_ratio * fl.length, "G below floor * |J|");
      if (fl.tag == CaseTag::interior && level % 2 == 0) {
        // Gap I exact value on even orders.
        const BigInt qs = cp.q + cp.q_prev;
        const Rational gap1_closed_form = Rational(1, ((sp.M + 1) * qs + cp.q_prev) * qs);
        ok &= check(g.G == gap1_closed_form, "Gap I differs from the closed form");
        ++n_gap1;
      }
    });
  }
  std::printf("    %zu words checked, %zu exact Gap-I equalities\n", n_words, n_gap1);
  return ok && check(n_gap1 > 0, "no Gap I cases exercised");
}

// 6. Measure consistency everywhere, and the Holder floor for an L=16 spec.
bool criterion6() {
  bool ok = true;

  CantorSpec desk;
  desk.B = 4.0;
  desk.s = 0.5;
  desk.M = 1;
  desk.L = 1;
  desk.n_seq = {2, 6, 14};
  desk = validate_spec(desk);

  CantorSpec wide;
  wide.B = 4.0;
  wide.s = 0.6;
  wide.M = 2;
  wide.L = 16;
  wide.n_seq = {17, 82};
  wide = validate_spec(wide);

  auto consistent = [&](const CantorSpec& sp, int max_level) {
    for (int level = 0; level < max_level; ++level) {
      bool level_ok = true;
      enumerate_words(sp, level, 4u << 20, [&](const Word& w, const ConvergentPair&) {
        const double parent = measure(w, sp).mu.log();
        auto r = w.empty() ? digit_range(sp, 1) : admissible_children(w, sp);
        LogValue sum = LogValue::zero();
        for (std::int64_t a = r.lo; a <= r.hi; ++a) {
          Word c = w;
          c.push(a);
          sum += measure(c, sp).mu;
        }
        if (std::abs(sum.log() - parent) > 1e-12) level_ok = false;
      });
      if (!level_ok) return false;
    }
    return true;
  };
  ok &= check(consistent(desk, 9), "desk-spec measure inconsistent");
  ok &= check(consistent(wide, 5), "L=16 spec measure inconsistent");

  // Level 18 fans out across the full peak range (~4e8 words) and is past the
  // exhaustive-enumeration budget; 16 and 17 are the enumerable block-aligned
  // levels around the first peak.
  const double bound_target = wide.s - 6.0 / wide.L - wide.epsilon0 - 0.05;
  for (int level : {16, 17}) {
    auto h = holder_scan(wide, level, 0.05, 4u << 20);
    std::printf("    L=16 level %d: min exponent %.4f (floor %.4f, %zu words)\n", level,
                h.min_exponent, bound_target, h.words);
    ok &= check(h.ok, "Holder scan below the floor");
    ok &= check(h.min_exponent >= bound_target, "min exponent below s - 6/L - eps0 - 0.05");
  }
  return ok;
}

// 7. Box-counting agrees with the pressure route: tightly for the pure
//    {1,2}-alphabet set, loosely for the full construction.
bool criterion7() {
  bool ok = true;

  // {1,2}-alphabet dimension from the eigenvalue route (lambda_2(2s) = 1),
  // pinned by the depth-20 partition sums: q_{n+m} >= q_n q_m makes S_n
  // submultiplicative and Khintchine P2 makes 4 S_n supermultiplicative, so
  // the roots of S_20 = 1 and S_20 = 4 bracket the true root rigorously.
  const double eigen_root = bisect_decreasing(
      [](double s) {
        if (s == 0.0) return std::log(2.0);
        return std::log(transfer_eigenvalue(2.0 * s, 2).lambda);
      },
      0.0, 1.0, 1e-10).root;
  PressureProblem alpha_prob;
  alpha_prob.M = 2;
  alpha_prob.B = 1.0;
  alpha_prob.m = 2;
  auto depth_root = [&](double rhs_log) {
    return bisect_decreasing(
               [&](double s) {
                 PressureProblem p = alpha_prob;
                 p.s = s;
                 return partition_sum(20, p).value.log() - rhs_log;
               },
               0.0, 1.0, 1e-10)
        .root;
  };
  const double upper = depth_root(0.0);
  const double lower = depth_root(std::log(4.0));
  std::printf("    {1,2} alphabet: eigenvalue root %.6f, depth-20 bracket [%.6f, %.6f]\n",
              eigen_root, lower, upper);
  ok &= check(lower <= eigen_root && eigen_root <= upper,
              "eigenvalue root outside the depth-20 bracket");

  CantorSpec alpha2;
  alpha2.B = 4.0;
  alpha2.s = 0.5;
  alpha2.M = 2;
  alpha2.L = 1;
  alpha2 = validate_spec(alpha2);
  auto est = box_dimension_estimate(alpha2, 16, 40, 2, 40'000'000);
  std::printf("    {1,2} alphabet: box slope %.6f +- %.6f\n", est.slope, est.band);
  ok &= check(std::abs(est.slope - eigen_root) <= 0.01, "alphabet box estimate off by > 0.01");

  CantorSpec full;
  full.B = 4.0;
  full.s = 0.44;
  full.M = 2;
  full.L = 1;
  full.n_seq = {4, 9, 14, 19, 24, 29, 34};
  full = validate_spec(full);
  const double t_b = solve_dimension(4.0, 2, 2).value;
  auto est2 = box_dimension_estimate(full, 10, 34, 2, 40'000'000);
  std::printf("    construction: t_B %.6f, box slope %.6f +- %.6f (slow convergence)\n", t_b,
              est2.slope, est2.band);
  ok &= check(std::abs(est2.slope - t_b) <= 0.15, "construction box estimate off by > 0.15");
  return ok;
}

// 8. Zero-one-law Monte Carlo under the stationary digit law.
bool criterion8() {
  auto conv = monte_carlo_law(GrowthFunction::geometric(2.0), 100'000, 1000, 0,
                              LawTag::borel_bernstein);
  auto div = monte_carlo_law(GrowthFunction::power(1.0), 100'000, 1000, 0,
                             LawTag::borel_bernstein);
  std::printf("    Phi=2^n: fraction %.2e (%s); Phi=n: fraction %.4f (%s)\n", conv.fraction,
              conv.series_diagnosis.c_str(), div.fraction, div.series_diagnosis.c_str());
  bool ok = check(conv.fraction <= 1e-3, "convergent-series fraction above 1e-3");
  ok &= check(conv.series_diagnosis == "convergent", "series diagnosis wrong for 2^n");
  ok &= check(div.fraction >= 0.5, "divergent-series fraction below 0.5");
  ok &= check(div.series_diagnosis == "divergent", "series diagnosis wrong for n");
  return ok;
}

// 9. The B = infinity regime formula 1/(1+b), bit-exact endpoints.
bool criterion9() {
  const auto p = dimension_predict(GrowthFunction::doubly(3.0), 20);
  std::printf("    Phi=e^{3^n}: regime %s, value %.17g\n", p.regime.c_str(), p.value);
  bool ok = check(p.value == 0.25, "e^{3^n} prediction not exactly 0.25");

  std::vector<double> lv;
  for (int n = 1; n <= 1000; ++n)
    lv.push_back(std::exp(static_cast<double>(n) * static_cast<double>(n)));
  const auto q = dimension_predict(GrowthFunction::table(std::move(lv)), 20);
  std::printf("    Phi=e^{e^{n^2}}: regime %s, value %.17g\n", q.regime.c_str(), q.value);
  ok &= check(q.value == 0.0, "b = infinity surrogate prediction not 0");
  return ok;
}

// 10. Sampled construction points land in F(Phi) with events exactly at {n_k}.
bool criterion10() {
  CantorSpec sp;
  sp.B = 4.0;
  sp.s = 0.5;
  sp.M = 1;
  sp.L = 1;
  sp.n_seq = {4, 9, 14};
  sp = validate_spec(sp);
  auto phi = GrowthFunction::geometric(4.0);
  const int depth = 16, N = 15;
  bool ok = true;
  for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
    auto pt = sample_point(sp, depth, seed);
    ok &= check(is_admissible(pt.word, sp), "sampled word inadmissible");
    auto v = membership(pt.word, phi, SetTag::F, N);
    ok &= check(v.outcome == MembershipOutcome::events_seen, "no F events / tail violated");
    ok &= check(v.event_indices == std::vector<int>{4, 9, 14}, "events not exactly at {n_k}");
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) which = std::atoi(argv[++i]);
  }
  using Fn = bool (*)();
  const Fn fns[10] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                      criterion6, criterion7, criterion8, criterion9, criterion10};
  const char* names[10] = {
      "potential identity (m=2 vs squared path)",
      "partition sum vs eigenvalue pressure",
      "B->1 and B->infinity limits, monotonicity, s_B <= t_B",
      "exact continued-fraction identities",
      "construction lengths, Gap I, gap floors",
      "measure consistency and Holder floor",
      "box-counting cross-check",
      "zero-one-law Monte Carlo",
      "B = infinity regime formula",
      "sample-membership loop",
  };
  bool all = true;
  for (int i = 1; i <= 10; ++i) {
    if (which != 0 && which != i) continue;
    bool ok = false;
    try {
      ok = fns[i - 1]();
    } catch (const std::exception& e) {
      std::printf("    exception: %s\n", e.what());
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", i, names[i - 1]);
    all &= ok;
  }
  return all ? 0 : 1;
}
