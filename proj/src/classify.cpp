#include "cfdim/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfdim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRatioCeiling = 200.0;
constexpr double kEventEps = 1e-9;  // log-domain slack so exact-equality events count

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

GrowthFunction GrowthFunction::power(double exponent, double scale) {
  if (scale <= 0) throw std::domain_error("GrowthFunction::power: scale must be positive");
  GrowthFunction g;
  g.form_ = Form::power;
  g.a_ = scale;
  g.b_ = exponent;
  return g;
}

GrowthFunction GrowthFunction::geometric(double base) {
  if (base <= 1.0) throw std::domain_error("GrowthFunction::geometric: base must exceed 1");
  GrowthFunction g;
  g.form_ = Form::geometric;
  g.a_ = base;
  return g;
}

GrowthFunction GrowthFunction::doubly(double b, double c) {
  if (b <= 0 || c <= 0) throw std::domain_error("GrowthFunction::doubly: b, c must be positive");
  GrowthFunction g;
  g.form_ = Form::doubly_exponential;
  g.a_ = c;
  g.b_ = b;
  return g;
}

GrowthFunction GrowthFunction::table(std::vector<double> log_values) {
  GrowthFunction g;
  g.form_ = Form::table;
  g.table_ = std::move(log_values);
  return g;
}

std::string GrowthFunction::describe() const {
  std::ostringstream os;
  switch (form_) {
    case Form::power: os << a_ << "*n^" << b_; break;
    case Form::geometric: os << a_ << "^n"; break;
    case Form::doubly_exponential: os << "exp(" << a_ << "*" << b_ << "^n)"; break;
    case Form::table: os << "table[" << table_.size() << "]"; break;
  }
  return os.str();
}

double GrowthFunction::log_phi(int n) const {
  if (n < 1) throw std::domain_error("GrowthFunction: n must be >= 1");
  switch (form_) {
    case Form::power: return std::log(a_) + b_ * std::log(static_cast<double>(n));
    case Form::geometric: return n * std::log(a_);
    case Form::doubly_exponential: return a_ * std::pow(b_, static_cast<double>(n));
    case Form::table:
      if (static_cast<std::size_t>(n) > table_.size())
        throw std::domain_error("GrowthFunction: n beyond table");
      return table_[n - 1];
  }
  return 0.0;
}

double GrowthFunction::log_ratio(int n) const {
  switch (form_) {
    case Form::geometric: return std::log(a_);  // exact for every n
    default: return log_phi(n) / n;
  }
}

double GrowthFunction::loglog_ratio(int n) const {
  switch (form_) {
    case Form::doubly_exponential:
      // log log Phi = log c + n log b; dividing term-wise keeps the constant
      // form exact instead of drifting an ulp through n*log(b)/n.
      return std::log(a_) / n + std::log(b_);
    default: {
      const double lp = log_phi(n);
      if (lp <= 0) throw std::domain_error("GrowthFunction: Phi(n) <= 1 (hypothesis violated)");
      return std::log(lp) / n;
    }
  }
}

GrowthExponents growth_exponents(const GrowthFunction& phi, int N) {
  if (N < 10) throw std::domain_error("growth_exponents: N must be >= 10");
  GrowthExponents out;
  out.window_lo = N / 2;
  out.window_hi = N;
  double logB = kInf, logb = kInf;
  for (int n = out.window_lo; n <= out.window_hi; ++n) {
    if (!(phi.log_phi(n) > 0))
      throw std::domain_error("growth_exponents: Phi(n) <= 1 (hypothesis violated)");
    logB = std::min(logB, phi.log_ratio(n));
    logb = std::min(logb, phi.loglog_ratio(n));
  }
  out.logB = logB;
  out.logb = logb;
  const double r_lo = phi.log_ratio(out.window_lo);
  const double r_hi = phi.log_ratio(out.window_hi);
  const double ll_lo = phi.loglog_ratio(out.window_lo);
  const double ll_hi = phi.loglog_ratio(out.window_hi);
  const bool r_growing = !std::isfinite(r_hi) || (std::isfinite(r_lo) && r_hi >= 1.5 * r_lo &&
                                                  r_hi > r_lo + 1e-12);
  const bool ll_growing = !std::isfinite(ll_hi) || (std::isfinite(ll_lo) && ll_hi >= 1.5 * ll_lo &&
                                                    ll_hi > ll_lo + 1e-12);
  out.B_infinite = !std::isfinite(logB) || logB > kRatioCeiling || r_growing;
  out.b_infinite = !std::isfinite(logb) || logb > kRatioCeiling || ll_growing;
  out.B_one = (logB < 1e-9) || (logB < 0.1 && std::isfinite(r_lo) && r_hi < 0.75 * r_lo);
  return out;
}

MembershipVerdict membership(const Word& digits, const GrowthFunction& phi, SetTag set,
                             int N, double tail_fraction) {
  const int need = (set == SetTag::E1) ? N : N + 1;
  if (static_cast<int>(digits.size()) < need)
    throw std::domain_error("membership: not enough digits for the truncation");
  if (tail_fraction <= 0 || tail_fraction >= 1)
    throw std::domain_error("membership: tail_fraction must lie in (0,1)");
  MembershipVerdict v;
  v.set = set;
  v.N = N;
  const int scan_hi = (set == SetTag::E1) ? N : N - 1;
  for (int n = 1; n <= scan_hi; ++n) {
    double lhs = std::log(static_cast<double>(digits[n - 1]));
    if (set != SetTag::E1) lhs += std::log(static_cast<double>(digits[n]));
    if (lhs >= phi.log_phi(n) - kEventEps) v.event_indices.push_back(n);
  }
  bool tail_violated = false;
  if (set == SetTag::F) {
    const int tail_lo = std::max(1, static_cast<int>(std::ceil(N * (1.0 - tail_fraction))));
    for (int n = tail_lo; n <= N - 1; ++n) {
      const double next = std::log(static_cast<double>(digits[n]));
      if (next >= phi.log_phi(n) - kEventEps) { tail_violated = true; break; }
    }
  }
  if (tail_violated) v.outcome = MembershipOutcome::tail_condition_violated;
  else if (!v.event_indices.empty()) v.outcome = MembershipOutcome::events_seen;
  else v.outcome = MembershipOutcome::no_events;
  return v;
}

DirichletVerdict dirichlet_classify(const Word& digits, const DirichletSpec& spec, int N) {
  if (!spec.psi) throw std::domain_error("dirichlet_classify: psi required");
  if (!(spec.W > spec.w && spec.w > 1.0))
    throw std::domain_error("dirichlet_classify: need W > w > 1");
  if (static_cast<int>(digits.size()) < N + 1)
    throw std::domain_error("dirichlet_classify: not enough digits");

  auto phi_of_t = [&](double t) {
    t = std::min(t, 1e300);
    t = std::max(t, spec.t0);
    const double tp = t * spec.psi(t);
    if (!(tp < 1.0))
      throw std::domain_error("dirichlet_classify: hypothesis t*psi(t) < 1 violated");
    return tp / (1.0 - tp);
  };
  // Hypothesis sampled across the queried range.
  phi_of_t(spec.t0);

  const int lo = std::max(1, N / 2);
  bool cond_ii = false;
  bool cond_i = true;
  for (int n = lo; n <= N; ++n) {
    const double prod = static_cast<double>(digits[n - 1]) * static_cast<double>(digits[n]);
    if (prod > phi_of_t(std::pow(spec.W, n))) cond_ii = true;
    if (!(prod <= phi_of_t(std::pow(spec.w, n)) / 4.0)) cond_i = false;
  }
  if (cond_ii) return DirichletVerdict::non_improvable_evidence;
  if (cond_i) return DirichletVerdict::improvable_evidence;
  return DirichletVerdict::inconclusive;
}

MonteCarloReport monte_carlo_law(const GrowthFunction& phi, std::uint64_t samples, int N,
                                 std::uint64_t seed, LawTag law) {
  if (samples < 1 || N < 2) throw std::domain_error("monte_carlo_law: bad parameters");
  MonteCarloReport rep;
  rep.law = law;
  rep.phi = phi.describe();
  rep.samples = samples;
  rep.N = N;

  const int lo = N / 2;
  const bool pair_law = (law == LawTag::kleinbock_wadleigh);
  // Precompute log Phi over the window.
  std::vector<double> lphi(N - lo + 1);
  for (int n = lo; n <= N; ++n) lphi[n - lo] = phi.log_phi(n);

  std::int64_t hits = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : hits) schedule(static)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
    std::uint64_t state = splitmix64(seed ^ static_cast<std::uint64_t>(i));
    auto uniform = [&]() {
      state = splitmix64(state);
      return std::ldexp(static_cast<double>(state >> 11), -53);
    };
    // Gauss-Kuzmin digit: a = floor(1/(2^u - 1)).
    auto draw_log_digit = [&]() {
      const double u = uniform();
      const double a = std::floor(1.0 / (std::exp2(u) - 1.0));
      return std::log(std::min(std::max(a, 1.0), 1e18));
    };
    bool hit = false;
    double prev = pair_law ? draw_log_digit() : 0.0;
    for (int n = lo; n <= N; ++n) {
      const double cur = draw_log_digit();
      const double lhs = pair_law ? prev + cur : cur;
      if (lhs >= lphi[n - lo]) { hit = true; break; }
      prev = cur;
    }
    if (hit) ++hits;
  }
  rep.fraction = static_cast<double>(hits) / static_cast<double>(samples);

  // Series diagnosis: sum 1/Phi (Borel-Bernstein) or log Phi / Phi (KW);
  // convergent when the second half adds a negligible amount.
  double s_half = 0.0, s_full = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double lp = phi.log_phi(n);
    const double term = pair_law ? lp * std::exp(-lp) : std::exp(-lp);
    s_full += term;
    if (n <= N / 2) s_half = s_full;
  }
  const bool convergent = (s_full - s_half) < 0.05 * std::max(s_full, 1e-300);
  rep.series_diagnosis = convergent ? "convergent" : "divergent";
  return rep;
}

DimensionPrediction dimension_predict(const GrowthFunction& phi, std::int64_t M, double tol,
                                      int N, const TransferOptions& opts) {
  DimensionPrediction out;
  out.exponents = growth_exponents(phi, N);
  if (out.exponents.B_one)
    throw std::domain_error("dimension_predict: B = 1 regime refused (B must exceed 1)");
  if (out.exponents.B_infinite) {
    out.regime = "infinite-B";
    out.value = out.exponents.b_infinite ? 0.0 : 1.0 / (1.0 + std::exp(out.exponents.logb));
    return out;
  }
  out.regime = "finite-B";
  out.used_solver = true;
  out.solver = solve_dimension(std::exp(out.exponents.logB), M, /*m=*/2, tol, opts);
  out.value = out.solver.value;
  return out;
}

}  // namespace cfdim
