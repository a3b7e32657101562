#pragma once

#include "cfdim/cf_core.hpp"
#include "cfdim/pressure.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cfdim {

// A growth function n -> Phi(n) > 1, evaluated in the log domain throughout
// so that doubly-exponential growth never overflows.
class GrowthFunction {
 public:
  enum class Form { power, geometric, doubly_exponential, table };

  // Phi(n) = scale * n^exponent.
  static GrowthFunction power(double exponent, double scale = 1.0);
  // Phi(n) = base^n.
  static GrowthFunction geometric(double base);
  // Phi(n) = exp(c * b^n).
  static GrowthFunction doubly(double b, double c = 1.0);
  // Explicit table of log Phi(n), n = 1-based.
  static GrowthFunction table(std::vector<double> log_values);

  Form form() const { return form_; }
  std::string describe() const;

  double log_phi(int n) const;  // may overflow to +inf for doubly forms
  // log Phi(n) / n and log log Phi(n) / n, in algebraically stable form (the
  // naive multiply-then-divide drifts by an ulp for closed forms).
  double log_ratio(int n) const;
  double loglog_ratio(int n) const;

 private:
  Form form_ = Form::geometric;
  double a_ = 2.0, b_ = 1.0;
  std::vector<double> table_;
};

struct GrowthExponents {
  double logB = 0.0;
  double logb = 0.0;
  bool B_infinite = false;
  bool B_one = false;  // ratios decay towards 0: the solver refuses this regime
  bool b_infinite = false;
  int window_lo = 0, window_hi = 0;
  bool liminf_caveat = true;  // a finite window only upper-bounds a liminf
};

GrowthExponents growth_exponents(const GrowthFunction& phi, int N);

enum class SetTag { E1, E2, F };

enum class MembershipOutcome { events_seen, no_events, tail_condition_violated };

struct MembershipVerdict {
  SetTag set = SetTag::E2;
  int N = 0;
  std::vector<int> event_indices;
  MembershipOutcome outcome = MembershipOutcome::no_events;
};

MembershipVerdict membership(const Word& digits, const GrowthFunction& phi, SetTag set,
                             int N, double tail_fraction = 0.5);

struct DirichletSpec {
  std::function<double(double)> psi;
  double t0 = 2.0;
  double w = 1.618033988749895;  // q_n >= golden^{n-1} classically
  double W = 4.0;
};

enum class DirichletVerdict { improvable_evidence, non_improvable_evidence, inconclusive };

DirichletVerdict dirichlet_classify(const Word& digits, const DirichletSpec& spec, int N);

enum class LawTag { borel_bernstein, kleinbock_wadleigh };

struct MonteCarloReport {
  LawTag law = LawTag::borel_bernstein;
  std::string phi;
  std::uint64_t samples = 0;
  int N = 0;
  double fraction = 0.0;             // samples with an event in [N/2, N]
  std::string series_diagnosis;      // "convergent" | "divergent"
};

MonteCarloReport monte_carlo_law(const GrowthFunction& phi, std::uint64_t samples, int N,
                                 std::uint64_t seed, LawTag law);

struct DimensionPrediction {
  double value = 0.0;
  std::string regime;  // "finite-B" | "infinite-B"
  GrowthExponents exponents;
  bool used_solver = false;
  DimensionResult solver;
};

DimensionPrediction dimension_predict(const GrowthFunction& phi, std::int64_t M,
                                      double tol = 1e-10, int N = 1000,
                                      const TransferOptions& opts = {});

}  // namespace cfdim
