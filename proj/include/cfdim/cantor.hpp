#pragma once

#include "cfdim/cf_core.hpp"
#include "cfdim/numeric.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfdim {

// Parameters of the constructed set F_M(B) together with derived quantities
// filled in by validate_spec. An empty n_seq degenerates to the pure
// bounded-alphabet set (digits {1..M} everywhere, no peaks).
struct CantorSpec {
  double B = 4.0;
  double s = 0.5;
  std::int64_t M = 1;
  int L = 1;
  std::vector<int> n_seq;  // peak positions n_1 < n_2 < ...
  double epsilon0 = 0.0;   // 0 -> computed default
  int k0 = 1;              // the epsilon0 sparsity condition applies for k > k0

  // Derived (validate_spec):
  bool validated = false;
  double alpha = 0.0;                  // B^s
  std::vector<int> m_seq;              // m_k with m_k L = n_k - n_{k-1} - 1
  std::vector<std::int64_t> peak_digit;     // round(2 alpha^{n_k}) where representable
  std::vector<std::int64_t> range_lo, range_hi;  // digits at position n_k + 1
  int max_enumerable_depth = 0;        // digits past this depth overflow int64
};

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<std::string> v);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Checks every invariant, computes the derived fields; throws SpecError with
// the full violation list on failure.
CantorSpec validate_spec(CantorSpec spec);

// n_k generator: smallest n >= gamma * n_{k-1} with L | (n - n_{k-1} - 1),
// seeded at n_1 (which must satisfy L | n_1 - 1).
std::vector<int> make_n_seq(int L, int n1, int count, double gamma = 4.0);

enum class PosKind { interior, peak, range };

struct DigitRange {
  std::int64_t lo = 1, hi = 1;
  std::int64_t count() const { return hi - lo + 1; }
};

PosKind position_kind(const CantorSpec& spec, int pos);           // pos is 1-based
DigitRange digit_range(const CantorSpec& spec, int pos);          // admissible digits
DigitRange admissible_children(const Word& w, const CantorSpec& spec);
bool is_admissible(const Word& w, const CantorSpec& spec);

// Structural case of the fundamental cylinder J_n, fixed by the position of
// n relative to n_seq: interior, the single-peak-child level n = n_k - 1, or
// the peak level n = n_k whose children are the wide digit range.
enum class CaseTag { interior, pre_peak, peak };

CaseTag case_tag(const CantorSpec& spec, int n);

struct FundamentalLength {
  Rational length;        // exact telescoping closed form
  CaseTag tag = CaseTag::interior;
  Rational bound_lo, bound_hi;  // the a-priori two-sided case bound
  bool bound_ok = false;
};

FundamentalLength fundamental_length(const Word& w, const CantorSpec& spec);

// Value-ordered hull of J_n(w) (its child cylinders are contiguous).
struct Hull {
  Rational left, right;
};
Hull fundamental_hull(const Word& w, const CantorSpec& spec);

enum class GapSideKind {
  neighbor_exact,    // exact distance to the admissible sibling cylinder
  margin_bound,      // distance to the enclosing I_n boundary (lower bound)
  virtual_neighbor,  // distance to the would-be sibling (region is F-free)
  absent,            // no digit below 1 exists on this side
};

struct GapSide {
  Rational value;
  GapSideKind kind = GapSideKind::absent;
};

struct GapResult {
  GapSide left, right;   // in value order
  Rational G;            // min of the available sides
  CaseTag tag = CaseTag::interior;
  bool one_sided = false;
  Rational floor_ratio;  // the required G/|J| floor for this case
  bool floor_ok = false;
};

GapResult gap(const Word& w, const CantorSpec& spec);

struct MeasureNode {
  Word word;
  LogValue mu;
  LogValue normalizer;  // w_L, the full-block normalizer
};

// The natural probability measure on the construction; literal_weights applies
// the non-conserving peak/range factors instead (for comparison only).
MeasureNode measure(const Word& w, const CantorSpec& spec, bool literal_weights = false);

// Depth-first enumeration of admissible words of the given length; visit is
// called once per word. Throws on budget exhaustion or depth past the
// int64-representable range.
void enumerate_words(const CantorSpec& spec, int level, std::uint64_t budget,
                     const std::function<void(const Word&, const ConvergentPair&)>& visit);

struct HolderScan {
  double min_exponent = 0.0;  // min over level words of log mu / log |J|
  double bound = 0.0;         // s - 6/L - epsilon0 - slack
  bool ok = false;
  std::size_t words = 0;
};

HolderScan holder_scan(const CantorSpec& spec, int level, double slack = 0.05,
                       std::uint64_t budget = 10'000'000);

struct SamplePoint {
  Word word;
  double x = 0.0;  // cylinder midpoint
};

SamplePoint sample_point(const CantorSpec& spec, int depth, std::uint64_t seed);

struct BoxDimensionEstimate {
  double slope = 0.0;
  double band = 0.0;  // standard error of the regression slope
  std::vector<double> deltas;
  std::vector<std::uint64_t> counts;
};

// Least-squares slope of log N(delta) vs -log delta over the ladder
// delta_j = 2^-j, j = j_lo, j_lo+step, ..., j_hi; N(delta) counts the stopped
// cover by maximal fundamental cylinders of length <= delta.
BoxDimensionEstimate box_dimension_estimate(const CantorSpec& spec, int j_lo, int j_hi,
                                            int step = 2,
                                            std::uint64_t budget = 10'000'000);

}  // namespace cfdim
