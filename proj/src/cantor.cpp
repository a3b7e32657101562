#include "cfdim/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

namespace cfdim {

namespace {

constexpr std::int64_t kDigitLimit = 9'000'000'000'000'000'000LL;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool near_integer(double x, std::int64_t& out) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9 && std::abs(r) < 9.0e18) {
    out = static_cast<std::int64_t>(r);
    return true;
  }
  return false;
}

BigInt ipow(std::int64_t base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Index k (0-based) with n_seq[k] == pos, or -1.
int peak_index(const std::vector<int>& n_seq, int pos) {
  auto it = std::lower_bound(n_seq.begin(), n_seq.end(), pos);
  if (it != n_seq.end() && *it == pos) return static_cast<int>(it - n_seq.begin());
  return -1;
}

}  // namespace

SpecError::SpecError(std::vector<std::string> v)
    : std::runtime_error(v.empty() ? "invalid spec" : v.front()), violations_(std::move(v)) {}

std::vector<int> make_n_seq(int L, int n1, int count, double gamma) {
  if (L < 1 || n1 < 1 || count < 1 || gamma <= 1.0)
    throw std::domain_error("make_n_seq: bad parameters");
  if ((n1 - 1) % L != 0)
    throw std::domain_error("make_n_seq: n1 - 1 must be divisible by L");
  std::vector<int> out{n1};
  while (static_cast<int>(out.size()) < count) {
    const int prev = out.back();
    int n = static_cast<int>(std::ceil(gamma * prev));
    // Adjust upward to the divisibility constraint L | n - prev - 1.
    const int rem = (n - prev - 1) % L;
    if (rem != 0) n += L - rem;
    out.push_back(n);
  }
  return out;
}

CantorSpec validate_spec(CantorSpec spec) {
  std::vector<std::string> v;
  if (!(spec.B > 1.0)) v.push_back("B must exceed 1");
  if (!(spec.s > 0.0 && spec.s < 1.0)) v.push_back("s must lie in (0,1)");
  if (spec.M < 1) v.push_back("M must be >= 1");
  if (spec.L < 1) v.push_back("L must be >= 1");
  if (spec.k0 < 0) v.push_back("k0 must be >= 0");
  if (!v.empty()) throw SpecError(std::move(v));

  spec.alpha = std::pow(spec.B, spec.s);
  spec.m_seq.clear();
  spec.peak_digit.clear();
  spec.range_lo.clear();
  spec.range_hi.clear();
  spec.max_enumerable_depth = std::numeric_limits<int>::max();

  int prev = 0;
  for (std::size_t k = 0; k < spec.n_seq.size(); ++k) {
    const int n = spec.n_seq[k];
    if (n <= prev) v.push_back("n_seq must be strictly increasing and positive");
    const int gapn = n - prev - 1;
    if (gapn < 0 || gapn % spec.L != 0) {
      std::ostringstream os;
      os << "n_" << (k + 1) << " - n_" << k << " - 1 = " << gapn
         << " is not divisible by L = " << spec.L;
      v.push_back(os.str());
    } else {
      if (k > 0 && gapn < spec.L) v.push_back("consecutive peaks too close (empty stretch)");
      spec.m_seq.push_back(gapn / spec.L);
    }
    prev = n;
  }
  if (!v.empty()) throw SpecError(std::move(v));

  // epsilon0 default: max (n_{k-1}+1)/n_k plus margin.
  if (spec.epsilon0 <= 0.0) {
    double e = 0.0;
    int p = 0;
    for (int n : spec.n_seq) {
      e = std::max(e, (p + 1.0) / n);
      p = n;
    }
    spec.epsilon0 = e + 0.01;
  }
  // Sparsity condition m_k L / n_k >= 1 - epsilon0 beyond k0.
  for (std::size_t k = 0; k < spec.n_seq.size(); ++k) {
    if (static_cast<int>(k) + 1 <= spec.k0) continue;
    const double ratio = static_cast<double>(spec.m_seq[k]) * spec.L / spec.n_seq[k];
    if (ratio < 1.0 - spec.epsilon0 - 1e-12) {
      std::ostringstream os;
      os << "sparsity m_k L / n_k = " << ratio << " < 1 - epsilon0 at k = " << (k + 1);
      v.push_back(os.str());
    }
  }

  // Peak digit round(2 alpha^{n_k}) and the range [ceil(B^n/(2 alpha^n)),
  // floor(B^n/alpha^n)], exact when B and alpha are integers.
  std::int64_t B_int = 0, a_int = 0;
  const bool exact = near_integer(spec.B, B_int) && near_integer(spec.alpha, a_int);
  const double logB = std::log(spec.B);
  for (std::size_t k = 0; k < spec.n_seq.size(); ++k) {
    const int n = spec.n_seq[k];
    std::int64_t c = -1, lo = -1, hi = -1;
    bool fits = true;
    if (exact) {
      const BigInt an = ipow(a_int, n);
      const BigInt bn = ipow(B_int, n);
      const BigInt cc = 2 * an;
      const BigInt ll = (bn + cc - 1) / cc;  // ceil
      const BigInt hh = bn / an;             // floor
      if (cc > kDigitLimit || hh > kDigitLimit) {
        fits = false;
      } else {
        c = static_cast<std::int64_t>(cc);
        lo = static_cast<std::int64_t>(ll);
        hi = static_cast<std::int64_t>(hh);
      }
    } else {
      const long double la = static_cast<long double>(n) * spec.s * logB;
      const long double lr = static_cast<long double>(n) * (1.0 - spec.s) * logB;
      if (la + std::log(2.0L) > std::log(static_cast<long double>(kDigitLimit)) ||
          lr > std::log(static_cast<long double>(kDigitLimit))) {
        fits = false;
      } else {
        const long double an = std::exp(la);
        const long double R = std::exp(lr);
        c = static_cast<std::int64_t>(std::llround(2.0L * an));
        lo = static_cast<std::int64_t>(std::ceil(R / 2.0L - 1e-9L));
        hi = static_cast<std::int64_t>(std::floor(R + 1e-9L));
      }
    }
    if (fits) {
      if (c < 1 || lo > hi || lo < 1) {
        std::ostringstream os;
        os << "empty peak digit range at n_" << (k + 1) << " = " << n;
        v.push_back(os.str());
      }
    } else {
      spec.max_enumerable_depth = std::min(spec.max_enumerable_depth, n - 1);
      // Analytic non-emptiness: the range has length B^{n(1-s)}/2 >= 2, so it
      // contains an integer.
      if (n * (1.0 - spec.s) * logB < std::log(4.0))
        v.push_back("cannot certify non-empty peak range past the representable depth");
    }
    spec.peak_digit.push_back(c);
    spec.range_lo.push_back(lo);
    spec.range_hi.push_back(hi);
  }
  if (!v.empty()) throw SpecError(std::move(v));
  spec.validated = true;
  return spec;
}

PosKind position_kind(const CantorSpec& spec, int pos) {
  if (pos < 1) throw std::domain_error("position_kind: pos must be >= 1");
  if (peak_index(spec.n_seq, pos) >= 0) return PosKind::peak;
  if (pos >= 2 && peak_index(spec.n_seq, pos - 1) >= 0) return PosKind::range;
  return PosKind::interior;
}

DigitRange digit_range(const CantorSpec& spec, int pos) {
  if (!spec.validated) throw std::logic_error("digit_range: spec not validated");
  if (pos < 1) throw std::domain_error("digit_range: pos must be >= 1");
  int k = peak_index(spec.n_seq, pos);
  if (k >= 0) {
    if (spec.peak_digit[k] < 0)
      throw std::runtime_error("digit_range: peak digit past the int64-representable depth");
    return {spec.peak_digit[k], spec.peak_digit[k]};
  }
  if (pos >= 2) {
    k = peak_index(spec.n_seq, pos - 1);
    if (k >= 0) {
      if (spec.range_lo[k] < 0)
        throw std::runtime_error("digit_range: range digits past the int64-representable depth");
      return {spec.range_lo[k], spec.range_hi[k]};
    }
  }
  return {1, spec.M};
}

DigitRange admissible_children(const Word& w, const CantorSpec& spec) {
  return digit_range(spec, static_cast<int>(w.size()) + 1);
}

bool is_admissible(const Word& w, const CantorSpec& spec) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto r = digit_range(spec, static_cast<int>(i) + 1);
    if (w.digits[i] < r.lo || w.digits[i] > r.hi) return false;
  }
  return true;
}

CaseTag case_tag(const CantorSpec& spec, int n) {
  switch (position_kind(spec, n + 1)) {
    case PosKind::peak: return CaseTag::pre_peak;
    case PosKind::range: return CaseTag::peak;
    default: return CaseTag::interior;
  }
}

namespace {

// Boundary point x(a) = (a p + p') / (a q + q'): the edge between the child
// cylinders with digits a-1 and a.
Rational child_edge(const ConvergentPair& c, std::int64_t a) {
  return Rational(a * c.p + c.p_prev, a * c.q + c.q_prev);
}

Hull hull_of(const ConvergentPair& c, const DigitRange& r) {
  Rational e1 = child_edge(c, r.lo);
  Rational e2 = child_edge(c, r.hi + 1);
  if (e1 > e2) std::swap(e1, e2);
  return {std::move(e1), std::move(e2)};
}

}  // namespace

Hull fundamental_hull(const Word& w, const CantorSpec& spec) {
  const auto c = convergent_pair(w);
  const auto r = digit_range(spec, static_cast<int>(w.size()) + 1);
  return hull_of(c, r);
}

FundamentalLength fundamental_length(const Word& w, const CantorSpec& spec) {
  if (w.empty()) throw std::domain_error("fundamental_length: word must be non-empty");
  if (!is_admissible(w, spec))
    throw std::domain_error("fundamental_length: word not admissible");
  const int n = static_cast<int>(w.size());
  const auto c = convergent_pair(w);
  const auto r = digit_range(spec, n + 1);

  FundamentalLength out;
  out.tag = case_tag(spec, n);
  out.length = Rational(r.hi + 1 - r.lo,
                        (r.lo * c.q + c.q_prev) * ((r.hi + 1) * c.q + c.q_prev));

  // A-priori two-sided case bounds. Exact rationals when alpha and B are
  // integers; double-precision surrogates otherwise.
  std::int64_t B_int = 0, a_int = 0;
  const bool exact = near_integer(spec.B, B_int) && near_integer(spec.alpha, a_int);
  const BigInt q2 = c.q * c.q;
  switch (out.tag) {
    case CaseTag::interior:
      out.bound_lo = Rational(1, 6 * q2);
      out.bound_hi = Rational(1, q2);
      break;
    case CaseTag::pre_peak: {
      // Peak at n+1; A = alpha^{n+1}.
      if (exact) {
        const BigInt A2 = ipow(a_int, n + 1) * ipow(a_int, n + 1);
        out.bound_lo = Rational(1, 16 * A2 * q2);
        out.bound_hi = Rational(1, 2 * A2 * q2);
      } else {
        const double A2 = std::pow(spec.alpha, 2.0 * (n + 1));
        out.bound_lo = Rational(1.0 / (16.0 * A2)) / Rational(q2);
        out.bound_hi = Rational(1.0 / (2.0 * A2)) / Rational(q2);
      }
      break;
    }
    case CaseTag::peak: {
      const BigInt qp2 = c.q_prev * c.q_prev;
      if (exact) {
        const BigInt AB = ipow(a_int, n) * ipow(B_int, n);
        out.bound_lo = Rational(1, 32 * AB * qp2);
        out.bound_hi = Rational(1, 2 * AB * qp2);
      } else {
        const double AB = std::pow(spec.alpha * spec.B, static_cast<double>(n));
        out.bound_lo = Rational(1.0 / (32.0 * AB)) / Rational(qp2);
        out.bound_hi = Rational(1.0 / (2.0 * AB)) / Rational(qp2);
      }
      break;
    }
  }
  out.bound_ok = (out.length >= out.bound_lo && out.length <= out.bound_hi);
  return out;
}

GapResult gap(const Word& w, const CantorSpec& spec) {
  if (w.empty()) throw std::domain_error("gap: word must be non-empty");
  if (!is_admissible(w, spec)) throw std::domain_error("gap: word not admissible");
  const int n = static_cast<int>(w.size());
  const auto dr_last = digit_range(spec, n);
  const auto children = digit_range(spec, n + 1);
  const std::int64_t d = w.digits[n - 1];

  const auto c = convergent_pair(w);
  const Hull h = hull_of(c, children);
  const auto iv = cylinder_interval(w);
  const Rational margin_left = h.left - iv.left;
  const Rational margin_right = iv.right - h.right;

  GapResult out;
  out.tag = case_tag(spec, n);

  struct SideInfo {
    bool have = false;
    Rational dist;
    bool admissible = false;
    bool is_left = false;  // neighbor sits left of the hull
  };
  SideInfo sides[2];
  int si = 0;
  for (int delta : {-1, +1}) {
    const std::int64_t nd = d + delta;
    if (nd < 1) { ++si; continue; }
    Word wn = w;
    wn.digits[n - 1] = nd;
    const auto cn = convergent_pair(wn);
    const Hull hn = hull_of(cn, children);
    SideInfo info;
    info.have = true;
    info.admissible = (nd >= dr_last.lo && nd <= dr_last.hi);
    if (hn.right <= h.left) {
      info.is_left = true;
      info.dist = h.left - hn.right;
    } else {
      info.is_left = false;
      info.dist = hn.left - h.right;
    }
    sides[si++] = info;
  }

  auto resolve = [&](bool left_side) -> GapSide {
    const Rational& margin = left_side ? margin_left : margin_right;
    const SideInfo* nb = nullptr;
    for (const auto& s : sides)
      if (s.have && s.is_left == left_side) nb = &s;
    GapSide g;
    if (nb && nb->admissible) {
      g.kind = GapSideKind::neighbor_exact;
      g.value = nb->dist;
    } else if (margin > 0) {
      g.kind = GapSideKind::margin_bound;
      g.value = margin;
    } else if (nb) {
      g.kind = GapSideKind::virtual_neighbor;
      g.value = nb->dist;
    } else {
      g.kind = GapSideKind::absent;
    }
    return g;
  };
  out.left = resolve(true);
  out.right = resolve(false);

  bool first = true;
  for (const GapSide* g : {&out.left, &out.right}) {
    if (g->kind == GapSideKind::absent) continue;
    if (first || g->value < out.G) out.G = g->value;
    first = false;
  }
  out.one_sided = (out.left.kind != GapSideKind::neighbor_exact ||
                   out.right.kind != GapSideKind::neighbor_exact);

  switch (out.tag) {
    case CaseTag::interior: out.floor_ratio = Rational(1, 2 * spec.M); break;
    case CaseTag::pre_peak: out.floor_ratio = Rational(1, 2); break;
    case CaseTag::peak: out.floor_ratio = Rational(1, 4); break;
  }
  const Rational jlen = Rational(children.hi + 1 - children.lo,
                                 (children.lo * c.q + c.q_prev) *
                                     ((children.hi + 1) * c.q + c.q_prev));
  out.floor_ok = !first && (out.G >= out.floor_ratio * jlen);
  return out;
}

// --- Measure ----------------------------------------------------------------

namespace {

// Interior positions tile into blocks of length L from each stretch start;
// the trailing block of a stretch between peaks is one digit short.
struct BlockInfo {
  int start = 0;     // first position of the block
  int full_len = 0;  // L, or L-1 for the trailing short block
};

BlockInfo block_of(const CantorSpec& spec, int pos) {
  // Find the stretch containing pos.
  int stretch_start = 1;
  int stretch_end = std::numeric_limits<int>::max();
  for (std::size_t k = 0; k < spec.n_seq.size(); ++k) {
    if (pos < spec.n_seq[k]) {
      stretch_end = spec.n_seq[k] - 1;
      break;
    }
    stretch_start = spec.n_seq[k] + 2;
  }
  const int off = pos - stretch_start;
  BlockInfo b;
  b.start = stretch_start + spec.L * (off / spec.L);
  b.full_len = std::min(spec.L, stretch_end - b.start + 1);
  return b;
}

// log of the block normalizer w_l = sum over blocks of (alpha^l q_l^2)^{-s}.
double block_normalizer_log(const CantorSpec& spec, int len) {
  if (len == 0) return 0.0;
  const double base = -spec.s * len * std::log(spec.alpha);
  // DFS over {1..M}^len in digit order.
  struct Rec {
    const CantorSpec& spec;
    double run(double q_prev, double q, int remaining) const {
      if (remaining == 0) return -2.0 * spec.s * std::log(q);
      double acc = kNegInf;
      for (std::int64_t a = 1; a <= spec.M; ++a)
        acc = log_sum_exp_pair(acc, run(q, a * q + q_prev, remaining - 1));
      return acc;
    }
  } rec{spec};
  return base + rec.run(0.0, 1.0, len);
}

// log sum over completions of the current block (remaining digits free) of the
// full-block weight (alpha^full q_full^2)^{-s}; q_prev/q are the continuant
// state within the block.
double completion_log(const CantorSpec& spec, double q_prev, double q, int remaining) {
  if (remaining == 0) return -2.0 * spec.s * std::log(q);
  double acc = kNegInf;
  for (std::int64_t a = 1; a <= spec.M; ++a)
    acc = log_sum_exp_pair(acc, completion_log(spec, q, a * q + q_prev, remaining - 1));
  return acc;
}

struct NormalizerTable {
  double full = 0.0;   // log w_L
  double short_ = 0.0;  // log w_{L-1}
  bool has_short = false;
};

NormalizerTable make_normalizers(const CantorSpec& spec) {
  NormalizerTable t;
  t.full = block_normalizer_log(spec, spec.L);
  if (spec.L > 1 && spec.n_seq.size() > 1) {
    t.short_ = block_normalizer_log(spec, spec.L - 1);
    t.has_short = true;
  }
  return t;
}

double normalizer_for(const CantorSpec& spec, const NormalizerTable& t, int len) {
  if (len == spec.L) return t.full;
  if (t.has_short && len == spec.L - 1) return t.short_;
  return block_normalizer_log(spec, len);
}

// Incremental measure walker shared by measure(), holder_scan() and
// sample_point().
struct MeasureWalker {
  const CantorSpec& spec;
  const NormalizerTable& norms;
  double log_mu = 0.0;
  bool literal_weights = false;

  // In-block continuant state.
  double bq_prev = 0.0, bq = 1.0;
  int block_pos = 0;   // digits consumed in the current block
  int block_len = 0;   // full length of the current block (0 = not in a block)

  void feed(int pos, std::int64_t digit) {
    const PosKind kind = position_kind(spec, pos);
    if (kind == PosKind::peak) {
      const int k = peak_index(spec.n_seq, pos);
      if (literal_weights) log_mu -= std::log(2.0 * std::pow(spec.alpha, pos));
      (void)k;
      return;
    }
    if (kind == PosKind::range) {
      const int k = peak_index(spec.n_seq, pos - 1);
      if (literal_weights) {
        log_mu += std::log(2.0 * std::pow(spec.alpha, pos - 1)) -
                  (pos - 1) * std::log(spec.B);
      } else {
        log_mu -= std::log(static_cast<double>(spec.range_hi[k] - spec.range_lo[k] + 1));
      }
      return;
    }
    // Interior: advance the block.
    if (block_len == 0) {
      const auto b = block_of(spec, pos);
      block_len = b.full_len;
      block_pos = 0;
      bq_prev = 0.0;
      bq = 1.0;
    }
    const double nq = static_cast<double>(digit) * bq + bq_prev;
    bq_prev = bq;
    bq = nq;
    ++block_pos;
    if (block_pos == block_len) {
      log_mu += -spec.s * (block_len * std::log(spec.alpha) + 2.0 * std::log(bq)) -
                normalizer_for(spec, norms, block_len);
      block_len = 0;
    }
  }

  // Close out a partially consumed block via the completion marginal.
  void finish() {
    if (block_len == 0) return;
    const double s_part = -spec.s * block_len * std::log(spec.alpha) +
                          completion_log(spec, bq_prev, bq, block_len - block_pos);
    log_mu += s_part - normalizer_for(spec, norms, block_len);
    block_len = 0;
  }
};

}  // namespace

MeasureNode measure(const Word& w, const CantorSpec& spec, bool literal_weights) {
  if (!is_admissible(w, spec)) throw std::domain_error("measure: word not admissible");
  const NormalizerTable norms = make_normalizers(spec);
  MeasureWalker walker{spec, norms};
  walker.literal_weights = literal_weights;
  for (std::size_t i = 0; i < w.size(); ++i)
    walker.feed(static_cast<int>(i) + 1, w.digits[i]);
  walker.finish();
  MeasureNode node;
  node.word = w;
  node.mu = LogValue::from_log(walker.log_mu);
  node.normalizer = LogValue::from_log(norms.full);
  return node;
}

void enumerate_words(const CantorSpec& spec, int level, std::uint64_t budget,
                     const std::function<void(const Word&, const ConvergentPair&)>& visit) {
  if (level < 0) throw std::domain_error("enumerate_words: level must be >= 0");
  if (level > spec.max_enumerable_depth)
    throw std::runtime_error("enumerate_words: level past the representable depth");
  Word w;
  ConvergentPair c{1, 0, 0, 1, 0};
  if (level == 0) {  // the root is the single length-0 word
    visit(w, c);
    return;
  }
  std::uint64_t used = 0;
  struct Rec {
    const CantorSpec& spec;
    int level;
    std::uint64_t budget;
    std::uint64_t& used;
    const std::function<void(const Word&, const ConvergentPair&)>& visit;
    void run(Word& w, ConvergentPair& c) {
      if (++used > budget) throw std::runtime_error("enumerate_words: budget exceeded");
      const int pos = static_cast<int>(w.size()) + 1;
      const auto r = digit_range(spec, pos);
      for (std::int64_t a = r.lo; a <= r.hi; ++a) {
        ConvergentPair saved = c;
        w.push(a);
        c.advance(a);
        if (static_cast<int>(w.size()) == level) {
          if (++used > budget) throw std::runtime_error("enumerate_words: budget exceeded");
          visit(w, c);
        } else run(w, c);
        w.pop();
        c = saved;
      }
    }
  } rec{spec, level, budget, used, visit};
  rec.run(w, c);
}

HolderScan holder_scan(const CantorSpec& spec, int level, double slack,
                       std::uint64_t budget) {
  const NormalizerTable norms = make_normalizers(spec);
  HolderScan out;
  out.bound = spec.s - 6.0 / spec.L - spec.epsilon0 - slack;
  double min_exp = std::numeric_limits<double>::infinity();
  std::size_t count = 0;

  // DFS with an incremental measure walker per path would need backtracking
  // state; the per-word replay below is O(level) per word, which is cheap at
  // enumerable scales.
  enumerate_words(spec, level, budget, [&](const Word& w, const ConvergentPair& c) {
    MeasureWalker walker{spec, norms};
    for (std::size_t i = 0; i < w.size(); ++i)
      walker.feed(static_cast<int>(i) + 1, w.digits[i]);
    walker.finish();
    const auto r = digit_range(spec, static_cast<int>(w.size()) + 1);
    const double q = static_cast<double>(c.q), qp = static_cast<double>(c.q_prev);
    const double len = static_cast<double>(r.hi + 1 - r.lo) /
                       ((r.lo * q + qp) * ((r.hi + 1) * q + qp));
    const double ex = walker.log_mu / std::log(len);
    min_exp = std::min(min_exp, ex);
    ++count;
  });
  out.min_exponent = min_exp;
  out.words = count;
  out.ok = (min_exp >= out.bound);
  return out;
}

SamplePoint sample_point(const CantorSpec& spec, int depth, std::uint64_t seed) {
  if (depth < 1) throw std::domain_error("sample_point: depth must be >= 1");
  if (depth > spec.max_enumerable_depth)
    throw std::runtime_error("sample_point: depth past the representable depth");
  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return std::ldexp(static_cast<double>(rng() >> 11), -53); };

  const NormalizerTable norms = make_normalizers(spec);
  Word w;
  // Block state for conditional sampling.
  double bq_prev = 0.0, bq = 1.0;
  int block_pos = 0, block_len = 0;
  for (int pos = 1; pos <= depth; ++pos) {
    const PosKind kind = position_kind(spec, pos);
    if (kind == PosKind::peak) {
      w.push(digit_range(spec, pos).lo);
      continue;
    }
    if (kind == PosKind::range) {
      const auto r = digit_range(spec, pos);
      const std::int64_t span = r.count();
      std::int64_t pick = r.lo + static_cast<std::int64_t>(uniform() * span);
      if (pick > r.hi) pick = r.hi;
      w.push(pick);
      continue;
    }
    if (block_len == 0) {
      block_len = block_of(spec, pos).full_len;
      block_pos = 0;
      bq_prev = 0.0;
      bq = 1.0;
    }
    // Conditional digit weights within the block: completion sums.
    const int remaining = block_len - block_pos - 1;
    std::vector<double> logw(spec.M);
    double total = kNegInf;
    for (std::int64_t a = 1; a <= spec.M; ++a) {
      logw[a - 1] = completion_log(spec, bq, a * bq + bq_prev, remaining);
      total = log_sum_exp_pair(total, logw[a - 1]);
    }
    const double u = uniform();
    double cum = 0.0;
    std::int64_t pick = spec.M;
    for (std::int64_t a = 1; a <= spec.M; ++a) {
      cum += std::exp(logw[a - 1] - total);
      if (u < cum) { pick = a; break; }
    }
    w.push(pick);
    const double nq = static_cast<double>(pick) * bq + bq_prev;
    bq_prev = bq;
    bq = nq;
    if (++block_pos == block_len) block_len = 0;
  }
  SamplePoint sp;
  const auto iv = cylinder_interval(w);
  sp.x = rational_to_double((iv.left + iv.right) / 2);
  sp.word = std::move(w);
  return sp;
}

BoxDimensionEstimate box_dimension_estimate(const CantorSpec& spec, int j_lo, int j_hi,
                                            int step, std::uint64_t budget) {
  if (step < 1 || j_hi < j_lo) throw std::domain_error("box_dimension_estimate: bad ladder");
  BoxDimensionEstimate out;
  for (int j = j_lo; j <= j_hi; j += step) out.deltas.push_back(std::ldexp(1.0, -j));
  if (out.deltas.size() < 3)
    throw std::domain_error("box_dimension_estimate: need at least 3 ladder levels");
  out.counts.assign(out.deltas.size(), 0);
  const double delta_min = out.deltas.back();

  std::uint64_t used = 0;
  struct Rec {
    const CantorSpec& spec;
    BoxDimensionEstimate& out;
    double delta_min;
    std::uint64_t budget;
    std::uint64_t& used;
    void run(double q_prev, double q, int pos, double parent_len) {
      if (++used > budget)
        throw std::runtime_error("box_dimension_estimate: budget exceeded");
      const auto r = digit_range(spec, pos);
      const double len = static_cast<double>(r.hi + 1 - r.lo) /
                         ((r.lo * q + q_prev) * ((r.hi + 1) * q + q_prev));
      for (std::size_t i = 0; i < out.deltas.size(); ++i)
        if (len <= out.deltas[i] && parent_len > out.deltas[i]) ++out.counts[i];
      if (len <= delta_min) return;
      for (std::int64_t a = r.lo; a <= r.hi; ++a)
        run(q, static_cast<double>(a) * q + q_prev, pos + 1, len);
    }
  } rec{spec, out, delta_min, budget, used};
  rec.run(0.0, 1.0, 1, std::numeric_limits<double>::infinity());

  // Least-squares slope of log N against -log delta.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t n = out.deltas.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -std::log(out.deltas[i]);
    const double y = std::log(static_cast<double>(std::max<std::uint64_t>(out.counts[i], 1)));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  out.slope = (n * sxy - sx * sy) / denom;
  double ss_res = 0;
  const double intercept = (sy - out.slope * sx) / n;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -std::log(out.deltas[i]);
    const double y = std::log(static_cast<double>(std::max<std::uint64_t>(out.counts[i], 1)));
    const double r = y - (out.slope * x + intercept);
    ss_res += r * r;
  }
  const double sxx_c = sxx - sx * sx / n;
  out.band = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx_c) : 0.0;
  return out;
}

}  // namespace cfdim
