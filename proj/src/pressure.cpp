#include "cfdim/pressure.hpp"

#include "cfdim/cf_core.hpp"
#include "cfdim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfdim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Left-fold log-sum in digit order; the accumulation order is part of the
// definition so that serial and parallel runs agree bit for bit.
double subtree_log_sum(double q_prev, double q, int remaining, std::int64_t M, double neg2s) {
  if (remaining == 0) return neg2s * std::log(q);
  double acc = kNegInf;
  for (std::int64_t a = 1; a <= M; ++a) {
    const double nq = static_cast<double>(a) * q + q_prev;
    acc = log_sum_exp_pair(acc, subtree_log_sum(q, nq, remaining - 1, M, neg2s));
  }
  return acc;
}

double subtree_log_sum_exact(BigInt q_prev, BigInt q, int remaining, std::int64_t M,
                             double neg2s) {
  if (remaining == 0) return neg2s * log_big(q);
  double acc = kNegInf;
  for (std::int64_t a = 1; a <= M; ++a) {
    BigInt nq = a * q + q_prev;
    acc = log_sum_exp_pair(acc, subtree_log_sum_exact(q, std::move(nq), remaining - 1, M, neg2s));
  }
  return acc;
}

double word_count_log(std::int64_t M, int n) {
  return n * std::log(static_cast<double>(M));
}

}  // namespace

double gm_eval(int m, double s) {
  if (m < 1) throw std::domain_error("gm_eval: m must be >= 1");
  if (s < 0.0 || s > 1.0) throw std::domain_error("gm_eval: s must lie in [0,1]");
  double g = s;
  for (int i = 2; i <= m; ++i) {
    const double den = 1.0 - s + g;
    if (den == 0.0) return 1.0;  // only reachable in the s = 1 corner
    g = s * g / den;
  }
  return g;
}

PartitionSum partition_sum(int n, const PressureProblem& prob, const PartitionOptions& opts) {
  if (n < 1) throw std::domain_error("partition_sum: n must be >= 1");
  if (prob.M < 1) throw std::domain_error("partition_sum: M must be >= 1");
  // B = 1 is allowed here: the B-weight degenerates to 1 and the sum becomes
  // the pure bounded-alphabet partition sum (used as a dimension oracle).
  if (prob.B < 1.0) throw std::domain_error("partition_sum: B must be >= 1");
  if (prob.s < 0.0 || prob.s > 1.0)
    throw std::domain_error("partition_sum: s must lie in [0,1]");

  const double log_words = word_count_log(prob.M, n);
  PartitionMethod method = opts.method;
  if (method == PartitionMethod::automatic) {
    method = PartitionMethod::prefix;
  }
  const double budget = method == PartitionMethod::enumeration
                            ? static_cast<double>(opts.enumeration_budget)
                            : static_cast<double>(opts.prefix_budget);
  if (log_words > std::log(budget))
    throw std::runtime_error("partition_sum: enumeration budget exceeded (M^n too large)");

  const double neg2s = -2.0 * prob.s;
  const double b_factor = -static_cast<double>(n) * gm_eval(prob.m, prob.s) * std::log(prob.B);

  // One subtree per first digit; combined left-to-right in digit order.
  std::vector<double> branch(static_cast<std::size_t>(prob.M), kNegInf);
  if (method == PartitionMethod::enumeration) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
#endif
    for (std::int64_t a = 1; a <= prob.M; ++a)
      branch[a - 1] = subtree_log_sum_exact(BigInt(1), BigInt(a), n - 1, prob.M, neg2s);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
#endif
    for (std::int64_t a = 1; a <= prob.M; ++a)
      branch[a - 1] = subtree_log_sum(1.0, static_cast<double>(a), n - 1, prob.M, neg2s);
  }
  double acc = kNegInf;
  for (double b : branch) acc = log_sum_exp_pair(acc, b);

  PartitionSum out;
  out.n = n;
  out.method = method;
  out.value = LogValue::from_log(acc + b_factor);
  return out;
}

DimensionResult solve_depth_dimension(int n, double B, std::int64_t M, int m, double tol,
                                      const PartitionOptions& opts) {
  if (tol <= 0) throw std::domain_error("solve_depth_dimension: tol must be positive");
  PressureProblem prob{M, B, m, 0.0};
  auto f = [&](double s) {
    PressureProblem p = prob;
    p.s = s;
    return partition_sum(n, p, opts).value.log();  // log g_n(s), decreasing in s
  };
  const auto r = bisect_decreasing(f, 0.0, 1.0, tol);
  DimensionResult out;
  out.value = r.root;
  out.bracket_width = r.bracket_width;
  out.method = "partition-depth";
  out.boundary_low = r.boundary_low;
  out.boundary_high = r.boundary_high;
  out.residual = f(r.root);
  out.problem = prob;
  out.problem.s = r.root;
  return out;
}

SpectralEstimate transfer_eigenvalue(double t, std::int64_t M, const TransferOptions& opts) {
  if (t <= 0) throw std::domain_error("transfer_eigenvalue: t must be positive");
  if (M < 1) throw std::domain_error("transfer_eigenvalue: M must be >= 1");
  if (opts.degree < 4) throw std::domain_error("transfer_eigenvalue: degree must be >= 4");
  if (opts.tail && t <= 1.0)
    throw std::domain_error("transfer_eigenvalue: tail bound diverges for t <= 1");

  const int N = opts.degree;
  const std::size_t dim = static_cast<std::size_t>(N) + 1;

  // Chebyshev-Lobatto nodes on [0,1]; x_0 = 1, x_N = 0.
  std::vector<double> x(dim), bw(dim);
  for (int j = 0; j <= N; ++j) {
    x[j] = 0.5 * (1.0 + std::cos(std::numbers::pi * j / N));
    bw[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  bw[0] *= 0.5;
  bw[N] *= 0.5;

  // Collocation matrix of L_t: row i sums branch weights times the barycentric
  // interpolation coefficients at the branch images y = 1/(a + x_i).
  std::vector<double> A(dim * dim, 0.0);
  std::vector<double> coeff(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::int64_t a = 1; a <= M; ++a) {
      const double base = static_cast<double>(a) + x[i];
      const double y = 1.0 / base;
      const double u = std::pow(base, -t);
      // Barycentric coefficients at y.
      int hit = -1;
      for (std::size_t j = 0; j < dim; ++j)
        if (y == x[j]) { hit = static_cast<int>(j); break; }
      if (hit >= 0) {
        A[i * dim + hit] += u;
      } else {
        double S = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
          coeff[j] = bw[j] / (y - x[j]);
          S += coeff[j];
        }
        for (std::size_t j = 0; j < dim; ++j) A[i * dim + j] += u * coeff[j] / S;
      }
    }
    if (opts.tail) {
      // Integral bound for the digits above M, attached to f(0) = f(x_N).
      A[i * dim + (dim - 1)] += std::pow(static_cast<double>(M) + x[i], 1.0 - t) / (t - 1.0);
    }
  }

  std::vector<double> v(dim, 1.0), nv(dim);
  double lambda = 0.0;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    double dot_vv = 0.0, dot_vAv = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      const double* row = &A[i * dim];
      for (std::size_t j = 0; j < dim; ++j) s += row[j] * v[j];
      nv[i] = s;
      dot_vv += v[i] * v[i];
      dot_vAv += v[i] * s;
      norm = std::max(norm, std::abs(s));
    }
    const double new_lambda = dot_vAv / dot_vv;
    for (std::size_t i = 0; i < dim; ++i) v[i] = nv[i] / norm;
    if (iter > 0 && std::abs(new_lambda - lambda) <= opts.tol * std::abs(new_lambda)) {
      lambda = new_lambda;
      ++iter;
      break;
    }
    lambda = new_lambda;
  }
  if (iter >= opts.max_iterations)
    throw std::runtime_error("transfer_eigenvalue: power iteration did not converge");

  double residual = 0.0;
  double vmax = 0.0;
  for (std::size_t i = 0; i < dim; ++i) vmax = std::max(vmax, std::abs(v[i]));
  for (std::size_t i = 0; i < dim; ++i) {
    double s = 0.0;
    const double* row = &A[i * dim];
    for (std::size_t j = 0; j < dim; ++j) s += row[j] * v[j];
    residual = std::max(residual, std::abs(s - lambda * v[i]) / vmax);
  }
  for (std::size_t i = 0; i < dim; ++i)
    if (!(v[i] > 0.0))
      throw std::runtime_error(
          "transfer_eigenvalue: eigenfunction not positive at a node (degree too low?)");

  SpectralEstimate est;
  est.t = t;
  est.lambda = lambda;
  est.degree = N;
  est.residual = residual;
  est.iterations = iter;
  return est;
}

double pressure_value(double s, double B, std::int64_t M, int m, const TransferOptions& opts) {
  if (B <= 1.0) throw std::domain_error("pressure_value: B must exceed 1");
  if (s < 0.0 || s > 1.0) throw std::domain_error("pressure_value: s must lie in [0,1]");
  if (opts.tail && 2.0 * s <= 1.0) return std::numeric_limits<double>::infinity();
  if (s == 0.0) return std::log(static_cast<double>(M));  // lambda_M(0) = M, g_m(0) = 0
  const auto est = transfer_eigenvalue(2.0 * s, M, opts);
  return std::log(est.lambda) - gm_eval(m, s) * std::log(B);
}

namespace {

DimensionResult solve_with(double B, std::int64_t M, double tol, const TransferOptions& opts,
                           int m, bool squared_path) {
  if (B <= 1.0) throw std::domain_error("solve_dimension: B must exceed 1");
  if (tol <= 0) throw std::domain_error("solve_dimension: tol must be positive");
  auto f = [&](double s) -> double {
    if (squared_path) {
      if (opts.tail && 2.0 * s <= 1.0) return std::numeric_limits<double>::infinity();
      if (s == 0.0) return std::log(static_cast<double>(M));
      const auto est = transfer_eigenvalue(2.0 * s, M, opts);
      return std::log(est.lambda) - s * s * std::log(B);
    }
    return pressure_value(s, B, M, m, opts);
  };
  const auto r = bisect_decreasing(f, 0.0, 1.0, tol);
  DimensionResult out;
  out.value = r.root;
  out.bracket_width = r.bracket_width;
  out.method = squared_path ? "pressure-squared" : "pressure-gm";
  out.boundary_low = r.boundary_low;
  out.boundary_high = r.boundary_high;
  const double res = f(r.root);
  out.residual = std::isfinite(res) ? res : 0.0;
  out.problem = PressureProblem{M, B, m, r.root};
  return out;
}

}  // namespace

DimensionResult solve_dimension(double B, std::int64_t M, int m, double tol,
                                const TransferOptions& opts) {
  return solve_with(B, M, tol, opts, m, /*squared_path=*/false);
}

DimensionResult solve_dimension_squared(double B, std::int64_t M, double tol,
                                        const TransferOptions& opts) {
  return solve_with(B, M, tol, opts, /*m=*/2, /*squared_path=*/true);
}

std::vector<CurvePoint> dimension_curve(const std::vector<double>& grid, std::int64_t M,
                                        int m, double tol, const TransferOptions& opts) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::domain_error("dimension_curve: grid must be sorted ascending");
  std::vector<CurvePoint> out(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CurvePoint pt;
    pt.B = grid[i];
    pt.m = m;
    pt.M = M;
    try {
      const auto r = solve_dimension(grid[i], M, m, tol, opts);
      pt.s_star = r.value;
      pt.residual = r.residual;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
    out[i] = pt;
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].ok && out[i - 1].ok && out[i].s_star > out[i - 1].s_star + tol)
      out[i].monotone_violation = true;
  return out;
}

}  // namespace cfdim
