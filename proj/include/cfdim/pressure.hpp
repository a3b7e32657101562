#pragma once

#include "cfdim/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cfdim {

// Everything defining a dimension-number query over the alphabet {1..M}.
struct PressureProblem {
  std::int64_t M = 50;  // alphabet bound
  double B = 2.0;       // growth base, > 1
  int m = 2;            // product order
  double s = 0.5;       // candidate dimension
};

// g_m(s) from the recursion g_1 = s, g_m = s g_{m-1} / (1 - s + g_{m-1}).
double gm_eval(int m, double s);

enum class PartitionMethod { automatic, enumeration, prefix };

struct PartitionOptions {
  PartitionMethod method = PartitionMethod::automatic;
  std::uint64_t enumeration_budget = 1'000'000;  // word cap for the exact route
  std::uint64_t prefix_budget = 400'000'000;     // node cap for the DFS route
  bool parallel = true;
};

struct PartitionSum {
  int n = 0;
  LogValue value;
  PartitionMethod method = PartitionMethod::prefix;
};

// Depth-n weighted cylinder sum: sum over words of B^{-n g_m(s)} q_n^{-2s}.
PartitionSum partition_sum(int n, const PressureProblem& prob,
                           const PartitionOptions& opts = {});

struct DimensionResult {
  double value = 0.0;
  double bracket_width = 0.0;
  std::string method;
  bool boundary_low = false;
  bool boundary_high = false;
  double residual = 0.0;  // defining-equation value at the root
  PressureProblem problem;
};

// Root of g_n(s) = 1 in s on [0,1] (the depth-n dimension t_{n,B}).
DimensionResult solve_depth_dimension(int n, double B, std::int64_t M, int m,
                                      double tol = 1e-10,
                                      const PartitionOptions& opts = {});

struct TransferOptions {
  int degree = 32;        // collocation degree N (N+1 Chebyshev-Lobatto nodes)
  bool tail = false;      // integral tail bound for digits > M (needs t > 1)
  double tol = 1e-12;     // power-iteration relative tolerance
  int max_iterations = 10000;
};

struct SpectralEstimate {
  double t = 0.0;
  double lambda = 0.0;
  int degree = 0;
  double residual = 0.0;
  int iterations = 0;
};

// Leading eigenvalue of (L_t f)(x) = sum_{a=1..M} (a+x)^{-t} f(1/(a+x)) on a
// degree-N polynomial collocation space. With opts.tail, the weight gains the
// integral bound for digits > M, which requires t > 1 (throws otherwise).
SpectralEstimate transfer_eigenvalue(double t, std::int64_t M,
                                     const TransferOptions& opts = {});

// log lambda_M(2s) - g_m(s) log B; +infinity when the tail diverges (2s <= 1).
double pressure_value(double s, double B, std::int64_t M, int m,
                      const TransferOptions& opts = {});

// Root of pressure_value(s) = 0 on [0,1].
DimensionResult solve_dimension(double B, std::int64_t M, int m, double tol = 1e-10,
                                const TransferOptions& opts = {});

// Dedicated path for the potential -s^2 log B - s log|T'| (no g_m plumbing);
// must agree with solve_dimension(m = 2) to solver tolerance.
DimensionResult solve_dimension_squared(double B, std::int64_t M, double tol = 1e-10,
                                        const TransferOptions& opts = {});

struct CurvePoint {
  double B = 0.0;
  int m = 0;
  std::int64_t M = 0;
  double s_star = 0.0;
  double residual = 0.0;
  bool ok = true;
  bool monotone_violation = false;  // s* rose relative to the previous grid point
  std::string error;
};

std::vector<CurvePoint> dimension_curve(const std::vector<double>& grid,
                                        std::int64_t M, int m, double tol = 1e-10,
                                        const TransferOptions& opts = {});

}  // namespace cfdim
