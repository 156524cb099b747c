// Conditional maximum likelihood estimation of generalized odds ratios with
// marginal sums fixed.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "contab/tables.hpp"

namespace contab {

// Normalized parameter chart: reference row and column pinned to 1, the
// (r1-1)(r2-1) remaining cells free.
struct OddsChart {
  std::size_t r1 = 0, r2 = 0;
  std::size_t ref_row = 0, ref_col = 0;  // 0-based
  std::vector<Rational> q;  // full r1 x r2 grid, 1 on the reference row/column

  const Rational& at(std::size_t i, std::size_t j) const { return q[i * r2 + j]; }
  Rational& at(std::size_t i, std::size_t j) { return q[i * r2 + j]; }
  bool is_free(std::size_t i, std::size_t j) const {
    return i != ref_row && j != ref_col;
  }
};

// Cross-ratios u_ij u_rc / (u_ic u_rj) with r = ref_row, c = ref_col;
// 1 on the reference row/column, 0 when any cross-ratio factor is 0.
OddsChart generalized_odds_ratios(const Table& u, std::size_t ref_row,
                                  std::size_t ref_col);

// Z, first moments and (optionally) second moments at a parameter point.
// The default is the exact brute-force fiber sum.
using MomentEvaluator = std::function<FiberMoments(
    const MarginalSums&, const CellParams&, bool with_second)>;

struct LoglikResult {
  double value = 0;                // sum u_ij log q_ij - log Z
  std::vector<double> gradient;    // u_ij - E[U_ij] per free cell, row-major order
};

// Conditional log-likelihood of the observed table under the chart, with the
// gradient taken in the free cells' log coordinates.
LoglikResult conditional_loglik(const Table& u, const OddsChart& chart,
                                const MomentEvaluator& evaluator);

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CmleResult {
  OddsChart chart;
  double loglik = 0;
  double gradient_norm = 0;
  unsigned iterations = 0;
  std::vector<std::pair<std::size_t, std::size_t>> boundary_cells;
  bool converged = false;
};

// Maximize the conditional log-likelihood over the free cells by damped
// Newton with the exact observed information (conditional covariance),
// starting from the generalized odds ratios. Free cells with observed count
// 0 are clamped to the boundary value 0 and reported. Throws NonConvergence
// after max_iter iterations.
CmleResult cmle_fit(const Table& u, std::size_t ref_row, std::size_t ref_col,
                    double tol, unsigned max_iter,
                    const MomentEvaluator& evaluator);

// Convenience overload using the exact brute-force evaluator.
CmleResult cmle_fit(const Table& u, std::size_t ref_row, std::size_t ref_col,
                    double tol = 1e-10, unsigned max_iter = 200);

}  // namespace contab
