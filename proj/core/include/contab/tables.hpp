// Contingency-table data model: marginal sums, the 0/1 constraint matrix A,
// fiber enumeration, exact brute-force normalizing constant / expectations
// (the universal oracle), and the conditional probability mass function.
#pragma once

#include <vector>

#include "contab/rational.hpp"

namespace contab {

class MarginalSums {
 public:
  // throws std::invalid_argument on negative entries or unequal totals
  MarginalSums(std::vector<long> row_sums, std::vector<long> col_sums);

  const std::vector<long>& rows() const { return rows_; }
  const std::vector<long>& cols() const { return cols_; }
  std::size_t r1() const { return rows_.size(); }
  std::size_t r2() const { return cols_.size(); }
  long total() const { return total_; }

 private:
  std::vector<long> rows_, cols_;
  long total_;
};

struct Table {
  std::size_t r1 = 0, r2 = 0;
  std::vector<long> cells;  // row-major, the flattened u^f

  long at(std::size_t i, std::size_t j) const { return cells[i * r2 + j]; }
  long& at(std::size_t i, std::size_t j) { return cells[i * r2 + j]; }
  MarginalSums marginals() const;
  friend bool operator==(const Table& a, const Table& b) = default;
};

struct CellParams {
  std::size_t r1 = 0, r2 = 0;
  std::vector<Rational> p;  // row-major, entries >= 0

  static CellParams ones(std::size_t r1, std::size_t r2) {
    return {r1, r2, std::vector<Rational>(r1 * r2, Rational(1))};
  }
  const Rational& at(std::size_t i, std::size_t j) const { return p[i * r2 + j]; }
  Rational& at(std::size_t i, std::size_t j) { return p[i * r2 + j]; }
};

// The (r1+r2) x (r1*r2) 0/1 matrix with A u^f = beta. Row i < r1 marks the
// cells of table-row i; row r1+j marks the cells of table-column j.
std::vector<std::vector<int>> build_A(std::size_t r1, std::size_t r2);

// All tables u >= 0 with A u^f = beta, in ascending lexicographic order of
// the flattened vector. Empty when infeasible.
std::vector<Table> enumerate_fiber(const MarginalSums& beta);

// Z(beta; p) = sum over the fiber of p^u / u!, with the 0^0 = 1 convention.
// Throws std::domain_error when the fiber is empty.
Rational z_naive(const MarginalSums& beta, const CellParams& p);

// Row-by-row dynamic program over partial column sums; equals z_naive.
Rational z_dp(const MarginalSums& beta, const CellParams& p);

// E[U_ij] grid (row-major). Throws std::domain_error when Z = 0.
std::vector<Rational> expectations_naive(const MarginalSums& beta, const CellParams& p);

// (p^x / x!) / Z. Throws std::domain_error when x is outside the fiber.
Rational conditional_pmf(const Table& x, const MarginalSums& beta, const CellParams& p);

// Exact fiber moments up to second order, shared by the expectation oracle
// and the CMLE observed-information matrix.
struct FiberMoments {
  Rational z;                       // sum of weights
  std::vector<Rational> first;      // sum of u_ij * w, row-major
  std::vector<Rational> second;     // sum of u_ij * u_kl * w, (r1*r2)^2 row-major
};

FiberMoments fiber_moments(const MarginalSums& beta, const CellParams& p,
                           bool with_second = false);

}  // namespace contab
