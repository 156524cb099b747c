// Difference-HGM orchestration: reduce a table problem to a contiguity
// chain, run the matrix-factorial engine, and extract Z and expectations.
// Built-in for 2x2; driven by external contiguity matrix files in general.
#pragma once

#include <vector>

#include "contab/gauss2f1.hpp"
#include "contab/matfac.hpp"
#include "contab/tables.hpp"

namespace contab {

// Normal form of a 2x2 problem: base table [[u11, 0], [u21, u22]] after the
// recorded row/column swaps, cross ratio x = p12 p21 / (p11 p22), and the
// closed-form prefactor of Z.
struct Base2x2 {
  long u11 = 0, u21 = 0, u22 = 0;
  Rational x;
  Rational prefactor;  // p11^u11 p21^u21 p22^u22 / (u11! u21! u22!)
  bool row_swapped = false, col_swapped = false;
  // set when the problem cannot take the hypergeometric route (zero marginal
  // or a zero parameter among p11, p21, p22 after permutation); callers fall
  // back to brute force
  bool degenerate = false;
};

// Throws std::invalid_argument unless beta and p are 2x2.
Base2x2 reduce_2x2(const MarginalSums& beta, const CellParams& p);

struct Hgm2x2Result {
  Rational z;
  std::vector<Rational> expectations;  // 2x2 row-major, original orientation
};

// Z and E[U] for a 2x2 problem via the contiguity chain; equals
// (z_naive, expectations_naive) exactly. Degenerate problems are evaluated
// by the brute-force oracle automatically.
Hgm2x2Result hgm_2x2(const MarginalSums& beta, const CellParams& p,
                     Strategy strategy = Strategy::exact,
                     const ReductionConfig& reduction = {},
                     const ModularConfig& modular = {});

// One contiguity chain per direction k = 1..r1-1: shift_counts[k-1] is
// beta^(1)_k - 1, families[k-1] the matrix family C_k(t).
struct ContiguityPlan {
  std::vector<long> shift_counts;
  std::vector<RatFunMatrix> families;
};

// F(B_{r1-1}; p) = prod_k [C_k(shift_k - 1 - 1) ... C_k(1) C_k(0)] * initial,
// with C_k(0) applied first within each chain. The initial Gauss-Manin
// vector F(B_0; p) is caller-supplied.
std::vector<Rational> hgm_general(const ContiguityPlan& plan,
                                  const std::vector<Rational>& initial,
                                  Strategy strategy = Strategy::exact,
                                  const ReductionConfig& reduction = {},
                                  const ModularConfig& modular = {});

}  // namespace contab
