// Exact rational-function interpolation along a line in p-space, used to
// evaluate expectations at parameter points containing zero cells.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "contab/ratfun.hpp"
#include "contab/tables.hpp"

namespace contab {

struct InconsistentSamples : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FittedRatFun {
  RatFun f;
  long d_num = 0, d_den = 0;
};

// Unique rational function with deg num <= d_num, deg den <= d_den through
// the samples: fit on the first d_num + d_den + 1 points by an exact
// homogeneous linear solve, then verify against every remaining point.
// Requires >= d_num + d_den + 2 distinct sample abscissae.
FittedRatFun fit_rational_function(const std::vector<std::pair<Rational, Rational>>& points,
                                   long d_num, long d_den);

// Evaluates an expectation grid at a strictly positive parameter point.
using ExpectationEvaluator = std::function<std::vector<Rational>(const CellParams&)>;

// E[U_ij] at a parameter point with zero cells: sample the evaluator on a
// random line that perturbs only the zero cells, fit each cell's expectation
// as a bounded-degree rational function of the line parameter, and read off
// the exact value at s = 0. Retries with a fresh line on fit failure.
//
// For p without zeros the evaluator is called directly.
std::vector<Rational> expectation_with_zeros(const MarginalSums& beta,
                                             const CellParams& p,
                                             const ExpectationEvaluator& evaluator,
                                             std::uint64_t seed = 0,
                                             const Rational& offset_range = Rational(1),
                                             int extra_samples = 0);

}  // namespace contab
