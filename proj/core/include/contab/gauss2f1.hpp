// Gauss hypergeometric layer: terminating-series oracle, the explicit 2x2
// contiguity matrix M(a), Gauss-Manin transport via the matrix-factorial
// engine, and the intersection-matrix decomposition of U2.
#pragma once

#include <vector>

#include "contab/matfac.hpp"
#include "contab/rational.hpp"

namespace contab {

// Parameters of the terminating series 2F1(a, b, c; x) with a a nonpositive
// integer, so the sum stops at |a|.
struct Hyp2F1Params {
  long a = 0;   // <= 0
  Rational b;
  Rational c;  // c + i != 0 for 0 <= i < |a|
  Rational x;
};

// (f(a), theta_x f(a)) with theta_x = x d/dx.
struct GaussManinVector2F1 {
  Rational f;
  Rational theta_f;
};

// (alpha_0, alpha_1, alpha_2, alpha_3) = (a-c+1, b, -a, c-b-1); sums to zero.
struct AlphaChart {
  Rational a0, a1, a2, a3;

  static AlphaChart from_abc(const Rational& a, const Rational& b, const Rational& c) {
    return {a - c + 1, b, -a, c - b - 1};
  }
};

// Exact value of sum_{i=0}^{|a|} (a)_i (b)_i / ((c)_i i!) x^i.
// Throws std::domain_error when a required (c)_i factor vanishes.
Rational f21_poly_oracle(const Hyp2F1Params& params);

// theta_x applied to the same terminating series.
Rational f21_theta_oracle(const Hyp2F1Params& params);

// M(a) = 1/(a-c+1) [[b x + a - c + 1, x - 1], [-a b x, a (1 - x)]], the 2x2
// matrix with F(a) = M(a) F(a+1). Throws std::domain_error when a-c+1 = 0.
std::vector<Rational> contiguity_M(const Rational& a, const Rational& b,
                                   const Rational& c, const Rational& x);

// The same family as rational functions of the shift parameter t (in place
// of a), for the matrix-factorial engine.
RatFunMatrix contiguity_family(const Rational& b, const Rational& c, const Rational& x);

// F(-1) = (1 - (b/c) x, -(b/c) x).
GaussManinVector2F1 gauss_manin_initial(const Rational& b, const Rational& c,
                                        const Rational& x);

// Transport F(-1) down to F(a) along M(a) M(a+1) ... M(-2) using the chosen
// strategy. Requires a <= -1; a = -1 returns the initial vector.
// Throws on engine Failure (modular budget exhausted) or poles.
GaussManinVector2F1 gauss_manin_2f1(long a, const Rational& b, const Rational& c,
                                    const Rational& x,
                                    Strategy strategy = Strategy::exact,
                                    const ReductionConfig& reduction = {},
                                    const ModularConfig& modular = {});

// Binary64 demonstration of the chain: transports the unit seed (1, 0)
// through M(a) ... M(-2), skipping the closed-form start vector, so the
// output tracks only the dominant column of the matrix factorial. For long
// chains this keeps roughly one significant digit of the true value; it
// exists to show why the production path is exact, not to be used for
// inference. Overflow is reported as +/-inf by IEEE semantics.
struct GaussManin2F1Float {
  double f;
  double theta_f;
};

GaussManin2F1Float gauss_manin_2f1_float(long a, const Rational& b, const Rational& c,
                                         const Rational& x);

// U2(alpha_(2); x) = C(alpha) P2(alpha)^-1 D2(x) Q2(alpha_(2)) C(alpha_(2))^-1,
// where alpha_(2) = (a0+1, a1, a2-1, a3). The 2*pi*sqrt(-1) scalars of the
// intersection matrices cancel in the product and are dropped, keeping all
// arithmetic rational. Satisfies
//   M(a) = diag(1, a2) U2(alpha_(2); x) diag(1, 1/(a2-1)).
// Throws std::domain_error naming the vanishing alpha expression.
std::vector<Rational> build_U2_decomposition(const AlphaChart& alpha, const Rational& x);

}  // namespace contab
