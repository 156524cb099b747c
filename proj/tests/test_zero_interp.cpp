#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contab/zero_interp.hpp"

using namespace contab;

namespace {

std::vector<std::pair<Rational, Rational>> sample(const RatFun& f, long count) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (long s = 1; s <= count; ++s) pts.emplace_back(Rational(s), *f.eval(Rational(s)));
  return pts;
}

ExpectationEvaluator brute_force(const MarginalSums& beta) {
  return [beta](const CellParams& p) { return expectations_naive(beta, p); };
}

}  // namespace

TEST_CASE("rational function fitting") {
  RatFun inv = parse_ratfun_expr("1/t");
  FittedRatFun fit = fit_rational_function(sample(inv, 4), 0, 1);
  CHECK(fit.f == inv);

  RatFun g = parse_ratfun_expr("(t+1)/(t^2+1)");
  CHECK(fit_rational_function(sample(g, 6), 1, 2).f == g);

  RatFun c = parse_ratfun_expr("7/3");
  CHECK(fit_rational_function(sample(c, 2), 0, 0).f == c);

  // slack in the degree bounds is harmless: extra coefficients come out zero
  CHECK(fit_rational_function(sample(inv, 8), 2, 3).f == inv);
}

TEST_CASE("fitting rejects bad input") {
  RatFun q = parse_ratfun_expr("t^2");
  // degree bound too small: the held-out samples expose the mismatch
  CHECK_THROWS_AS(fit_rational_function(sample(q, 5), 1, 0), InconsistentSamples);
  // too few points for the requested bounds
  CHECK_THROWS_AS(fit_rational_function(sample(q, 3), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(fit_rational_function(sample(q, 5), -1, 0), std::invalid_argument);
}

TEST_CASE("positive parameter points bypass the interpolation") {
  MarginalSums beta({2, 3}, {1, 4});
  CellParams p{2, 2, {Rational(1), Rational(1, 2), Rational(3), Rational(2, 5)}};
  int calls = 0;
  ExpectationEvaluator counting = [&](const CellParams& q) {
    ++calls;
    return expectations_naive(beta, q);
  };
  auto got = expectation_with_zeros(beta, p, counting);
  CHECK(got == expectations_naive(beta, p));
  CHECK(calls == 1);
}

TEST_CASE("zero cells via the line interpolation") {
  MarginalSums beta({3, 4, 3}, {3, 4, 3});
  CellParams p{3, 3,
               {Rational(1), Rational(1, 2), Rational(0),
                Rational(1), Rational(1, 3), Rational(1, 4),
                Rational(1), Rational(1), Rational(1)}};
  std::vector<Rational> want = {
      Rational(71076, 56575),  Rational(98649, 56575),   Rational(0),
      Rational(157581, 113150), Rational(28069, 22630),  Rational(77337, 56575),
      Rational(39717, 113150), Rational(114957, 113150), Rational(92388, 56575)};

  CHECK(expectation_with_zeros(beta, p, brute_force(beta)) == want);

  // the exact answer cannot depend on the line chosen
  CHECK(expectation_with_zeros(beta, p, brute_force(beta), 12345) == want);
  CHECK(expectation_with_zeros(beta, p, brute_force(beta), 7, Rational(1, 3), 2) == want);
}

TEST_CASE("single zero cell in a 2x2 problem") {
  MarginalSums beta({1, 1}, {1, 1});
  CellParams p{2, 2, {Rational(1), Rational(0), Rational(1), Rational(1)}};
  auto got = expectation_with_zeros(beta, p, brute_force(beta));
  CHECK(got == std::vector<Rational>{Rational(1), Rational(0), Rational(0), Rational(1)});
}
