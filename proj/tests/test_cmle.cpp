#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "contab/cmle.hpp"

using namespace contab;

namespace {

const MomentEvaluator brute = [](const MarginalSums& beta, const CellParams& p,
                                 bool with_second) {
  return fiber_moments(beta, p, with_second);
};

}  // namespace

TEST_CASE("generalized odds ratios") {
  // reference row 2, reference column 1 (the convention of the CLI defaults)
  Table y2000{2, 3, {4, 7, 2, 32, 5, 6}};
  OddsChart c = generalized_odds_ratios(y2000, 1, 0);
  CHECK(c.at(0, 1) == Rational(56, 5));
  CHECK(c.at(0, 2) == Rational(8, 3));
  CHECK(c.at(0, 0) == Rational(1));
  CHECK(c.at(1, 2) == Rational(1));
  CHECK_FALSE(c.is_free(1, 1));
  CHECK(c.is_free(0, 2));

  Table y2001{2, 3, {23, 13, 6, 78, 25, 9}};
  OddsChart d = generalized_odds_ratios(y2001, 1, 0);
  CHECK(d.at(0, 1) == Rational(1014, 575));
  CHECK(d.at(0, 2) == Rational(52, 23));

  // zero observed counts map to the boundary of the chart
  Table z{2, 2, {1, 0, 0, 1}};
  CHECK(generalized_odds_ratios(z, 1, 0).at(0, 1) == Rational(0));

  CHECK_THROWS_AS(generalized_odds_ratios(z, 2, 0), std::invalid_argument);
}

TEST_CASE("conditional log-likelihood and gradient") {
  Table u{2, 2, {0, 1, 1, 0}};
  OddsChart chart = generalized_odds_ratios(Table{2, 2, {1, 1, 1, 1}}, 1, 0);
  // all-ones chart: Z = 2, log-likelihood = -log 2
  LoglikResult r = conditional_loglik(u, chart, brute);
  CHECK(r.value == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
  REQUIRE(r.gradient.size() == 1);
  CHECK(r.gradient[0] == doctest::Approx(0.5).epsilon(1e-14));  // u01 - E[U01]

  // symmetric observation: the odds-ratio start is already stationary
  Table s{2, 2, {1, 1, 1, 1}};
  OddsChart sc = generalized_odds_ratios(s, 1, 0);
  LoglikResult rs = conditional_loglik(s, sc, brute);
  CHECK(rs.gradient[0] == doctest::Approx(0.0).epsilon(1e-14));

  // pushing the free cell far above its observed share makes the score negative
  OddsChart big = sc;
  big.at(0, 1) = Rational(12);
  CHECK(conditional_loglik(s, big, brute).gradient[0] < 0);
}

TEST_CASE("symmetric table fits to the flat chart") {
  Table s{2, 2, {1, 1, 1, 1}};
  CmleResult r = cmle_fit(s, 1, 0);
  CHECK(r.converged);
  CHECK(r.chart.at(0, 1) == Rational(1));
  CHECK(r.boundary_cells.empty());
  CHECK(r.gradient_norm <= 1e-10);
}

TEST_CASE("fit matches independently computed optima") {
  // stationary points confirmed by an independent exact-arithmetic
  // implementation of the score equations
  struct Case {
    Table u;
    double q01, q02;
  };
  Case cases[] = {
      {Table{2, 3, {4, 7, 2, 32, 5, 6}}, 10.555736497826778, 2.6209676960318435},
      {Table{2, 3, {23, 13, 6, 78, 25, 9}}, 1.75674768945199, 2.24788330375027},
  };
  for (const Case& c : cases) {
    CmleResult r = cmle_fit(c.u, 1, 0);
    CHECK(r.converged);
    CHECK(r.boundary_cells.empty());
    double q01 = Rational(r.chart.at(0, 1)).get_d();
    double q02 = Rational(r.chart.at(0, 2)).get_d();
    CHECK(q01 == doctest::Approx(c.q01).epsilon(1e-12));
    CHECK(q02 == doctest::Approx(c.q02).epsilon(1e-12));
    CHECK(r.gradient_norm <= 1e-10);

    // stationarity double-checked with the exact score at the fitted point
    LoglikResult score = conditional_loglik(c.u, r.chart, brute);
    for (double g : score.gradient) CHECK(std::fabs(g) <= 1e-9);
  }
}

TEST_CASE("zero observed cells are clamped to the boundary") {
  Table u{2, 2, {1, 0, 0, 1}};
  CmleResult r = cmle_fit(u, 1, 0);
  CHECK(r.converged);
  REQUIRE(r.boundary_cells.size() == 1);
  CHECK(r.boundary_cells[0] == std::make_pair(std::size_t{0}, std::size_t{1}));
  CHECK(r.chart.at(0, 1) == Rational(0));
  // with the free cell pinned at 0 only the observed table has mass
  CHECK(r.loglik == doctest::Approx(0.0).epsilon(1e-14));
}
