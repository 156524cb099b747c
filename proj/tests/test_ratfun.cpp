#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "contab/ratfun.hpp"

using namespace contab;

#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must point at the fixture directory"
#endif

TEST_CASE("polynomial basics") {
  Poly t = Poly::variable();
  Poly p = t * t - t;  // t^2 - t
  CHECK(p.degree() == 2);
  CHECK(p.eval(Rational(3)) == Rational(6));
  CHECK(Poly().degree() == -1);

  Poly q, r;
  Poly::divmod(p, t, q, r);
  CHECK(q == t - Poly(Rational(1)));
  CHECK(r.is_zero());

  CHECK(Poly::gcd(p, t) == t);  // monic
}

TEST_CASE("expression parser") {
  RatFun f = parse_ratfun_expr("-(35*t+29)/(35*(t+2))");
  CHECK(*f.eval(Rational(0)) == Rational(-29, 70));

  CHECK(parse_ratfun_expr("1/5") == RatFun(Rational(1, 5)));
  CHECK(*parse_ratfun_expr("t^2 - t").eval(Rational(3)) == Rational(6));
  CHECK(parse_ratfun_expr("(t^2-1)/(t-1)") == parse_ratfun_expr("t+1"));
  CHECK(parse_ratfun_expr("2*t^3").pow(2) == parse_ratfun_expr("4*t^6"));

  CHECK_THROWS_AS(parse_ratfun_expr("t +"), ParseError);
  CHECK_THROWS_AS(parse_ratfun_expr("(t"), ParseError);
  CHECK_THROWS_AS(parse_ratfun_expr("t^t"), ParseError);
  CHECK_THROWS_AS(parse_ratfun_expr("1/(t-t)"), ParseError);
}

TEST_CASE("parse, render, parse is the identity") {
  for (const char* expr : {"-(35*t+29)/(35*(t+2))", "(21*t-73)/(35*(t+2))",
                           "1/5", "0", "t^4 - 2*t + 7/3"}) {
    RatFun f = parse_ratfun_expr(expr);
    CHECK(parse_ratfun_expr(f.to_string()) == f);
  }
}

TEST_CASE("exact matrix evaluation and poles") {
  RatFunMatrix m = RatFunMatrix::zero(2);
  m.at(0, 0) = parse_ratfun_expr("1/(t+2)");
  m.at(0, 1) = parse_ratfun_expr("t");
  m.at(1, 0) = parse_ratfun_expr("3");
  m.at(1, 1) = parse_ratfun_expr("t^2");

  auto vals = eval_matrix_at(m, Rational(1));
  CHECK(vals[0] == Rational(1, 3));
  CHECK(vals[3] == Rational(1));

  CHECK_THROWS_AS(eval_matrix_at(m, Rational(-2)), PoleError);
  try {
    eval_matrix_at(m, Rational(-2));
  } catch (const PoleError& e) {
    CHECK(e.row == 0);
    CHECK(e.col == 0);
  }
}

TEST_CASE("modular evaluation agrees with exact reduction") {
  RatFunMatrix m = RatFunMatrix::zero(1);
  m.at(0, 0) = parse_ratfun_expr("1/2");
  auto r = eval_matrix_mod(m, Integer(3), 7);
  REQUIRE(r);
  CHECK((*r)[0] == 4);

  m.at(0, 0) = parse_ratfun_expr("1/(t+2)");
  CHECK_FALSE(eval_matrix_mod(m, Integer(5), 7));  // 7 | 7: unlucky
  CHECK_THROWS_AS(eval_matrix_mod(m, Integer(-2), 7), PoleError);  // true pole

  m.at(0, 0) = parse_ratfun_expr("-1/35");
  auto image = eval_matrix_mod(m, Integer(0), 11);
  REQUIRE(image);
  CHECK((*image)[0] == *mod_reduce(Rational(-1, 35), 11));
}

TEST_CASE("matfam fixture file") {
  MatFamFile fam = load_matfam(std::string(TEST_DATA_DIR) + "/c2_family.matfam");
  CHECK(fam.direction == 2);
  REQUIRE(fam.matrix.size == 6);

  CHECK(*fam.matrix.at(0, 0).eval(Rational(0)) == Rational(-29, 70));
  CHECK(*fam.matrix.at(3, 3).eval(Rational(1)) == Rational(-52, 105));
  CHECK(fam.matrix.at(5, 5) == RatFun(Rational(-1, 35)));
  CHECK(fam.matrix.at(0, 5).is_zero());

  // write and reload
  std::stringstream buf;
  write_matfam(buf, fam);
  MatFamFile back = parse_matfam(buf);
  CHECK(back.direction == fam.direction);
  CHECK(back.matrix.entries == fam.matrix.entries);
}

TEST_CASE("matfam format errors") {
  std::stringstream bad1("matfam r=2 k=1\n1 | 2\n1\n");
  CHECK_THROWS(parse_matfam(bad1));
  std::stringstream bad2("r=2 k=1\n");
  CHECK_THROWS(parse_matfam(bad2));
}
