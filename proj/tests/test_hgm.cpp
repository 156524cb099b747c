#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "contab/hgm.hpp"

using namespace contab;

#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must point at the fixture directory"
#endif

TEST_CASE("2x2 base reduction") {
  Base2x2 b = reduce_2x2(MarginalSums({5, 7}, {8, 4}), CellParams::ones(2, 2));
  CHECK_FALSE(b.degenerate);
  CHECK(b.u11 == 5);
  CHECK(b.u21 == 3);
  CHECK(b.u22 == 4);
  // 2F1 parameters (a, b, c) = (-u11, -u22, u21 + 1) = (-5, -4, 4)

  long N = 7;
  CellParams p{2, 2, {Rational(1), (Rational(1) - Rational(1, N)) / 56,
                      Rational(1), Rational(1)}};
  Base2x2 bm = reduce_2x2(MarginalSums({36 * N, 13 * N - 1}, {38 * N - 1, 11 * N}), p);
  CHECK(bm.u11 == 36 * N);
  CHECK(bm.u21 == 2 * N - 1);
  CHECK(bm.u22 == 11 * N);
  CHECK(bm.x == (Rational(1) - Rational(1, N)) / 56);

  Base2x2 t = reduce_2x2(MarginalSums({1, 1}, {1, 1}), CellParams::ones(2, 2));
  CHECK(t.u11 == 1);
  CHECK(t.u21 == 0);
  CHECK(t.u22 == 1);
  CHECK(t.x == Rational(1));

  CHECK(reduce_2x2(MarginalSums({2, 0}, {1, 1}), CellParams::ones(2, 2)).degenerate);
  CHECK_THROWS_AS(reduce_2x2(MarginalSums({1, 1, 1}, {2, 1}), CellParams::ones(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("hgm agrees with brute force on 2x2") {
  MarginalSums b11({1, 1}, {1, 1});
  Hgm2x2Result r = hgm_2x2(b11, CellParams::ones(2, 2));
  CHECK(r.z == Rational(2));
  for (const Rational& e : r.expectations) CHECK(e == Rational(1, 2));

  std::mt19937_64 rng(37);
  std::uniform_int_distribution<long> d(0, 10), pd(1, 9);
  int done = 0;
  while (done < 50) {
    long r1 = d(rng), r2 = d(rng);
    if (r1 + r2 == 0) continue;
    std::uniform_int_distribution<long> cd(0, r1 + r2);
    long c1 = cd(rng);
    MarginalSums beta({r1, r2}, {c1, r1 + r2 - c1});
    CellParams p{2, 2, {}};
    for (int k = 0; k < 4; ++k) p.p.push_back(make_rational(Integer(pd(rng)), Integer(pd(rng))));
    Hgm2x2Result got = hgm_2x2(beta, p);
    CHECK(got.z == z_naive(beta, p));
    CHECK(got.expectations == expectations_naive(beta, p));
    ++done;
  }
}

TEST_CASE("degenerate 2x2 problems fall back to brute force") {
  MarginalSums beta({2, 0}, {1, 1});
  Hgm2x2Result r = hgm_2x2(beta, CellParams::ones(2, 2));
  CHECK(r.z == z_naive(beta, CellParams::ones(2, 2)));
  CHECK(r.expectations == expectations_naive(beta, CellParams::ones(2, 2)));

  // zero parameter in a spot the permutation cannot avoid
  MarginalSums b2({2, 2}, {2, 2});
  CellParams p0{2, 2, {Rational(0), Rational(1), Rational(1), Rational(1)}};
  Hgm2x2Result r2 = hgm_2x2(b2, p0);
  CHECK(r2.z == z_naive(b2, p0));
  CHECK(r2.expectations == expectations_naive(b2, p0));
}

TEST_CASE("permutation coherence") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> pd(1, 9);
  MarginalSums beta({3, 5}, {6, 2});
  CellParams p{2, 2, {}};
  for (int k = 0; k < 4; ++k) p.p.push_back(make_rational(Integer(pd(rng)), Integer(pd(rng))));

  MarginalSums swapped({3, 5}, {2, 6});
  CellParams ps{2, 2, {p.at(0, 1), p.at(0, 0), p.at(1, 1), p.at(1, 0)}};
  Hgm2x2Result a = hgm_2x2(beta, p);
  Hgm2x2Result b = hgm_2x2(swapped, ps);
  CHECK(a.z == b.z);
  CHECK(a.expectations[0] == b.expectations[1]);
  CHECK(a.expectations[2] == b.expectations[3]);
}

TEST_CASE("benchmark chain through the table reduction") {
  long N = 5;
  CellParams p{2, 2, {Rational(1), (Rational(1) - Rational(1, N)) / 56,
                      Rational(1), Rational(1)}};
  MarginalSums beta({36 * N, 13 * N - 1}, {38 * N - 1, 11 * N});
  Hgm2x2Result exact = hgm_2x2(beta, p, Strategy::exact);
  Hgm2x2Result bs = hgm_2x2(beta, p, Strategy::binsplit);
  Hgm2x2Result mod = hgm_2x2(beta, p, Strategy::modular);
  CHECK(exact.z == bs.z);
  CHECK(exact.z == mod.z);
  CHECK(exact.expectations == mod.expectations);
}

TEST_CASE("general driver applies ascending chains") {
  MatFamFile fam = load_matfam(std::string(TEST_DATA_DIR) + "/c2_family.matfam");
  std::vector<Rational> v = {Rational(1),     Rational(-1, 2), Rational(2, 3),
                             Rational(5),     Rational(0),     Rational(7, 11)};

  ContiguityPlan plan;
  plan.shift_counts = {2};  // C2(1) C2(0)
  plan.families = {fam.matrix};
  auto got = hgm_general(plan, v);

  auto m0 = eval_matrix_at(fam.matrix, Rational(0));
  auto m1 = eval_matrix_at(fam.matrix, Rational(1));
  auto apply = [](const std::vector<Rational>& m, const std::vector<Rational>& x) {
    std::vector<Rational> y(6, Rational(0));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) y[i] += m[i * 6 + j] * x[j];
    return y;
  };
  CHECK(got == apply(m1, apply(m0, v)));

  // single step equals one pointwise application
  plan.shift_counts = {1};
  CHECK(hgm_general(plan, v) == apply(m0, v));

  // empty products leave the vector alone
  plan.shift_counts = {0};
  CHECK(hgm_general(plan, v) == v);
}

TEST_CASE("general driver reproduces the built-in 2x2 route") {
  Rational b(-4), c(4), x(2, 3);
  RatFunMatrix fam = contiguity_family(b, c, x);
  GaussManinVector2F1 init = gauss_manin_initial(b, c, x);
  GaussManinVector2F1 want = gauss_manin_2f1(-5, b, c, x);

  // the descending 2F1 chain, spelled as an explicit matfac request
  MatFacRequest req;
  req.family = fam;
  req.initial = {init.f, init.theta_f};
  req.lo = -5;
  req.hi = -2;
  auto got = matfac(req);
  REQUIRE(got);
  CHECK((*got)[0] == want.f);
  CHECK((*got)[1] == want.theta_f);
}
