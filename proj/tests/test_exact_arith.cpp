#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "contab/modular.hpp"
#include "contab/rational.hpp"

using namespace contab;

namespace {

// random numerator/denominator pairs are rarely coprime
Rational frac(long n, long d) { return make_rational(Integer(n), Integer(d)); }

}  // namespace

TEST_CASE("rational text syntax") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("42") == Rational(42));
  CHECK(parse_rational("-0") == Rational(0));
  CHECK(parse_rational("6/4") == Rational(3, 2));  // canonicalized
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a"), ParseError);
  CHECK_THROWS_AS(parse_rational("1 /2"), ParseError);
  CHECK(to_string(parse_rational("-12/35")) == "-12/35");
}

TEST_CASE("make_rational canonical form") {
  Rational q = make_rational(Integer(-4), Integer(-6));
  CHECK(q == Rational(2, 3));
  CHECK(q.get_den() == 3);
  CHECK_THROWS(make_rational(Integer(1), Integer(0)));
}

TEST_CASE("exact arithmetic round trips") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  for (int k = 0; k < 200; ++k) {
    Rational a = frac(d(rng), 1 + std::abs(d(rng)));
    Rational b = frac(d(rng), 1 + std::abs(d(rng)));
    CHECK(Rational(a + b - b) == a);
    if (!is_zero(b)) CHECK(Rational(a * b / b) == a);
  }
}

TEST_CASE("pow and factorial helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(pow_rational(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow_rational(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(pow_rational(Rational(7), 0) == Rational(1));
}

TEST_CASE("log_abs far outside double range") {
  Rational big = pow_rational(Rational(10), 5000);
  CHECK(log_abs(big) == doctest::Approx(5000 * std::log(10.0)));
  CHECK(log_abs(Rational(-1, 2)) == doctest::Approx(-std::log(2.0)));
}

TEST_CASE("crt_combine") {
  auto r = crt_combine({{Integer(1), Integer(3)}, {Integer(2), Integer(5)}});
  CHECK(r.value == 7);
  CHECK(r.modulus == 15);

  r = crt_combine({{Integer(0), Integer(3)}, {Integer(0), Integer(5)}, {Integer(0), Integer(7)}});
  CHECK(r.value == 0);
  CHECK(r.modulus == 105);

  r = crt_combine({{Integer(2), Integer(7)}, {Integer(2), Integer(11)}});
  CHECK(r.value == 2);
  CHECK(r.modulus == 77);

  CHECK_THROWS_AS(crt_combine({}), std::invalid_argument);
}

TEST_CASE("crt_combine is order independent") {
  std::vector<Residue> rs = {{Integer(5), Integer(7)},
                             {Integer(3), Integer(11)},
                             {Integer(12), Integer(13)}};
  auto a = crt_combine(rs);
  std::reverse(rs.begin(), rs.end());
  auto b = crt_combine(rs);
  CHECK(a.value == b.value);
  CHECK(a.modulus == b.modulus);
}

TEST_CASE("rational_reconstruct") {
  auto q = rational_reconstruct(Integer(6), Integer(11));
  REQUIRE(q);
  CHECK(*q == Rational(1, 2));

  q = rational_reconstruct(Integer(0), Integer(101));
  REQUIRE(q);
  CHECK(*q == Rational(0));

  CHECK_FALSE(rational_reconstruct(Integer(5), Integer(13)));
}

TEST_CASE("mod_reduce") {
  CHECK(mod_reduce(Rational(1, 2), 7) == 4);
  CHECK_FALSE(mod_reduce(Rational(1, 7), 7));
  CHECK(mod_reduce(Rational(3), 5) == 3);
  CHECK(mod_reduce(Rational(-1, 3), 7) == 2);  // -5 = -1*3^-1 mod 7
}

TEST_CASE("word primes are descending, prime, and prefix stable") {
  auto p8 = word_primes(8);
  auto p16 = word_primes(16);
  REQUIRE(p16.size() == 16);
  for (std::size_t i = 0; i < 8; ++i) CHECK(p8[i] == p16[i]);
  for (std::size_t i = 1; i < p16.size(); ++i) CHECK(p16[i] < p16[i - 1]);
  for (std::uint64_t p : p16) {
    CHECK(p < (1ull << 62));
    Integer z(static_cast<unsigned long>(p));
    CHECK(mpz_probab_prime_p(z.get_mpz_t(), 30) != 0);
  }
}

TEST_CASE("reduce / CRT / reconstruct round trip") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(1, (1l << 30) - 1);
  std::bernoulli_distribution coin;
  auto primes = word_primes(4);
  for (int k = 0; k < 100; ++k) {
    Rational q = frac(coin(rng) ? d(rng) : -d(rng), d(rng));
    // two 62-bit primes put the product far above 2*max(num^2, den^2)
    std::vector<Residue> rs;
    for (std::size_t i = 0; i < 2; ++i) {
      auto image = mod_reduce(q, primes[i]);
      REQUIRE(image);
      rs.push_back({Integer(*image), Integer(static_cast<unsigned long>(primes[i]))});
    }
    auto crt = crt_combine(rs);
    auto back = rational_reconstruct(crt.value, crt.modulus);
    REQUIRE(back);
    CHECK(*back == q);
  }
}

TEST_CASE("reconstruction is unique above the bound") {
  // below the bound the reconstruction either fails or differs; above it,
  // the answer is pinned exactly
  Rational q = frac(123456789, 987654321);
  auto primes = word_primes(2);
  std::vector<Residue> rs;
  for (auto p : primes) {
    auto image = mod_reduce(q, p);
    REQUIRE(image);
    rs.push_back({Integer(*image), Integer(static_cast<unsigned long>(p))});
  }
  auto crt = crt_combine(rs);
  auto back = rational_reconstruct(crt.value, crt.modulus);
  REQUIRE(back);
  CHECK(*back == q);
}
