#include "contab/rational.hpp"

#include <cctype>
#include <cmath>

namespace contab {

Rational make_rational(Integer n, Integer d) {
  if (sgn(d) == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(std::move(n), std::move(d));
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational token", 0);
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-') {
    neg = true;
    ++i;
  }
  auto digits = [&](std::size_t start) {
    std::size_t j = start;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == start) throw ParseError("expected digits in rational token", start);
    return j;
  };
  std::size_t num_end = digits(i);
  Integer num(std::string(text.substr(i, num_end - i)), 10);
  Integer den = 1;
  if (num_end < text.size()) {
    if (text[num_end] != '/')
      throw ParseError("unexpected character in rational token", num_end);
    std::size_t den_end = digits(num_end + 1);
    if (den_end != text.size())
      throw ParseError("trailing characters in rational token", den_end);
    den = Integer(std::string(text.substr(num_end + 1, den_end - num_end - 1)), 10);
    if (sgn(den) == 0) throw ParseError("zero denominator", num_end + 1);
  }
  if (neg) num = -num;
  return make_rational(std::move(num), std::move(den));
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& n) { return n.get_str(); }

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (sgn(q) == 0) {
    if (e < 0) throw std::invalid_argument("pow_rational: 0 to negative power");
    return Rational(0);
  }
  unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num().get_mpz_t(), ae);
  mpz_pow_ui(d.get_mpz_t(), q.get_den().get_mpz_t(), ae);
  if (e < 0) std::swap(n, d);
  return make_rational(std::move(n), std::move(d));
}

double log_abs(const Rational& q) {
  if (sgn(q) == 0) throw std::invalid_argument("log_abs: zero argument");
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  return std::log(std::fabs(mn)) - std::log(std::fabs(md)) +
         (static_cast<double>(en) - static_cast<double>(ed)) * std::log(2.0);
}

}  // namespace contab
