// Exact arbitrary-precision integers and rationals, backed by GMP.
//
// Rational is always kept canonical: positive denominator, numerator and
// denominator coprime. Every helper below preserves that invariant.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace contab {

using Integer = mpz_class;
using Rational = mpq_class;

// n/d in canonical form; d must be nonzero.
Rational make_rational(Integer n, Integer d);

// Text syntax used repo-wide: `<int>` or `<int>/<uint>`, optional leading
// `-`, no whitespace inside the token.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

Integer factorial(unsigned long n);

// q^e for integer e; e < 0 requires q != 0.
Rational pow_rational(const Rational& q, long e);

// Natural log of |q| as a double, usable far outside double range.
// q must be nonzero.
double log_abs(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t position)
      : std::runtime_error(std::move(msg)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace contab
