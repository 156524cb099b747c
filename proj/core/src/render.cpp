#include "contab/render.hpp"

#include <stdexcept>

namespace contab {

namespace {

// round P/Q (both positive) to the nearest integer, ties to even
Integer round_half_even(const Integer& P, const Integer& Q) {
  Integer m, r;
  mpz_fdiv_qr(m.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t(), Q.get_mpz_t());
  int c = cmp(r * 2, Q);
  if (c > 0 || (c == 0 && mpz_odd_p(m.get_mpz_t()))) m += 1;
  return m;
}

Integer pow10(unsigned long e) {
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), 10, e);
  return v;
}

}  // namespace

std::string render_decimal(const Rational& q, int sig_digits) {
  if (sig_digits < 1) throw std::invalid_argument("need at least one digit");
  if (contab::is_zero(q)) return "0";
  if (contab::is_integer(q) && abs(q.get_num()) < 1000000)
    return q.get_num().get_str();

  bool negative = sgn(q) < 0;
  Integer num = abs(q.get_num()), den = q.get_den();

  // exponent E with 10^E <= |q| < 10^(E+1), starting from digit counts
  long E = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  auto scale_cmp = [&](long e, int bound_exp) {
    // compare |q| / 10^e against 10^bound_exp
    Integer lhs = num, rhs = den;
    long shift = e + bound_exp;
    if (shift >= 0)
      rhs *= pow10(static_cast<unsigned long>(shift));
    else
      lhs *= pow10(static_cast<unsigned long>(-shift));
    return cmp(lhs, rhs);
  };
  while (scale_cmp(E, 1) >= 0) ++E;
  while (scale_cmp(E, 0) < 0) --E;

  // mantissa with sig_digits digits: round(|q| * 10^(sig_digits-1-E))
  long k = sig_digits - 1 - E;
  Integer P = num, Q = den;
  if (k >= 0)
    P *= pow10(static_cast<unsigned long>(k));
  else
    Q *= pow10(static_cast<unsigned long>(-k));
  Integer m = round_half_even(P, Q);
  if (m >= pow10(static_cast<unsigned long>(sig_digits))) {
    // rounding carried into a new leading digit (e.g. 9.9995 -> 10.00)
    m = pow10(static_cast<unsigned long>(sig_digits - 1));
    ++E;
  }

  std::string digits = m.get_str();
  std::string out = negative ? "-" : "";
  out += digits.substr(0, 1);
  if (sig_digits > 1) out += "." + digits.substr(1);
  out += "e";
  out += E >= 0 ? "+" : "-";
  out += std::to_string(E >= 0 ? E : -E);
  return out;
}

}  // namespace contab
