#include "contab/modular.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace contab {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> word_primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<std::uint64_t> cache;  // descending from 2^62
  static Integer cursor = Integer(1) << 62;

  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() < count) {
    // scan downward for the next prime below the cursor
    Integer candidate = cursor - 1;
    while (mpz_probab_prime_p(candidate.get_mpz_t(), 40) == 0) candidate -= 1;
    cache.push_back(candidate.get_ui());
    cursor = candidate;
  }
  return {cache.begin(), cache.begin() + count};
}

CrtResult crt_combine(const std::vector<Residue>& residues) {
  if (residues.empty())
    throw std::invalid_argument("crt_combine: empty residue list");
  Integer value = residues[0].value;
  Integer modulus = residues[0].modulus;
  for (std::size_t i = 1; i < residues.size(); ++i) {
    const Integer& v = residues[i].value;
    const Integer& m = residues[i].modulus;
    // value + modulus * k with k = (v - value) / modulus mod m
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t()) == 0)
      throw std::invalid_argument("crt_combine: moduli not coprime");
    Integer k = ((v - value) * inv) % m;
    if (sgn(k) < 0) k += m;
    value += modulus * k;
    modulus *= m;
  }
  return {value, modulus};
}

std::optional<Rational> rational_reconstruct(const Integer& g, const Integer& P) {
  if (sgn(g) < 0 || g >= P)
    throw std::invalid_argument("rational_reconstruct: g out of [0, P)");
  Integer bound;  // floor(sqrt(P/2))
  {
    Integer half = P / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  }
  // half-extended Euclid, keeping r_i = t_i * g (mod P)
  Integer r0 = P, r1 = g;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Integer n = r1, d = t1;
  if (sgn(d) < 0) {
    n = -n;
    d = -d;
  }
  if (sgn(d) == 0 || d > bound) return std::nullopt;
  Integer gn;
  mpz_gcd(gn.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (gn != 1) return std::nullopt;
  mpz_gcd(gn.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
  if (gn != 1) return std::nullopt;
  return make_rational(std::move(n), std::move(d));
}

std::uint64_t mod_reduce_int(const Integer& n, std::uint64_t p) {
  Integer r = n % Integer(p);
  if (sgn(r) < 0) r += Integer(p);
  return r.get_ui();
}

std::optional<std::uint64_t> mod_reduce(const Rational& q, std::uint64_t p) {
  std::uint64_t den = mod_reduce_int(q.get_den(), p);
  if (den == 0) return std::nullopt;
  std::uint64_t num = mod_reduce_int(q.get_num(), p);
  return mul_mod(num, inv_mod(den, p), p);
}

}  // namespace contab
