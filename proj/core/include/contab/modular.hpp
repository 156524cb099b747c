// Prime-field arithmetic on machine words, Chinese remaindering and
// rational reconstruction. Together with rational.hpp this is the numeric
// substrate of the multimodular engine.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "contab/rational.hpp"

namespace contab {

// All moduli are primes below 2^62, so products fit unsigned __int128.
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

// Inverse in F_p; a must be nonzero mod p.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  return pow_mod(a, p - 2, p);
}

// The `count` largest primes below 2^62, descending, so that a longer list
// extends a shorter one. Deterministic; cached and extended on demand.
std::vector<std::uint64_t> word_primes(std::size_t count);

struct Residue {
  Integer value;
  Integer modulus;
};

struct CrtResult {
  Integer value;    // in [0, modulus)
  Integer modulus;  // product of input moduli
};

// Unique value mod the product of pairwise-coprime moduli.
// Throws std::invalid_argument on an empty input.
CrtResult crt_combine(const std::vector<Residue>& residues);

// Recover n/d from g mod P with |n| <= floor(sqrt(P/2)), 0 < d <= floor(sqrt(P/2)),
// gcd(n,d) = 1, gcd(d,P) = 1. nullopt ("failure") when no such pair exists;
// that signals an insufficient modulus, not a fault.
std::optional<Rational> rational_reconstruct(const Integer& g, const Integer& P);

// Image of q in F_p; nullopt ("unlucky") when p divides the denominator.
std::optional<std::uint64_t> mod_reduce(const Rational& q, std::uint64_t p);

std::uint64_t mod_reduce_int(const Integer& n, std::uint64_t p);

// Per-prime images of one computation, plus the primes that had to be
// skipped as unlucky. Residue vectors are indexed like the primes.
struct ResidueSystem {
  std::vector<std::uint64_t> primes;
  std::vector<std::vector<std::uint64_t>> residues;
  std::vector<std::uint64_t> skipped;
};

}  // namespace contab
