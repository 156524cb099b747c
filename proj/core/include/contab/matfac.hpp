// Generalized matrix factorial: evaluate M(lo) M(lo+1) ... M(hi) F0 exactly,
// with three interchangeable strategies (sequential exact, multimodular,
// binary splitting). All strategies return identical canonical vectors.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "contab/ratfun.hpp"

namespace contab {

enum class Strategy { exact, modular, binsplit };

struct ReductionConfig {
  long interval = 20;  // divide out the shared gcd every `interval` steps
};

struct ModularConfig {
  std::size_t prime_count = 0;  // 0 = adaptive doubling schedule
  unsigned workers = 1;
  bool verify = true;  // hold out one extra prime to check the candidate
};

struct MatFacRequest {
  RatFunMatrix family;
  std::vector<Rational> initial;
  long lo = 0, hi = -1;  // lo > hi is the empty product
  // false: M(hi) applied to the initial vector first, M(lo) last (the
  // descending contiguity chain). true: M(lo) first (ascending chains).
  bool ascending = false;
  Strategy strategy = Strategy::exact;
  ReductionConfig reduction;
  ModularConfig modular;
};

// Sequential exact evaluation with intermediate gcd reduction.
// Throws PoleError when some M(t) has a pole at a required integer.
std::vector<Rational> matfac_exact(const MatFacRequest& req);

// Multimodular evaluation (per-prime chains, CRT, rational reconstruction).
// nullopt = Failure: insufficient primes or verification mismatch. A
// successful result equals matfac_exact bit for bit.
std::optional<std::vector<Rational>> matfac_modular(const MatFacRequest& req);

// Binary splitting over rational matrix products.
std::vector<Rational> matfac_binsplit(const MatFacRequest& req);

// Dispatch on req.strategy; nullopt only possible for Strategy::modular.
std::optional<std::vector<Rational>> matfac(const MatFacRequest& req);

}  // namespace contab
