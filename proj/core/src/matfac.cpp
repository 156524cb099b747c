#include "contab/matfac.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace contab {

namespace {

// application-order step sequence
std::vector<long> step_order(const MatFacRequest& req) {
  std::vector<long> ts;
  if (req.lo > req.hi) return ts;
  ts.reserve(static_cast<std::size_t>(req.hi - req.lo + 1));
  if (req.ascending)
    for (long t = req.lo; t <= req.hi; ++t) ts.push_back(t);
  else
    for (long t = req.hi; t >= req.lo; --t) ts.push_back(t);
  return ts;
}

// integer vector with one shared positive denominator
struct IntVec {
  std::vector<Integer> nums;
  Integer den;
};

IntVec to_intvec(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  IntVec out;
  out.den = den;
  out.nums.reserve(v.size());
  for (const auto& q : v) out.nums.push_back(q.get_num() * (den / q.get_den()));
  return out;
}

std::vector<Rational> from_intvec(const IntVec& v) {
  std::vector<Rational> out;
  out.reserve(v.nums.size());
  for (const auto& n : v.nums) out.push_back(make_rational(n, v.den));
  return out;
}

// integer matrix with one shared positive denominator (row-major)
struct IntMat {
  std::size_t n = 0;
  std::vector<Integer> a;
  Integer den;
};

IntMat to_intmat(std::size_t n, const std::vector<Rational>& entries) {
  Integer den = 1;
  for (const auto& q : entries)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  IntMat out;
  out.n = n;
  out.den = den;
  out.a.reserve(entries.size());
  for (const auto& q : entries) out.a.push_back(q.get_num() * (den / q.get_den()));
  return out;
}

void reduce_gcd(std::vector<Integer>& nums, Integer& den) {
  Integer g = den;
  for (const auto& n : nums) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& n : nums) n /= g;
    den /= g;
  }
}

IntMat matmul(const IntMat& b, const IntMat& a) {  // b*a
  IntMat out;
  out.n = a.n;
  out.den = a.den * b.den;
  out.a.assign(a.n * a.n, Integer(0));
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t k = 0; k < a.n; ++k) {
      const Integer& bik = b.a[i * a.n + k];
      if (sgn(bik) == 0) continue;
      for (std::size_t j = 0; j < a.n; ++j)
        out.a[i * a.n + j] += bik * a.a[k * a.n + j];
    }
  return out;
}

}  // namespace

std::vector<Rational> matfac_exact(const MatFacRequest& req) {
  if (req.initial.size() != req.family.size)
    throw std::invalid_argument("matfac: initial vector size mismatch");
  auto ts = step_order(req);
  IntVec v = to_intvec(req.initial);
  const std::size_t n = req.family.size;
  long interval = req.reduction.interval >= 1 ? req.reduction.interval : 1;
  long since_reduce = 0;
  std::vector<Integer> next(n);
  for (long t : ts) {
    IntMat m = to_intmat(n, eval_matrix_at(req.family, Rational(t)));
    for (std::size_t i = 0; i < n; ++i) {
      Integer acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += m.a[i * n + j] * v.nums[j];
      next[i] = std::move(acc);
    }
    v.nums.swap(next);
    v.den *= m.den;
    if (++since_reduce >= interval) {
      reduce_gcd(v.nums, v.den);
      since_reduce = 0;
    }
  }
  return from_intvec(v);
}

std::vector<Rational> matfac_binsplit(const MatFacRequest& req) {
  if (req.initial.size() != req.family.size)
    throw std::invalid_argument("matfac: initial vector size mismatch");
  auto ts = step_order(req);
  if (ts.empty()) return from_intvec(to_intvec(req.initial));
  const std::size_t n = req.family.size;

  // product of the evaluated matrices over ts[i..j], later-applied factors
  // on the left
  auto product = [&](auto&& self, std::size_t i, std::size_t j) -> IntMat {
    if (i == j) return to_intmat(n, eval_matrix_at(req.family, Rational(ts[i])));
    std::size_t mid = i + (j - i) / 2;
    IntMat left = self(self, i, mid);        // applied first
    IntMat right = self(self, mid + 1, j);   // applied second
    IntMat out = matmul(right, left);
    reduce_gcd(out.a, out.den);
    return out;
  };
  IntMat total = product(product, 0, ts.size() - 1);

  IntVec v = to_intvec(req.initial);
  std::vector<Integer> nums(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer acc(0);
    for (std::size_t j = 0; j < n; ++j) acc += total.a[i * n + j] * v.nums[j];
    nums[i] = std::move(acc);
  }
  IntVec out{std::move(nums), v.den * total.den};
  return from_intvec(out);
}

namespace {

// chain for one prime; nullopt = unlucky, PoleError propagates
std::optional<std::vector<std::uint64_t>> run_chain_mod(const MatFacRequest& req,
                                                        const std::vector<long>& ts,
                                                        std::uint64_t p) {
  const std::size_t n = req.family.size;
  std::vector<ReducedRatFun> fam(n * n);
  for (std::size_t e = 0; e < n * n; ++e) {
    auto red = reduce_ratfun(req.family.entries[e], p);
    if (!red) return std::nullopt;
    fam[e] = std::move(*red);
  }
  std::vector<std::uint64_t> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = mod_reduce(req.initial[i], p);
    if (!r) return std::nullopt;
    v[i] = *r;
  }
  std::vector<std::uint64_t> next(n);
  for (long t : ts) {
    std::uint64_t tm = t >= 0 ? static_cast<std::uint64_t>(t) % p
                              : p - (static_cast<std::uint64_t>(-t) % p);
    if (tm == p) tm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const ReducedRatFun& f = fam[i * n + j];
        std::uint64_t den = eval_poly_mod(f.den, tm, p);
        if (den == 0) {
          Rational tq(t);
          if (contab::is_zero(req.family.at(i, j).den().eval(tq)))
            throw PoleError(i, j, tq);
          return std::nullopt;  // unlucky
        }
        std::uint64_t val =
            mul_mod(eval_poly_mod(f.num, tm, p), inv_mod(den, p), p);
        acc = add_mod(acc, mul_mod(val, v[j], p), p);
      }
      next[i] = acc;
    }
    v = next;
  }
  return v;
}

struct PrimeRun {
  std::uint64_t prime;
  std::optional<std::vector<std::uint64_t>> residues;  // nullopt = unlucky
};

// compute chains for primes[done..] in parallel, appending into runs
void run_primes(const MatFacRequest& req, const std::vector<long>& ts,
                const std::vector<std::uint64_t>& primes, std::size_t from,
                std::vector<PrimeRun>& runs) {
  std::size_t count = primes.size() - from;
  runs.resize(primes.size());
  unsigned workers = std::max(1u, req.modular.workers);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = from; i < primes.size(); ++i)
      runs[i] = {primes[i], run_chain_mod(req, ts, primes[i])};
    return;
  }
  std::atomic<std::size_t> cursor{from};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= primes.size()) return;
      try {
        runs[i] = {primes[i], run_chain_mod(req, ts, primes[i])};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// CRT + per-entry reconstruction over the lucky primes among runs[0..count)
std::optional<std::vector<Rational>> reconstruct(const std::vector<PrimeRun>& runs,
                                                 std::size_t count, std::size_t dim) {
  std::vector<const PrimeRun*> lucky;
  for (std::size_t i = 0; i < count; ++i)
    if (runs[i].residues) lucky.push_back(&runs[i]);
  if (lucky.empty()) return std::nullopt;
  // canonical merge order regardless of completion order
  std::sort(lucky.begin(), lucky.end(),
            [](const PrimeRun* a, const PrimeRun* b) { return a->prime < b->prime; });

  std::vector<Rational> out(dim);
  for (std::size_t e = 0; e < dim; ++e) {
    std::vector<Residue> rs;
    rs.reserve(lucky.size());
    for (const PrimeRun* run : lucky)
      rs.push_back({Integer((*run->residues)[e]), Integer(run->prime)});
    CrtResult crt = crt_combine(rs);
    auto q = rational_reconstruct(crt.value, crt.modulus);
    if (!q) return std::nullopt;
    out[e] = std::move(*q);
  }
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> matfac_modular(const MatFacRequest& req) {
  if (req.initial.size() != req.family.size)
    throw std::invalid_argument("matfac: initial vector size mismatch");
  auto ts = step_order(req);
  const std::size_t dim = req.family.size;

  const bool adaptive = req.modular.prime_count == 0;
  const std::size_t kMaxPrimes = 8192;
  std::size_t count = adaptive ? 16 : req.modular.prime_count;
  // spare primes beyond `count` serve as held-out verifiers
  const std::size_t spares = req.modular.verify ? 3 : 0;

  std::vector<PrimeRun> runs;
  std::size_t computed = 0;
  for (;;) {
    std::vector<std::uint64_t> primes = word_primes(count + spares);
    run_primes(req, ts, primes, computed, runs);
    computed = primes.size();

    auto candidate = reconstruct(runs, count, dim);
    if (candidate) {
      bool verified = true;
      if (req.modular.verify) {
        verified = false;
        for (std::size_t s = count; s < count + spares; ++s) {
          if (!runs[s].residues) continue;  // unlucky verifier, try next
          std::uint64_t q = runs[s].prime;
          bool usable = true, match = true;
          for (std::size_t e = 0; e < dim && usable; ++e) {
            auto image = mod_reduce((*candidate)[e], q);
            if (!image) usable = false;
            else if (*image != (*runs[s].residues)[e]) match = false;
          }
          if (!usable) continue;
          verified = match;
          break;
        }
      }
      if (verified) return candidate;
    }
    if (!adaptive || count >= kMaxPrimes) return std::nullopt;
    count *= 2;
  }
}

std::optional<std::vector<Rational>> matfac(const MatFacRequest& req) {
  switch (req.strategy) {
    case Strategy::exact:
      return matfac_exact(req);
    case Strategy::modular:
      return matfac_modular(req);
    case Strategy::binsplit:
      return matfac_binsplit(req);
  }
  throw std::logic_error("matfac: unknown strategy");
}

}  // namespace contab
