#include "contab/zero_interp.hpp"

#include <algorithm>
#include <random>

namespace contab {

namespace {

// exact nullspace vector of an m x n system (m < n expected), row-major
std::vector<Rational> nullspace_vector(std::vector<Rational> a, std::size_t m,
                                       std::size_t n) {
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t pr = row;
    while (pr < m && contab::is_zero(a[pr * n + col])) ++pr;
    if (pr == m) continue;
    if (pr != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pr * n + j], a[row * n + j]);
    Rational inv = a[row * n + col];
    for (std::size_t j = col; j < n; ++j) a[row * n + j] /= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || contab::is_zero(a[i * n + col])) continue;
      Rational f = a[i * n + col];
      for (std::size_t j = col; j < n; ++j) a[i * n + j] -= f * a[row * n + j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() == n) throw SingularSystem("homogeneous system has no nullspace");

  // choose the last free column as the free variable
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = n;
  for (std::size_t c = n; c-- > 0;)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  std::vector<Rational> x(n, Rational(0));
  x[free_col] = Rational(1);
  for (std::size_t r = 0; r < pivot_col.size(); ++r)
    x[pivot_col[r]] = -a[r * n + free_col];
  return x;
}

}  // namespace

FittedRatFun fit_rational_function(const std::vector<std::pair<Rational, Rational>>& points,
                                   long d_num, long d_den) {
  if (d_num < 0 || d_den < 0) throw std::invalid_argument("negative degree bound");
  const std::size_t unknowns = static_cast<std::size_t>(d_num + d_den + 2);
  const std::size_t fit_count = unknowns - 1;  // d_num + d_den + 1
  if (points.size() < unknowns)
    throw std::invalid_argument("need at least d_num + d_den + 2 sample points");

  // rows: num(s_i) - v_i * den(s_i) = 0
  std::vector<Rational> a(fit_count * unknowns, Rational(0));
  for (std::size_t i = 0; i < fit_count; ++i) {
    const auto& [s, v] = points[i];
    Rational sp(1);
    for (long k = 0; k <= d_num; ++k) {
      a[i * unknowns + static_cast<std::size_t>(k)] = sp;
      sp *= s;
    }
    sp = Rational(1);
    for (long k = 0; k <= d_den; ++k) {
      a[i * unknowns + static_cast<std::size_t>(d_num + 1 + k)] = -v * sp;
      sp *= s;
    }
  }
  std::vector<Rational> x = nullspace_vector(std::move(a), fit_count, unknowns);

  std::vector<Rational> num_c(x.begin(), x.begin() + d_num + 1);
  std::vector<Rational> den_c(x.begin() + d_num + 1, x.end());
  Poly den(std::move(den_c));
  if (den.is_zero()) throw SingularSystem("fitted denominator is identically zero");
  RatFun f(Poly(std::move(num_c)), std::move(den));

  // the fit must reproduce every sample, held-out ones included
  for (const auto& [s, v] : points) {
    auto got = f.eval(s);
    if (!got || *got != v)
      throw InconsistentSamples("fitted function does not reproduce the samples");
  }
  return {std::move(f), d_num, d_den};
}

namespace {

// upper bound for the degree in the line parameter of Z and of the
// unnormalized expectations: no fiber table can put more than
// min(row_i, col_j) in a zero cell
long line_degree_bound(const MarginalSums& beta, const std::vector<std::size_t>& zeros) {
  long d = 0;
  for (std::size_t k : zeros) {
    std::size_t i = k / beta.r2(), j = k % beta.r2();
    d += std::min(beta.rows()[i], beta.cols()[j]);
  }
  return std::min(d, beta.total());
}

}  // namespace

std::vector<Rational> expectation_with_zeros(const MarginalSums& beta,
                                             const CellParams& p,
                                             const ExpectationEvaluator& evaluator,
                                             std::uint64_t seed,
                                             const Rational& offset_range,
                                             int extra_samples) {
  if (p.r1 != beta.r1() || p.r2 != beta.r2())
    throw std::invalid_argument("cell parameter shape mismatch");
  if (sgn(offset_range) <= 0) throw std::invalid_argument("offset range must be positive");

  std::vector<std::size_t> zeros;
  for (std::size_t k = 0; k < p.p.size(); ++k)
    if (contab::is_zero(p.p[k])) zeros.push_back(k);
  if (zeros.empty()) return evaluator(p);

  const long d = line_degree_bound(beta, zeros);
  const std::size_t n_samples =
      static_cast<std::size_t>(2 * d + 2 + std::max(extra_samples, 0));
  const std::size_t n_cells = p.p.size();

  const int kMaxAttempts = 5;
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // direction: positive rational grid values at the zero cells only
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> grid(1, 20);
    std::vector<Rational> direction(n_cells, Rational(0));
    for (std::size_t k : zeros) direction[k] = Rational(grid(rng), 20);

    // evaluate along s_k = k * range / n_samples, k = 1..n_samples
    std::vector<Rational> svals(n_samples);
    std::vector<std::vector<Rational>> evals(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
      svals[k] = Rational(static_cast<long>(k + 1)) * offset_range /
                 Rational(static_cast<long>(n_samples));
      CellParams ps = p;
      for (std::size_t c : zeros) ps.p[c] += svals[k] * direction[c];
      evals[k] = evaluator(ps);
      if (evals[k].size() != n_cells)
        throw std::invalid_argument("evaluator returned wrong grid size");
    }

    try {
      std::vector<Rational> out(n_cells);
      for (std::size_t c = 0; c < n_cells; ++c) {
        std::vector<std::pair<Rational, Rational>> pts(n_samples);
        for (std::size_t k = 0; k < n_samples; ++k) pts[k] = {svals[k], evals[k][c]};
        FittedRatFun fit = fit_rational_function(pts, d, d);
        auto v = fit.f.eval(Rational(0));
        if (!v) throw InconsistentSamples("fitted denominator vanishes at s=0");
        out[c] = std::move(*v);
      }
      return out;
    } catch (const InconsistentSamples& e) {
      last_error = e.what();
    } catch (const SingularSystem& e) {
      last_error = e.what();
    }
  }
  throw std::runtime_error("zero-cell interpolation failed after retries: " + last_error);
}

}  // namespace contab
