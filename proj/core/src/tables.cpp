#include "contab/tables.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace contab {

MarginalSums::MarginalSums(std::vector<long> row_sums, std::vector<long> col_sums)
    : rows_(std::move(row_sums)), cols_(std::move(col_sums)) {
  if (rows_.empty() || cols_.empty())
    throw std::invalid_argument("marginal sums must be nonempty");
  for (long v : rows_)
    if (v < 0) throw std::invalid_argument("negative row sum");
  for (long v : cols_)
    if (v < 0) throw std::invalid_argument("negative column sum");
  long rt = std::accumulate(rows_.begin(), rows_.end(), 0L);
  long ct = std::accumulate(cols_.begin(), cols_.end(), 0L);
  if (rt != ct)
    throw std::invalid_argument("row total " + std::to_string(rt) +
                                " != column total " + std::to_string(ct));
  total_ = rt;
}

MarginalSums Table::marginals() const {
  std::vector<long> rs(r1, 0), cs(r2, 0);
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < r2; ++j) {
      rs[i] += at(i, j);
      cs[j] += at(i, j);
    }
  return MarginalSums(std::move(rs), std::move(cs));
}

std::vector<std::vector<int>> build_A(std::size_t r1, std::size_t r2) {
  std::vector<std::vector<int>> A(r1 + r2, std::vector<int>(r1 * r2, 0));
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < r2; ++j) {
      A[i][i * r2 + j] = 1;
      A[r1 + j][i * r2 + j] = 1;
    }
  return A;
}

namespace {

// visit every fiber table in ascending lex order of u^f
template <typename Visit>
void walk_fiber(const MarginalSums& beta, Visit&& visit) {
  const std::size_t r1 = beta.r1(), r2 = beta.r2();
  Table u{r1, r2, std::vector<long>(r1 * r2, 0)};
  std::vector<long> col_left = beta.cols();

  auto rec = [&](auto&& self, std::size_t i, std::size_t j, long row_left) -> void {
    if (i == r1 - 1) {
      // the last row is forced by the remaining column sums; their total
      // equals row_left by marginal consistency
      for (std::size_t k = 0; k < r2; ++k) u.at(i, k) = col_left[k];
      visit(const_cast<const Table&>(u));
      for (std::size_t k = 0; k < r2; ++k) u.at(i, k) = 0;
      return;
    }
    if (j == r2 - 1) {
      // last cell of the row is forced
      if (row_left > col_left[j]) return;
      u.at(i, j) = row_left;
      col_left[j] -= row_left;
      self(self, i + 1, 0, beta.rows()[i + 1]);
      col_left[j] += row_left;
      u.at(i, j) = 0;
      return;
    }
    long cap = std::min(row_left, col_left[j]);
    for (long v = 0; v <= cap; ++v) {
      u.at(i, j) = v;
      col_left[j] -= v;
      self(self, i, j + 1, row_left - v);
      col_left[j] += v;
      u.at(i, j) = 0;
    }
  };
  rec(rec, 0, 0, beta.rows()[0]);
}

// p^u / u! with 0^0 = 1; zero when some p_ij = 0 but u_ij > 0
Rational table_weight(const Table& u, const CellParams& p) {
  Rational w(1);
  for (std::size_t k = 0; k < u.cells.size(); ++k) {
    long c = u.cells[k];
    if (c == 0) continue;
    if (contab::is_zero(p.p[k])) return Rational(0);
    w *= pow_rational(p.p[k], c);
    w /= Rational(factorial(static_cast<unsigned long>(c)));
  }
  return w;
}

void check_shape(const MarginalSums& beta, const CellParams& p) {
  if (p.r1 != beta.r1() || p.r2 != beta.r2())
    throw std::invalid_argument("cell parameter shape mismatch");
}

}  // namespace

std::vector<Table> enumerate_fiber(const MarginalSums& beta) {
  std::vector<Table> out;
  walk_fiber(beta, [&](const Table& u) { out.push_back(u); });
  return out;
}

FiberMoments fiber_moments(const MarginalSums& beta, const CellParams& p,
                           bool with_second) {
  check_shape(beta, p);
  const std::size_t n = beta.r1() * beta.r2();
  FiberMoments m;
  m.z = Rational(0);
  m.first.assign(n, Rational(0));
  if (with_second) m.second.assign(n * n, Rational(0));
  bool any = false;
  walk_fiber(beta, [&](const Table& u) {
    any = true;
    Rational w = table_weight(u, p);
    if (contab::is_zero(w)) return;
    m.z += w;
    for (std::size_t a = 0; a < n; ++a) {
      if (u.cells[a] == 0) continue;
      Rational wa = Rational(u.cells[a]) * w;
      m.first[a] += wa;
      if (with_second)
        for (std::size_t b = 0; b < n; ++b)
          if (u.cells[b] != 0) m.second[a * n + b] += Rational(u.cells[b]) * wa;
    }
  });
  if (!any) throw std::domain_error("empty fiber");
  return m;
}

Rational z_naive(const MarginalSums& beta, const CellParams& p) {
  check_shape(beta, p);
  Rational z(0);
  bool any = false;
  walk_fiber(beta, [&](const Table& u) {
    any = true;
    z += table_weight(u, p);
  });
  if (!any) throw std::domain_error("empty fiber");
  return z;
}

Rational z_dp(const MarginalSums& beta, const CellParams& p) {
  check_shape(beta, p);
  const std::size_t r2 = beta.r2();
  // state: remaining column sums -> accumulated weight
  std::map<std::vector<long>, Rational> states;
  states[beta.cols()] = Rational(1);

  for (std::size_t i = 0; i < beta.r1(); ++i) {
    std::map<std::vector<long>, Rational> next;
    for (const auto& [cols_left, weight] : states) {
      // enumerate row compositions bounded by the remaining column capacity
      std::vector<long> row(r2, 0);
      auto rec = [&](auto&& self, std::size_t j, long left, Rational w) -> void {
        if (j == r2 - 1) {
          if (left > cols_left[j]) return;
          if (left > 0) {
            if (contab::is_zero(p.at(i, j))) return;
            w *= pow_rational(p.at(i, j), left) /
                 Rational(factorial(static_cast<unsigned long>(left)));
          }
          row[j] = left;
          std::vector<long> rest(r2);
          for (std::size_t k = 0; k < r2; ++k) rest[k] = cols_left[k] - row[k];
          next[rest] += w;
          row[j] = 0;
          return;
        }
        long cap = std::min(left, cols_left[j]);
        for (long v = 0; v <= cap; ++v) {
          Rational wv = w;
          if (v > 0) {
            if (contab::is_zero(p.at(i, j))) break;
            wv *= pow_rational(p.at(i, j), v) /
                  Rational(factorial(static_cast<unsigned long>(v)));
          }
          row[j] = v;
          self(self, j + 1, left - v, wv);
          row[j] = 0;
        }
      };
      rec(rec, 0, beta.rows()[i], weight);
    }
    states = std::move(next);
  }

  std::vector<long> zero(r2, 0);
  auto it = states.find(zero);
  if (it == states.end()) throw std::domain_error("empty fiber");
  return it->second;
}

std::vector<Rational> expectations_naive(const MarginalSums& beta, const CellParams& p) {
  FiberMoments m = fiber_moments(beta, p);
  if (contab::is_zero(m.z)) throw std::domain_error("zero normalizing constant");
  std::vector<Rational> e(m.first.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = m.first[k] / m.z;
  return e;
}

Rational conditional_pmf(const Table& x, const MarginalSums& beta, const CellParams& p) {
  check_shape(beta, p);
  if (x.r1 != beta.r1() || x.r2 != beta.r2())
    throw std::domain_error("table shape mismatch");
  // membership: marginals of x must equal beta
  MarginalSums mx = x.marginals();
  if (mx.rows() != beta.rows() || mx.cols() != beta.cols())
    throw std::domain_error("table outside the fiber");
  Rational z = z_naive(beta, p);
  if (contab::is_zero(z)) throw std::domain_error("zero normalizing constant");
  return table_weight(x, p) / z;
}

}  // namespace contab
