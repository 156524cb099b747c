#include "contab/cmle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace contab {

OddsChart generalized_odds_ratios(const Table& u, std::size_t ref_row,
                                  std::size_t ref_col) {
  if (ref_row >= u.r1 || ref_col >= u.r2)
    throw std::invalid_argument("reference cell outside the table");
  OddsChart chart;
  chart.r1 = u.r1;
  chart.r2 = u.r2;
  chart.ref_row = ref_row;
  chart.ref_col = ref_col;
  chart.q.assign(u.r1 * u.r2, Rational(1));
  long urc = u.at(ref_row, ref_col);
  for (std::size_t i = 0; i < u.r1; ++i)
    for (std::size_t j = 0; j < u.r2; ++j) {
      if (!chart.is_free(i, j)) continue;
      long uij = u.at(i, j), uic = u.at(i, ref_col), urj = u.at(ref_row, j);
      if (uij == 0 || urc == 0 || uic == 0 || urj == 0)
        chart.at(i, j) = Rational(0);
      else
        chart.at(i, j) = Rational(uij) * Rational(urc) / (Rational(uic) * Rational(urj));
    }
  return chart;
}

namespace {

CellParams chart_params(const OddsChart& chart) {
  return {chart.r1, chart.r2, chart.q};
}

std::vector<std::pair<std::size_t, std::size_t>> free_cells(const OddsChart& chart) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < chart.r1; ++i)
    for (std::size_t j = 0; j < chart.r2; ++j)
      if (chart.is_free(i, j)) out.emplace_back(i, j);
  return out;
}

double loglik_value(const Table& u, const OddsChart& chart, const Rational& z) {
  double v = -log_abs(z);
  for (std::size_t k = 0; k < chart.q.size(); ++k) {
    long count = u.cells[k];
    if (count == 0) continue;  // 0 log q = 0 also at clamped cells
    v += static_cast<double>(count) * log_abs(chart.q[k]);
  }
  return v;
}

// solve a (dense, symmetric) system in doubles; false when singular
bool solve_dense(std::vector<double> a, std::vector<double> b, std::size_t n,
                 std::vector<double>& x) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::fabs(a[i * n + col]) > std::fabs(a[piv * n + col])) piv = i;
    if (std::fabs(a[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      double f = a[i * n + col] / a[col * n + col];
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) a[i * n + j] -= f * a[col * n + j];
      b[i] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return true;
}

}  // namespace

LoglikResult conditional_loglik(const Table& u, const OddsChart& chart,
                                const MomentEvaluator& evaluator) {
  if (u.r1 != chart.r1 || u.r2 != chart.r2)
    throw std::invalid_argument("chart shape does not match the table");
  MarginalSums beta = u.marginals();
  FiberMoments m = evaluator(beta, chart_params(chart), false);
  LoglikResult out;
  out.value = loglik_value(u, chart, m.z);
  for (auto [i, j] : free_cells(chart)) {
    Rational e = m.first[i * chart.r2 + j] / m.z;
    out.gradient.push_back(static_cast<double>(u.at(i, j)) - e.get_d());
  }
  return out;
}

CmleResult cmle_fit(const Table& u, std::size_t ref_row, std::size_t ref_col,
                    double tol, unsigned max_iter,
                    const MomentEvaluator& evaluator) {
  CmleResult res;
  res.chart = generalized_odds_ratios(u, ref_row, ref_col);
  OddsChart& chart = res.chart;
  MarginalSums beta = u.marginals();
  const std::size_t r2 = chart.r2;

  // a free cell with observed count 0 has gradient -E[U] < 0 at every
  // positive value, so its optimum is on the boundary
  std::vector<std::pair<std::size_t, std::size_t>> interior;
  for (auto [i, j] : free_cells(chart)) {
    if (u.at(i, j) == 0) {
      chart.at(i, j) = Rational(0);
      res.boundary_cells.emplace_back(i, j);
    } else {
      if (contab::is_zero(chart.at(i, j))) chart.at(i, j) = Rational(1);
      interior.emplace_back(i, j);
    }
  }
  const std::size_t n = interior.size();

  std::vector<double> logq(n);
  for (std::size_t k = 0; k < n; ++k)
    logq[k] = log_abs(chart.at(interior[k].first, interior[k].second));

  auto apply_logq = [&](const std::vector<double>& lq) {
    for (std::size_t k = 0; k < n; ++k)
      chart.at(interior[k].first, interior[k].second) = Rational(std::exp(lq[k]));
  };

  FiberMoments m = evaluator(beta, chart_params(chart), n > 0);
  double value = loglik_value(u, chart, m.z);

  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    std::vector<double> g(n);
    res.gradient_norm = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto [i, j] = interior[k];
      Rational e = m.first[i * r2 + j] / m.z;
      g[k] = static_cast<double>(u.at(i, j)) - e.get_d();
      res.gradient_norm = std::max(res.gradient_norm, std::fabs(g[k]));
    }
    if (res.gradient_norm <= tol || n == 0) {
      res.loglik = value;
      res.converged = true;
      return res;
    }

    // observed information = conditional covariance of the free cells
    const std::size_t cells = chart.q.size();
    std::vector<double> info(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t ka = interior[a].first * r2 + interior[a].second;
        std::size_t kb = interior[b].first * r2 + interior[b].second;
        Rational cov = m.second[ka * cells + kb] / m.z -
                       (m.first[ka] / m.z) * (m.first[kb] / m.z);
        info[a * n + b] = cov.get_d();
      }

    std::vector<double> step;
    if (!solve_dense(info, g, n, step)) step = g;  // gradient ascent fallback

    // near the optimum the log-likelihood improvement drowns in double
    // rounding; take the undamped Newton step, which converges locally
    if (res.gradient_norm < 1e-3) {
      for (std::size_t k = 0; k < n; ++k) logq[k] += step[k];
      apply_logq(logq);
      m = evaluator(beta, chart_params(chart), true);
      value = loglik_value(u, chart, m.z);
      continue;
    }

    // backtracking line search on the log-likelihood
    double lambda = 1.0;
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      std::vector<double> trial = logq;
      for (std::size_t k = 0; k < n; ++k) trial[k] += lambda * step[k];
      apply_logq(trial);
      FiberMoments mt = evaluator(beta, chart_params(chart), true);
      double vt = loglik_value(u, chart, mt.z);
      if (vt > value || (half == 39 && vt == value)) {
        logq = std::move(trial);
        m = std::move(mt);
        value = vt;
        accepted = true;
        break;
      }
      lambda /= 2;
    }
    if (!accepted) {
      apply_logq(logq);  // restore the last accepted point
      res.loglik = value;
      throw NonConvergence("line search stalled at gradient norm " +
                           std::to_string(res.gradient_norm));
    }
  }
  res.loglik = value;
  throw NonConvergence("no convergence after " + std::to_string(max_iter) +
                       " iterations, gradient norm " +
                       std::to_string(res.gradient_norm));
}

CmleResult cmle_fit(const Table& u, std::size_t ref_row, std::size_t ref_col,
                    double tol, unsigned max_iter) {
  return cmle_fit(u, ref_row, ref_col, tol, max_iter,
                  [](const MarginalSums& b, const CellParams& p, bool second) {
                    return fiber_moments(b, p, second);
                  });
}

}  // namespace contab
