#include "contab/hgm.hpp"

#include <stdexcept>

namespace contab {

namespace {

CellParams permute(const CellParams& p, bool row_swap, bool col_swap) {
  CellParams out = p;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out.at(i, j) = p.at(row_swap ? 1 - i : i, col_swap ? 1 - j : j);
  return out;
}

}  // namespace

Base2x2 reduce_2x2(const MarginalSums& beta, const CellParams& p) {
  if (beta.r1() != 2 || beta.r2() != 2 || p.r1 != 2 || p.r2 != 2)
    throw std::invalid_argument("reduce_2x2: problem is not 2x2");

  Base2x2 base;
  long r[2] = {beta.rows()[0], beta.rows()[1]};
  long c[2] = {beta.cols()[0], beta.cols()[1]};
  if (r[0] == 0 || r[1] == 0 || c[0] == 0 || c[1] == 0) {
    base.degenerate = true;
    return base;
  }

  // base table [[u11, 0], [u21, u22]] needs u21 = c1 - r1 >= 0; swap
  // columns and/or rows until the first column can absorb the first row
  bool rs = false, cs = false;
  if (c[0] < r[0]) {
    std::swap(c[0], c[1]);
    cs = true;
  }
  if (c[0] < r[0]) {
    std::swap(r[0], r[1]);
    rs = true;
  }
  if (c[0] < r[0]) {
    std::swap(c[0], c[1]);
    cs = false;
  }
  if (c[0] < r[0]) throw std::logic_error("reduce_2x2: no feasible base orientation");
  base.row_swapped = rs;
  base.col_swapped = cs;
  base.u11 = r[0];
  base.u21 = c[0] - r[0];
  base.u22 = c[1];

  CellParams q = permute(p, rs, cs);
  // q11 and q22 enter the cross ratio; q21 matters only when u21 > 0
  if (contab::is_zero(q.at(0, 0)) || contab::is_zero(q.at(1, 1)) ||
      (base.u21 > 0 && contab::is_zero(q.at(1, 0)))) {
    base.degenerate = true;
    return base;
  }
  base.x = q.at(0, 1) * q.at(1, 0) / (q.at(0, 0) * q.at(1, 1));
  base.prefactor = pow_rational(q.at(0, 0), base.u11) *
                   pow_rational(q.at(1, 0), base.u21) *
                   pow_rational(q.at(1, 1), base.u22) /
                   Rational(factorial(static_cast<unsigned long>(base.u11)) *
                            factorial(static_cast<unsigned long>(base.u21)) *
                            factorial(static_cast<unsigned long>(base.u22)));
  return base;
}

Hgm2x2Result hgm_2x2(const MarginalSums& beta, const CellParams& p,
                     Strategy strategy, const ReductionConfig& reduction,
                     const ModularConfig& modular) {
  Base2x2 base = reduce_2x2(beta, p);
  if (base.degenerate) {
    Hgm2x2Result out;
    out.z = z_naive(beta, p);
    if (contab::is_zero(out.z)) throw std::domain_error("zero normalizing constant");
    out.expectations = expectations_naive(beta, p);
    return out;
  }

  Rational a(-base.u11), b(-base.u22), c(base.u21 + 1);
  GaussManinVector2F1 f;
  if (base.u11 == 0) {
    f = {Rational(1), Rational(0)};
  } else {
    f = gauss_manin_2f1(-base.u11, b, c, base.x, strategy, reduction, modular);
  }
  if (contab::is_zero(f.f)) throw std::domain_error("vanishing 2F1 value");  // unreachable for positive p

  // E[U12] in the permuted frame; p12 d/dp12 acts as theta_x on f(x)
  Rational e12 = f.theta_f / f.f;
  Rational e11 = Rational(base.u11) - e12;
  Rational e21 = Rational(base.u21) + e12;
  Rational e22 = Rational(base.u22) - e12;

  std::vector<Rational> e(4);
  auto put = [&](std::size_t i, std::size_t j, const Rational& v) {
    std::size_t ii = base.row_swapped ? 1 - i : i;
    std::size_t jj = base.col_swapped ? 1 - j : j;
    e[ii * 2 + jj] = v;
  };
  put(0, 0, e11);
  put(0, 1, e12);
  put(1, 0, e21);
  put(1, 1, e22);

  Hgm2x2Result out;
  out.z = base.prefactor * f.f;
  out.expectations = std::move(e);
  return out;
}

std::vector<Rational> hgm_general(const ContiguityPlan& plan,
                                  const std::vector<Rational>& initial,
                                  Strategy strategy, const ReductionConfig& reduction,
                                  const ModularConfig& modular) {
  if (plan.shift_counts.size() != plan.families.size())
    throw std::invalid_argument("hgm_general: plan shape mismatch");
  std::vector<Rational> v = initial;
  for (std::size_t k = 0; k < plan.families.size(); ++k) {
    long shifts = plan.shift_counts[k];
    if (shifts < 0) throw std::invalid_argument("hgm_general: negative shift count");
    if (shifts == 0) continue;  // beta^(1)_k = 1, empty product
    if (plan.families[k].size != v.size())
      throw std::invalid_argument("hgm_general: matrix/vector dimension mismatch");
    MatFacRequest req;
    req.family = plan.families[k];
    req.initial = v;
    req.lo = 0;
    req.hi = shifts - 1;
    req.ascending = true;  // C_k(0) applied first
    req.strategy = strategy;
    req.reduction = reduction;
    req.modular = modular;
    auto out = matfac(req);
    if (!out) throw std::runtime_error("hgm_general: modular evaluation failed");
    v = std::move(*out);
  }
  return v;
}

}  // namespace contab
