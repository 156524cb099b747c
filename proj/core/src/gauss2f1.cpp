#include "contab/gauss2f1.hpp"

#include <stdexcept>

namespace contab {

namespace {

void check_series(const Hyp2F1Params& p) {
  if (p.a > 0) throw std::domain_error("2F1 oracle: a must be a nonpositive integer");
  for (long i = 0; i < -p.a; ++i)
    if (p.c + i == 0)
      throw std::domain_error("2F1 oracle: (c)_i factor vanishes at i=" + std::to_string(i + 1));
}

// accumulates sum of term_i and sum of i*term_i in one pass
void series_sums(const Hyp2F1Params& p, Rational& f, Rational& theta) {
  check_series(p);
  Rational term(1), a(p.a);
  f = Rational(1);
  theta = Rational(0);
  long n = -p.a;
  for (long i = 0; i < n; ++i) {
    term *= (a + i) * (p.b + i) / ((p.c + i) * Rational(i + 1)) * p.x;
    if (contab::is_zero(term)) break;  // (b)_i hit zero or x = 0
    f += term;
    theta += Rational(i + 1) * term;
  }
}

}  // namespace

Rational f21_poly_oracle(const Hyp2F1Params& params) {
  Rational f, theta;
  series_sums(params, f, theta);
  return f;
}

Rational f21_theta_oracle(const Hyp2F1Params& params) {
  Rational f, theta;
  series_sums(params, f, theta);
  return theta;
}

std::vector<Rational> contiguity_M(const Rational& a, const Rational& b,
                                   const Rational& c, const Rational& x) {
  Rational d = a - c + 1;
  if (contab::is_zero(d)) throw std::domain_error("contiguity matrix singular: a-c+1 = 0");
  return {
      (b * x + a - c + 1) / d, (x - 1) / d,
      -a * b * x / d,          a * (1 - x) / d,
  };
}

RatFunMatrix contiguity_family(const Rational& b, const Rational& c, const Rational& x) {
  RatFun t = RatFun::variable();
  RatFun den = t - RatFun(c - 1);  // t - c + 1
  RatFunMatrix m = RatFunMatrix::zero(2);
  m.at(0, 0) = (RatFun(b * x) + t - RatFun(c - 1)) / den;
  m.at(0, 1) = RatFun(x - 1) / den;
  m.at(1, 0) = -(t * RatFun(b * x)) / den;
  m.at(1, 1) = (t * RatFun(1 - x)) / den;
  return m;
}

GaussManinVector2F1 gauss_manin_initial(const Rational& b, const Rational& c,
                                        const Rational& x) {
  if (contab::is_zero(c)) throw std::domain_error("initial vector undefined: c = 0");
  Rational bx = b / c * x;
  return {1 - bx, -bx};
}

GaussManinVector2F1 gauss_manin_2f1(long a, const Rational& b, const Rational& c,
                                    const Rational& x, Strategy strategy,
                                    const ReductionConfig& reduction,
                                    const ModularConfig& modular) {
  if (a > -1) throw std::domain_error("gauss_manin_2f1: a must be <= -1");
  GaussManinVector2F1 init = gauss_manin_initial(b, c, x);
  if (a == -1) return init;

  MatFacRequest req;
  req.family = contiguity_family(b, c, x);
  req.initial = {init.f, init.theta_f};
  req.lo = a;
  req.hi = -2;
  req.ascending = false;  // M(-2) applied first
  req.strategy = strategy;
  req.reduction = reduction;
  req.modular = modular;
  auto out = matfac(req);
  if (!out) throw std::runtime_error("gauss_manin_2f1: modular evaluation failed");
  return {(*out)[0], (*out)[1]};
}

GaussManin2F1Float gauss_manin_2f1_float(long a, const Rational& b, const Rational& c,
                                         const Rational& x) {
  if (a > -1) throw std::domain_error("gauss_manin_2f1_float: a must be <= -1");
  double bd = b.get_d(), cd = c.get_d(), xd = x.get_d();
  // the first column of the binary64 matrix factorial: the chain applied to
  // the unit seed, with no start-vector correction
  double f = 1.0, theta = 0.0;
  for (long t = -2; t >= a; --t) {
    double td = static_cast<double>(t);
    double d = td - cd + 1;
    double nf = ((bd * xd + td - cd + 1) * f + (xd - 1) * theta) / d;
    double nt = (-td * bd * xd * f + td * (1 - xd) * theta) / d;
    f = nf;
    theta = nt;
  }
  return {f, theta};
}

namespace {

std::vector<Rational> mat2_mul(const std::vector<Rational>& a,
                               const std::vector<Rational>& b) {
  return {
      a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
      a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3],
  };
}

void require_nonzero(const Rational& v, const char* what) {
  if (contab::is_zero(v))
    throw std::domain_error(std::string("U2 decomposition: ") + what + " vanishes");
}

}  // namespace

std::vector<Rational> build_U2_decomposition(const AlphaChart& alpha, const Rational& x) {
  const Rational &a0 = alpha.a0, &a1 = alpha.a1, &a2 = alpha.a2, &a3 = alpha.a3;
  require_nonzero(a0, "alpha_0");
  require_nonzero(a0 + 1, "alpha_0 + 1");
  require_nonzero(a1, "alpha_1");
  require_nonzero(a2, "alpha_2");
  require_nonzero(a2 - 1, "alpha_2 - 1");
  require_nonzero(a3, "alpha_3");

  // shifted chart alpha_(2) = (a0+1, a1, a2-1, a3)
  Rational s0 = a0 + 1, s2 = a2 - 1;

  std::vector<Rational> C = {
      1 / a0 + 1 / a1, 1 / a0,
      1 / a0,          1 / a0 + 1 / a2,
  };
  std::vector<Rational> P2inv = {
      a1, -a1,
      Rational(0), -a2,
  };
  std::vector<Rational> D2 = {
      Rational(1), Rational(0),
      Rational(0), 1 - x,
  };
  std::vector<Rational> Q2s = {
      1 / s0 + 1 / a1, 1 / s0,
      1 / s0,          1 / s0,
  };
  Rational pref = a1 * s2 / a3;
  std::vector<Rational> Cinv_s = {
      pref * (a1 + a3) / s2, pref,
      pref,                  pref * (s2 + a3) / a1,
  };
  return mat2_mul(mat2_mul(mat2_mul(mat2_mul(C, P2inv), D2), Q2s), Cinv_s);
}

}  // namespace contab
