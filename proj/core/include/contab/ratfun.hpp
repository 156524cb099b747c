// Univariate rational functions in the shift variable t over Q, square
// matrices of them (contiguity matrix families C_k(t)), a textual expression
// parser, and exact / modular pointwise evaluation.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "contab/modular.hpp"
#include "contab/rational.hpp"

namespace contab {

// Dense polynomial in t with rational coefficients, lowest degree first.
// Trailing zero coefficients are always trimmed; the zero polynomial has an
// empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rational constant);
  explicit Poly(std::vector<Rational> coeffs);

  static Poly variable();  // t

  bool is_zero() const { return coeffs_.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const;
  Rational coeff(std::size_t i) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;

  // quotient and remainder; b must be nonzero
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  // monic gcd
  static Poly gcd(Poly a, Poly b);

  Poly pow(unsigned long e) const;
  Rational eval(const Rational& t0) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// num/den in canonical form: den monic, gcd(num, den) = 1.
class RatFun {
 public:
  RatFun() : num_(), den_(Rational(1)) {}  // zero
  explicit RatFun(Rational constant) : num_(std::move(constant)), den_(Rational(1)) { canonicalize(); }
  RatFun(Poly num, Poly den);  // den must be nonzero

  static RatFun variable() { return RatFun(Poly::variable(), Poly(Rational(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);  // b nonzero
  friend bool operator==(const RatFun& a, const RatFun& b) = default;

  RatFun pow(long e) const;

  // Exact value at t0; nullopt when the denominator vanishes there (pole).
  std::optional<Rational> eval(const Rational& t0) const;

  std::string to_string() const;

 private:
  void canonicalize();
  Poly num_, den_;
};

// Grammar: integers, symbol `t`, operators + - * / ^ (nonnegative integer
// literal exponent), parentheses, unary minus. Throws ParseError with the
// offending position; dividing by the zero polynomial is also an error.
RatFun parse_ratfun_expr(std::string_view text);

struct PoleError : std::runtime_error {
  PoleError(std::size_t row, std::size_t col, const Rational& t0)
      : std::runtime_error("pole at entry (" + std::to_string(row + 1) + "," +
                           std::to_string(col + 1) + ") for t=" + contab::to_string(t0)),
        row(row), col(col) {}
  std::size_t row, col;
};

struct RatFunMatrix {
  std::size_t size = 0;
  std::vector<RatFun> entries;  // row-major, size*size

  const RatFun& at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
  RatFun& at(std::size_t i, std::size_t j) { return entries[i * size + j]; }

  static RatFunMatrix zero(std::size_t n) { return {n, std::vector<RatFun>(n * n)}; }
};

// Entrywise exact evaluation (row-major). Throws PoleError naming the first
// offending entry.
std::vector<Rational> eval_matrix_at(const RatFunMatrix& M, const Rational& t0);

// One rational-function entry with coefficients reduced into F_p.
struct ReducedRatFun {
  std::vector<std::uint64_t> num, den;  // lowest degree first
};

// nullopt = unlucky prime (a coefficient denominator vanishes mod p).
std::optional<ReducedRatFun> reduce_ratfun(const RatFun& f, std::uint64_t p);

std::uint64_t eval_poly_mod(const std::vector<std::uint64_t>& coeffs,
                            std::uint64_t t0, std::uint64_t p);

// Entrywise modular evaluation. nullopt = unlucky (skip this prime); throws
// PoleError when the exact rational evaluation itself is undefined.
std::optional<std::vector<std::uint64_t>> eval_matrix_mod(const RatFunMatrix& M,
                                                          const Integer& t0,
                                                          std::uint64_t p);

// Contiguity matrix file: header `matfam r=<int> k=<int>`, then r lines of
// r expressions separated by ` | `; `#` begins a comment line.
struct MatFamFile {
  RatFunMatrix matrix;
  int direction = 0;  // k
};

MatFamFile parse_matfam(std::istream& in);
MatFamFile load_matfam(const std::string& path);
void write_matfam(std::ostream& out, const MatFamFile& file);

}  // namespace contab
