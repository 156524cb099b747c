#include "contab/ratfun.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace contab {

Poly::Poly(Rational constant) {
  if (!contab::is_zero(constant)) coeffs_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::variable() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

void Poly::trim() {
  while (!coeffs_.empty() && contab::is_zero(coeffs_.back())) coeffs_.pop_back();
}

const Rational& Poly::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading of zero polynomial");
  return coeffs_.back();
}

Rational Poly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  long db = b.degree();
  long dq = a.degree() - db;
  std::vector<Rational> quot(dq >= 0 ? dq + 1 : 0, Rational(0));
  for (long i = a.degree(); i >= db && !rem.empty();) {
    long d = static_cast<long>(rem.size()) - 1;
    if (d < db) break;
    Rational f = rem.back() / b.leading();
    quot[d - db] = f;
    for (long j = 0; j <= db; ++j) rem[d - db + j] -= f * b.coeffs_[j];
    while (!rem.empty() && contab::is_zero(rem.back())) rem.pop_back();
    i = static_cast<long>(rem.size()) - 1;
  }
  q = Poly(std::move(quot));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // monic
  Rational lead = a.leading();
  for (auto& c : a.coeffs_) c /= lead;
  return a;
}

Poly Poly::pow(unsigned long e) const {
  Poly r(Rational(1)), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Rational Poly::eval(const Rational& t0) const {
  Rational r(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t0 + *it;
  return r;
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  canonicalize();
}

void RatFun::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = std::move(q);
    Poly::divmod(den_, g, q, r);
    den_ = std::move(q);
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    std::vector<Rational> n = num_.coeffs(), d = den_.coeffs();
    for (auto& c : n) c /= lead;
    for (auto& c : d) c /= lead;
    num_ = Poly(std::move(n));
    den_ = Poly(std::move(d));
  }
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw std::invalid_argument("zero to a negative power");
    return RatFun(den_, num_).pow(-e);
  }
  return RatFun(num_.pow(static_cast<unsigned long>(e)),
                den_.pow(static_cast<unsigned long>(e)));
}

std::optional<Rational> RatFun::eval(const Rational& t0) const {
  Rational d = den_.eval(t0);
  if (contab::is_zero(d)) return std::nullopt;
  return num_.eval(t0) / d;
}

namespace {

std::string poly_to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (long i = p.degree(); i >= 0; --i) {
    Rational c = p.coeff(static_cast<std::size_t>(i));
    if (contab::is_zero(c)) continue;
    bool first = out.empty();
    if (!first) out += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) out += "-";
    Rational a = abs(c);
    std::string coeff_txt;
    if (a.get_den() == 1) {
      if (a != 1 || i == 0) coeff_txt = a.get_num().get_str();
    } else {
      coeff_txt = "(" + a.get_str() + ")";
    }
    if (i == 0) {
      out += coeff_txt.empty() ? "1" : coeff_txt;
    } else {
      if (!coeff_txt.empty()) out += coeff_txt + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace

std::string RatFun::to_string() const {
  if (is_zero()) return "0";
  std::string n = poly_to_string(num_);
  if (den_.degree() == 0 && den_.coeff(0) == 1) return n;
  std::string d = poly_to_string(den_);
  return "(" + n + ")/(" + d + ")";
}

namespace {

// recursive-descent parser over the grammar in the header
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  RatFun parse() {
    RatFun r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  RatFun expr() {
    RatFun r = term();
    for (;;) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }

  RatFun term() {
    RatFun r = factor();
    for (;;) {
      if (eat('*')) r = r * factor();
      else if (eat('/')) {
        RatFun d = factor();
        if (d.is_zero()) fail("division by the zero polynomial");
        r = r / d;
      } else return r;
    }
  }

  RatFun factor() {
    if (eat('-')) return -factor();
    RatFun base = primary();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected nonnegative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      base = base.pow(static_cast<long>(e));
    }
    return base;
  }

  RatFun primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RatFun r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 't') {
      ++pos_;
      return RatFun::variable();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatFun(Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    fail("expected integer, 't', or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFun parse_ratfun_expr(std::string_view text) { return ExprParser(text).parse(); }

std::vector<Rational> eval_matrix_at(const RatFunMatrix& M, const Rational& t0) {
  std::vector<Rational> out(M.size * M.size);
  for (std::size_t i = 0; i < M.size; ++i)
    for (std::size_t j = 0; j < M.size; ++j) {
      auto v = M.at(i, j).eval(t0);
      if (!v) throw PoleError(i, j, t0);
      out[i * M.size + j] = std::move(*v);
    }
  return out;
}

std::optional<ReducedRatFun> reduce_ratfun(const RatFun& f, std::uint64_t p) {
  ReducedRatFun out;
  for (const auto& c : f.num().coeffs()) {
    auto r = mod_reduce(c, p);
    if (!r) return std::nullopt;
    out.num.push_back(*r);
  }
  for (const auto& c : f.den().coeffs()) {
    auto r = mod_reduce(c, p);
    if (!r) return std::nullopt;
    out.den.push_back(*r);
  }
  return out;
}

std::uint64_t eval_poly_mod(const std::vector<std::uint64_t>& coeffs,
                            std::uint64_t t0, std::uint64_t p) {
  std::uint64_t r = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    r = add_mod(mul_mod(r, t0, p), *it, p);
  return r;
}

std::optional<std::vector<std::uint64_t>> eval_matrix_mod(const RatFunMatrix& M,
                                                          const Integer& t0,
                                                          std::uint64_t p) {
  std::uint64_t t = mod_reduce_int(t0, p);
  std::vector<std::uint64_t> out(M.size * M.size);
  for (std::size_t i = 0; i < M.size; ++i)
    for (std::size_t j = 0; j < M.size; ++j) {
      auto red = reduce_ratfun(M.at(i, j), p);
      if (!red) return std::nullopt;
      std::uint64_t d = eval_poly_mod(red->den, t, p);
      if (d == 0) {
        // distinguish a genuine pole from an unlucky prime
        Rational t0q(t0);
        if (contab::is_zero(M.at(i, j).den().eval(t0q))) throw PoleError(i, j, t0q);
        return std::nullopt;
      }
      out[i * M.size + j] = mul_mod(eval_poly_mod(red->num, t, p), inv_mod(d, p), p);
    }
  return out;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

MatFamFile parse_matfam(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      std::string s = strip(line);
      if (s.empty() || s[0] == '#') continue;
      out = s;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_line(header)) throw std::runtime_error("matfam: empty file");
  int r = 0, k = 0;
  if (std::sscanf(header.c_str(), "matfam r=%d k=%d", &r, &k) != 2 || r < 1)
    throw std::runtime_error("matfam: bad header: " + header);

  MatFamFile out;
  out.direction = k;
  out.matrix.size = static_cast<std::size_t>(r);
  out.matrix.entries.reserve(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i) {
    std::string row;
    if (!next_line(row)) throw std::runtime_error("matfam: missing row " + std::to_string(i + 1));
    std::size_t start = 0;
    int count = 0;
    while (start <= row.size()) {
      std::size_t sep = row.find(" | ", start);
      std::string cell = sep == std::string::npos ? row.substr(start)
                                                  : row.substr(start, sep - start);
      try {
        out.matrix.entries.push_back(parse_ratfun_expr(strip(cell)));
      } catch (const ParseError& e) {
        throw std::runtime_error("matfam: row " + std::to_string(i + 1) + " entry " +
                                 std::to_string(count + 1) + ": " + e.what());
      }
      ++count;
      if (sep == std::string::npos) break;
      start = sep + 3;
    }
    if (count != r)
      throw std::runtime_error("matfam: row " + std::to_string(i + 1) + " has " +
                               std::to_string(count) + " entries, expected " + std::to_string(r));
  }
  return out;
}

MatFamFile load_matfam(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  return parse_matfam(in);
}

void write_matfam(std::ostream& out, const MatFamFile& file) {
  out << "matfam r=" << file.matrix.size << " k=" << file.direction << "\n";
  for (std::size_t i = 0; i < file.matrix.size; ++i) {
    for (std::size_t j = 0; j < file.matrix.size; ++j) {
      if (j) out << " | ";
      out << file.matrix.at(i, j).to_string();
    }
    out << "\n";
  }
}

}  // namespace contab
