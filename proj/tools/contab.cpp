// contab: exact evaluation of normalizing constants, cell expectations and
// conditional MLE for two-way contingency tables with fixed marginal sums.
//
// Exit codes: 0 success, 2 input error, 3 computation failure.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contab/cmle.hpp"
#include "contab/gauss2f1.hpp"
#include "contab/hgm.hpp"
#include "contab/matfac.hpp"
#include "contab/problem.hpp"
#include "contab/render.hpp"
#include "contab/tables.hpp"
#include "contab/zero_interp.hpp"

using json = nlohmann::json;
using namespace contab;

namespace {

struct EngineOpts {
  std::string strategy = "exact";
  long reduction_interval = 20;
  std::size_t primes = 0;
  unsigned workers = 1;
  std::string verify = "on";

  Strategy strat() const {
    if (strategy == "exact") return Strategy::exact;
    if (strategy == "modular") return Strategy::modular;
    return Strategy::binsplit;
  }
  ReductionConfig reduction() const { return {reduction_interval}; }
  ModularConfig modular() const { return {primes, workers, verify == "on"}; }
};

void add_engine_flags(CLI::App* cmd, EngineOpts& opts) {
  cmd->add_option("--strategy", opts.strategy, "matrix factorial strategy")
      ->check(CLI::IsMember({"exact", "modular", "binsplit"}));
  cmd->add_option("--reduction-interval", opts.reduction_interval,
                  "gcd reduction interval for the exact strategy")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--primes", opts.primes,
                  "modular prime count (0 = adaptive)");
  cmd->add_option("--workers", opts.workers, "modular worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--verify", opts.verify, "held-out verification prime")
      ->check(CLI::IsMember({"on", "off"}));
}

std::string show(const Rational& q, int digits) {
  return digits > 0 ? render_decimal(q, digits) : to_string(q);
}

std::string show_grid(const std::vector<Rational>& g, std::size_t r2, int digits) {
  std::string out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k > 0) out += k % r2 == 0 ? " ; " : " ";
    out += show(g[k], digits);
  }
  return out;
}

json json_grid(const std::vector<Rational>& g, std::size_t r2, int digits) {
  json rows = json::array();
  for (std::size_t i = 0; i * r2 < g.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r2; ++j) row.push_back(show(g[i * r2 + j], digits));
    rows.push_back(row);
  }
  return rows;
}

std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::istringstream parts(tok);
    std::string word;
    while (parts >> word) out.push_back(parse_rational(word));
  }
  if (out.empty()) throw std::invalid_argument("empty vector");
  return out;
}

// expectation grid under the selected method, for strictly positive p
std::vector<Rational> expectation_grid(const MarginalSums& beta, const CellParams& p,
                                       const std::string& method,
                                       const EngineOpts& engine) {
  if (method == "hgm")
    return hgm_2x2(beta, p, engine.strat(), engine.reduction(), engine.modular())
        .expectations;
  return expectations_naive(beta, p);
}

int run_zeval(const std::string& file, const std::string& method,
              const EngineOpts& engine, int digits, bool as_json) {
  ProblemFile prob = load_problem_file(file);
  if (method == "hgm" && (prob.beta.r1() != 2 || prob.beta.r2() != 2))
    throw std::invalid_argument("--method hgm requires a 2x2 problem");
  Rational z;
  if (method == "naive")
    z = z_naive(prob.beta, prob.p);
  else if (method == "dp")
    z = z_dp(prob.beta, prob.p);
  else
    z = hgm_2x2(prob.beta, prob.p, engine.strat(), engine.reduction(),
                engine.modular()).z;
  if (as_json)
    std::cout << json{{"z", show(z, digits)}}.dump(2) << "\n";
  else
    std::cout << show(z, digits) << "\n";
  return 0;
}

int run_expectation(const std::string& file, const std::string& method,
                    const EngineOpts& engine, int digits, bool as_json,
                    std::uint64_t seed, const std::string& range, int extra) {
  ProblemFile prob = load_problem_file(file);
  if (method == "hgm" && (prob.beta.r1() != 2 || prob.beta.r2() != 2))
    throw std::invalid_argument("--method hgm requires a 2x2 problem");

  bool zeros = false;
  for (const Rational& q : prob.p.p) zeros |= contab::is_zero(q);

  std::vector<Rational> e;
  if (zeros) {
    Rational r = parse_rational(range);
    std::cerr << "zero cells present: interpolating along the random line"
              << " seed=" << seed << " range=" << to_string(r)
              << " extra-samples=" << extra << "\n";
    auto evaluator = [&](const CellParams& ps) {
      return expectation_grid(prob.beta, ps, method, engine);
    };
    e = expectation_with_zeros(prob.beta, prob.p, evaluator, seed, r, extra);
  } else {
    e = expectation_grid(prob.beta, prob.p, method, engine);
  }

  if (as_json)
    std::cout << json{{"expectations", json_grid(e, prob.beta.r2(), digits)}}.dump(2)
              << "\n";
  else
    for (std::size_t i = 0; i < prob.beta.r1(); ++i) {
      for (std::size_t j = 0; j < prob.beta.r2(); ++j)
        std::cout << (j ? " " : "") << show(e[i * prob.beta.r2() + j], digits);
      std::cout << "\n";
    }
  return 0;
}

int run_cmle(const std::string& file, long ref_row, long ref_col, double tol,
             unsigned max_iter, int digits, bool as_json) {
  ProblemFile prob = load_problem_file(file);
  if (!prob.u) throw std::invalid_argument("cmle needs an observed table 'u'");
  const Table& u = *prob.u;
  if (ref_row == 0) ref_row = static_cast<long>(u.r1);
  if (ref_row < 1 || ref_row > static_cast<long>(u.r1) || ref_col < 1 ||
      ref_col > static_cast<long>(u.r2))
    throw std::invalid_argument("reference row/column outside the table");
  if (digits == 0) digits = 15;

  OddsChart init = generalized_odds_ratios(
      u, static_cast<std::size_t>(ref_row - 1), static_cast<std::size_t>(ref_col - 1));
  CmleResult fit = cmle_fit(u, static_cast<std::size_t>(ref_row - 1),
                            static_cast<std::size_t>(ref_col - 1), tol, max_iter);

  json boundary = json::array();
  for (auto [i, j] : fit.boundary_cells)
    boundary.push_back({i + 1, j + 1});
  if (as_json) {
    std::cout << json{{"init", json_grid(init.q, u.r2, 0)},
                      {"chart", json_grid(fit.chart.q, u.r2, digits)},
                      {"loglik", fit.loglik},
                      {"gradient_norm", fit.gradient_norm},
                      {"iterations", fit.iterations},
                      {"boundary_cells", boundary}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout << "init: " << show_grid(init.q, u.r2, 0) << "\n";
  std::cout << "chart: " << show_grid(fit.chart.q, u.r2, digits) << "\n";
  std::cout << "loglik: " << fit.loglik << "\n";
  std::cout << "gradient_norm: " << fit.gradient_norm << "\n";
  std::cout << "iterations: " << fit.iterations << "\n";
  if (!fit.boundary_cells.empty()) std::cout << "boundary_cells: " << boundary << "\n";
  return 0;
}

int run_fiber(const std::string& file, bool as_json) {
  ProblemFile prob = load_problem_file(file);
  std::vector<Table> fiber = enumerate_fiber(prob.beta);
  if (as_json) {
    json tables = json::array();
    for (const Table& t : fiber) {
      json rows = json::array();
      for (std::size_t i = 0; i < t.r1; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < t.r2; ++j) row.push_back(t.at(i, j));
        rows.push_back(row);
      }
      tables.push_back(rows);
    }
    std::cout << json{{"count", fiber.size()}, {"tables", tables}}.dump(2) << "\n";
    return 0;
  }
  for (const Table& t : fiber) {
    for (std::size_t k = 0; k < t.cells.size(); ++k) {
      if (k > 0) std::cout << (k % t.r2 == 0 ? " ; " : " ");
      std::cout << t.cells[k];
    }
    std::cout << "\n";
  }
  std::cerr << fiber.size() << " tables\n";
  return 0;
}

int run_matfac(const std::string& file, const std::string& init, long from, long to,
               const EngineOpts& engine, int digits, bool as_json) {
  MatFamFile fam = load_matfam(file);
  MatFacRequest req;
  req.family = fam.matrix;
  req.initial = parse_vector(init);
  if (req.initial.size() != fam.matrix.size)
    throw std::invalid_argument("--init length does not match the matrix size");
  req.lo = from;
  req.hi = to;
  req.strategy = engine.strat();
  req.reduction = engine.reduction();
  req.modular = engine.modular();
  auto out = matfac(req);
  if (!out) throw std::runtime_error("modular evaluation failed (prime budget)");
  if (as_json) {
    json v = json::array();
    for (const Rational& q : *out) v.push_back(show(q, digits));
    std::cout << json{{"result", v}}.dump(2) << "\n";
    return 0;
  }
  for (std::size_t k = 0; k < out->size(); ++k)
    std::cout << (k ? " " : "") << show((*out)[k], digits);
  std::cout << "\n";
  return 0;
}

int run_bench2x2(const std::string& which, long N, const EngineOpts& engine,
                 int digits, bool as_json) {
  if (which != "benchmark1") throw std::invalid_argument("unknown case: " + which);
  if (N < 1) throw std::invalid_argument("--N must be positive");
  // 2F1(-36N, -11N, 2N; (1 - 1/N)/56)
  Rational b(-11 * N), c(2 * N);
  Rational x = (Rational(1) - Rational(1, N)) / 56;
  long a = -36 * N;

  auto t0 = std::chrono::steady_clock::now();
  GaussManinVector2F1 f = gauss_manin_2f1(a, b, c, x, engine.strat(),
                                          engine.reduction(), engine.modular());
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();

  if (as_json) {
    std::cout << json{{"value", show(f.f, digits)}, {"seconds", secs}}.dump(2) << "\n";
    return 0;
  }
  std::cout << show(f.f, digits) << "\n";
  std::cerr << "wall time: " << secs << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact inference for two-way contingency tables with fixed marginal "
      "sums (normalizing constants, expectations, conditional MLE)"};
  app.require_subcommand(1);

  int digits = 0;
  bool as_json = false;
  app.add_option("--digits", digits, "render decimals with this many significant digits")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", as_json, "machine-readable output");
  // accepted for interface uniformity; commands here are deterministic
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "random seed");

  EngineOpts engine;

  std::string zeval_file, zeval_method = "dp";
  auto* zeval = app.add_subcommand("zeval", "normalizing constant Z(beta; p)");
  zeval->add_option("problem-file", zeval_file)->required()->check(CLI::ExistingFile);
  zeval->add_option("--method", zeval_method)
      ->check(CLI::IsMember({"naive", "dp", "hgm"}));
  add_engine_flags(zeval, engine);

  std::string exp_file, exp_method = "naive";
  std::uint64_t interp_seed = 0;
  std::string interp_range = "1";
  int interp_extra = 0;
  auto* expectation = app.add_subcommand("expectation", "cell expectations E[U_ij]");
  expectation->add_option("problem-file", exp_file)->required()->check(CLI::ExistingFile);
  expectation->add_option("--method", exp_method)
      ->check(CLI::IsMember({"naive", "hgm"}));
  expectation->add_option("--interp-seed", interp_seed,
                          "seed of the zero-cell interpolation line");
  expectation->add_option("--interp-range", interp_range,
                          "offset range of the interpolation samples (rational)");
  expectation->add_option("--interp-extra", interp_extra,
                          "extra held-out samples beyond the required count");
  add_engine_flags(expectation, engine);

  std::string cmle_file;
  long ref_row = 0, ref_col = 1;
  double tol = 1e-10;
  unsigned max_iter = 200;
  auto* cmle = app.add_subcommand("cmle", "conditional MLE of generalized odds ratios");
  cmle->add_option("problem-file", cmle_file)->required()->check(CLI::ExistingFile);
  cmle->add_option("--ref-row", ref_row, "1-based reference row (default: last)");
  cmle->add_option("--ref-col", ref_col, "1-based reference column");
  cmle->add_option("--tol", tol, "gradient tolerance");
  cmle->add_option("--max-iter", max_iter, "iteration cap");

  std::string fiber_file;
  auto* fiber = app.add_subcommand("fiber", "enumerate the fiber of a marginal vector");
  fiber->add_option("problem-file", fiber_file)->required()->check(CLI::ExistingFile);

  std::string matfac_file, matfac_init;
  long from = 0, to = -1;
  auto* matfac_cmd = app.add_subcommand(
      "matfac", "generalized matrix factorial M(from)...M(to) applied to a vector");
  matfac_cmd->add_option("matrix-file", matfac_file)->required()->check(CLI::ExistingFile);
  matfac_cmd->add_option("--init", matfac_init, "initial vector (rationals)")->required();
  matfac_cmd->add_option("--from", from)->required();
  matfac_cmd->add_option("--to", to)->required();
  add_engine_flags(matfac_cmd, engine);

  std::string bench_case = "benchmark1";
  long bench_N = 100;
  auto* bench = app.add_subcommand("bench2x2", "hypergeometric chain benchmark");
  bench->add_option("--case", bench_case);
  bench->add_option("--N", bench_N);
  add_engine_flags(bench, engine);

  // let shared flags like --digits appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (zeval->parsed())
      return run_zeval(zeval_file, zeval_method, engine, digits, as_json);
    if (expectation->parsed())
      return run_expectation(exp_file, exp_method, engine, digits, as_json,
                             interp_seed, interp_range, interp_extra);
    if (cmle->parsed())
      return run_cmle(cmle_file, ref_row, ref_col, tol, max_iter, digits, as_json);
    if (fiber->parsed()) return run_fiber(fiber_file, as_json);
    if (matfac_cmd->parsed())
      return run_matfac(matfac_file, matfac_init, from, to, engine, digits, as_json);
    if (bench->parsed())
      return run_bench2x2(bench_case, bench_N, engine, digits, as_json);
  } catch (const ProblemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (at position " << e.position() << ")\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
