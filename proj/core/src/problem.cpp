#include "contab/problem.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace contab {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_rows(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<long> parse_long_list(const std::string& s, const char* key,
                                  std::size_t line) {
  std::vector<long> out;
  for (const std::string& tok : split_ws(s)) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ProblemError(std::string(key) + ": bad integer '" + tok + "'", line);
    }
  }
  if (out.empty()) throw ProblemError(std::string(key) + ": empty list", line);
  return out;
}

}  // namespace

ProblemFile parse_problem_file(std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ProblemError("expected 'key: value'", lineno);
    std::string key = line.substr(0, colon);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key != "rows" && key != "cols" && key != "p" && key != "u")
      throw ProblemError("unknown key '" + key + "'", lineno);
    if (fields.count(key)) throw ProblemError("duplicate key '" + key + "'", lineno);
    fields[key] = {line.substr(colon + 1), lineno};
  }

  std::optional<std::vector<long>> rows, cols;
  if (auto it = fields.find("rows"); it != fields.end())
    rows = parse_long_list(it->second.first, "rows", it->second.second);
  if (auto it = fields.find("cols"); it != fields.end())
    cols = parse_long_list(it->second.first, "cols", it->second.second);

  std::optional<Table> u;
  if (auto it = fields.find("u"); it != fields.end()) {
    std::size_t ln = it->second.second;
    Table t;
    for (const std::string& row : split_rows(it->second.first)) {
      std::vector<long> vals = parse_long_list(row, "u", ln);
      for (long v : vals)
        if (v < 0) throw ProblemError("u: negative count", ln);
      if (t.r1 == 0) t.r2 = vals.size();
      if (vals.size() != t.r2) throw ProblemError("u: ragged rows", ln);
      t.cells.insert(t.cells.end(), vals.begin(), vals.end());
      ++t.r1;
    }
    u = std::move(t);
  }

  if (!u && (!rows || !cols))
    throw ProblemError("need 'rows' and 'cols' (or 'u')", lineno ? lineno : 1);

  if (u) {
    std::vector<long> ur(u->r1, 0), uc(u->r2, 0);
    for (std::size_t i = 0; i < u->r1; ++i)
      for (std::size_t j = 0; j < u->r2; ++j) {
        ur[i] += u->at(i, j);
        uc[j] += u->at(i, j);
      }
    std::size_t uln = fields.at("u").second;
    if (rows && *rows != ur)
      throw ProblemError("u row sums do not match 'rows'", uln);
    if (cols && *cols != uc)
      throw ProblemError("u column sums do not match 'cols'", uln);
    if (!rows) rows = std::move(ur);
    if (!cols) cols = std::move(uc);
  }

  ProblemFile out;
  std::size_t bln = fields.count("rows") ? fields.at("rows").second : 1;
  try {
    out.beta = MarginalSums(*rows, *cols);
  } catch (const std::invalid_argument& e) {
    throw ProblemError(e.what(), bln);
  }
  out.u = std::move(u);

  if (auto it = fields.find("p"); it != fields.end()) {
    std::size_t ln = it->second.second;
    CellParams p;
    for (const std::string& row : split_rows(it->second.first)) {
      std::vector<std::string> toks = split_ws(row);
      if (toks.empty()) throw ProblemError("p: empty row", ln);
      if (p.r1 == 0) p.r2 = toks.size();
      if (toks.size() != p.r2) throw ProblemError("p: ragged rows", ln);
      for (const std::string& tok : toks) {
        Rational q;
        try {
          q = parse_rational(tok);
        } catch (const ParseError&) {
          throw ProblemError("p: bad rational '" + tok + "'", ln);
        }
        if (sgn(q) < 0) throw ProblemError("p: negative entry '" + tok + "'", ln);
        p.p.push_back(std::move(q));
      }
      ++p.r1;
    }
    if (p.r1 != out.beta.r1() || p.r2 != out.beta.r2())
      throw ProblemError("p grid shape does not match rows/cols", ln);
    out.p = std::move(p);
  } else {
    out.p = CellParams::ones(out.beta.r1(), out.beta.r2());
  }
  if (out.u && (out.u->r1 != out.beta.r1() || out.u->r2 != out.beta.r2()))
    throw ProblemError("u grid shape does not match rows/cols", fields.at("u").second);
  return out;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  return parse_problem_file(in);
}

}  // namespace contab
