// Problem file parsing: the `key: value` text format shared by all CLI
// commands.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "contab/tables.hpp"

namespace contab {

// Keys: rows, cols, p, u. Grids use `;` between rows and whitespace between
// entries; `#` starts a comment. `p` defaults to all ones; `rows`/`cols` may
// be omitted when `u` is given.
struct ProblemFile {
  MarginalSums beta;
  CellParams p;
  std::optional<Table> u;

  ProblemFile() : beta({0}, {0}) {}
};

struct ProblemError : std::runtime_error {
  ProblemError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

ProblemFile parse_problem_file(std::istream& in);
ProblemFile load_problem_file(const std::string& path);

}  // namespace contab
