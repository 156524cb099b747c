// Decimal rendering of exact rationals.
#pragma once

#include <string>

#include "contab/rational.hpp"

namespace contab {

// Round-half-even scientific notation with `sig_digits` significant digits,
// e.g. "4.48194745579962e+94", "3.33e-1". Exact integers of magnitude below
// 10^6 are rendered plainly; zero renders as "0".
std::string render_decimal(const Rational& q, int sig_digits);

}  // namespace contab
