#pragma once

#include <string_view>
#include <vector>

#include "cpn/bipoly.hpp"

namespace cpn {

/// Parses a polynomial over the tokens
///   integer, rational a/b, i, xi, xibar, + - * ^ ( )
/// Whitespace is ignored and exponents are nonnegative integers. Errors
/// throw ParseError carrying a 1-based line and column.
ExactPoly parse_polynomial(std::string_view text);

/// Comma-separated list of polynomials, e.g. "1, xi, xi^2".
std::vector<ExactPoly> parse_polynomial_list(std::string_view text);

}  // namespace cpn
