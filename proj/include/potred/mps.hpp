#pragma once

#include <iosfwd>
#include <string>

#include "potred/lp.hpp"

namespace potred {

// Fixed-form MPS subset: sections NAME, ROWS (N/E/L/G), COLUMNS, RHS,
// ENDATA; one row/value pair per COLUMNS or RHS line. L and G rows are
// converted to equalities by appending a slack column with coefficient
// +1 or -1 and zero objective cost. Throws ParseError with the offending
// line number.
LinearProgram parse_mps(std::istream& in);
LinearProgram parse_mps_string(const std::string& text);

std::string write_mps(const LinearProgram& lp);

// Native triplet format: header "m n nnz", then nnz lines "row col value"
// (0-based indices), then the m entries of b and the n entries of c,
// whitespace separated.
LinearProgram parse_triplet(std::istream& in);
LinearProgram parse_triplet_string(const std::string& text);

std::string write_triplet(const LinearProgram& lp);

// Dispatches on extension: ".mps" -> MPS, anything else -> triplet.
LinearProgram load_lp_file(const std::string& path);

}  // namespace potred
