#pragma once

#include <iosfwd>
#include <string>

#include "mptk/complex_matrix.hpp"

namespace mptk {

/// Reads a Matrix Market file: array or coordinate format; real, integer, or
/// complex field; general, symmetric, or hermitian symmetry (stored lower
/// triangles are expanded).  Pattern and skew-symmetric variants are
/// rejected with ParseError.  Parse failures carry "<name>:<line>:"
/// prefixes; hermitian-declared files that expand to a non-Hermitian matrix
/// raise SymmetryViolation; non-finite values raise ParseError.
ComplexMatrix read_matrix_market(std::istream& in, const std::string& name = "<stream>");
ComplexMatrix read_matrix_market_file(const std::string& path);

/// Writes array/complex/general Matrix Market, column-major, one entry per
/// line, with shortest-round-trip number formatting so write-then-read is
/// bit identical.
void write_matrix_market(std::ostream& out, const ComplexMatrix& a,
                         const std::string& comment = "");
void write_matrix_market_file(const std::string& path, const ComplexMatrix& a,
                              const std::string& comment = "");

}  // namespace mptk
