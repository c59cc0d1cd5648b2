#include "mptk/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace mptk {

namespace {

enum class Format { Array, Coordinate };
enum class Field { Real, Complex };
enum class Symmetry { General, Symmetric, Hermitian };

struct LineReader {
  std::istream& in;
  const std::string& name;
  std::size_t line_number = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::ParseError,
                name + ":" + std::to_string(line_number) + ": " + message);
  }

  /// Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_number;
      const auto first = line.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) continue;
      if (line[first] == '%') continue;
      return true;
    }
    return false;
  }
};

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_value(LineReader& reader, std::istringstream& stream) {
  double value = 0.0;
  if (!(stream >> value)) reader.fail("expected a numeric value");
  if (!std::isfinite(value)) reader.fail("non-finite value");
  return value;
}

Complex parse_entry(LineReader& reader, std::istringstream& stream, Field field) {
  const double re = parse_value(reader, stream);
  const double im = field == Field::Complex ? parse_value(reader, stream) : 0.0;
  return {re, im};
}

void require_line_consumed(LineReader& reader, std::istringstream& stream) {
  std::string extra;
  if (stream >> extra) reader.fail("unexpected trailing token '" + extra + "'");
}

}  // namespace

ComplexMatrix read_matrix_market(std::istream& in, const std::string& name) {
  LineReader reader{in, name};
  std::string line;

  if (!std::getline(in, line)) reader.fail("empty input");
  ++reader.line_number;
  std::istringstream header(line);
  std::string banner, object, format_word, field_word, symmetry_word;
  header >> banner >> object >> format_word >> field_word >> symmetry_word;
  if (lowercase(banner) != "%%matrixmarket") reader.fail("missing %%MatrixMarket banner");
  if (lowercase(object) != "matrix") reader.fail("unsupported object '" + object + "'");

  Format format;
  const std::string format_token = lowercase(format_word);
  if (format_token == "array") format = Format::Array;
  else if (format_token == "coordinate") format = Format::Coordinate;
  else reader.fail("unsupported format '" + format_word + "'");

  Field field;
  const std::string field_token = lowercase(field_word);
  if (field_token == "real" || field_token == "integer") field = Field::Real;
  else if (field_token == "complex") field = Field::Complex;
  else if (field_token == "pattern") reader.fail("pattern field is not supported");
  else reader.fail("unsupported field '" + field_word + "'");

  Symmetry symmetry;
  const std::string symmetry_token = lowercase(symmetry_word);
  if (symmetry_token == "general") symmetry = Symmetry::General;
  else if (symmetry_token == "symmetric") symmetry = Symmetry::Symmetric;
  else if (symmetry_token == "hermitian") symmetry = Symmetry::Hermitian;
  else if (symmetry_token == "skew-symmetric") reader.fail("skew-symmetric is not supported");
  else reader.fail("unsupported symmetry '" + symmetry_word + "'");

  if (!reader.next(line)) reader.fail("missing size line");
  std::istringstream sizes(line);
  long long rows = 0, cols = 0, entries = 0;
  if (!(sizes >> rows >> cols)) reader.fail("expected matrix dimensions");
  if (format == Format::Coordinate && !(sizes >> entries))
    reader.fail("expected an entry count");
  require_line_consumed(reader, sizes);
  if (rows <= 0 || cols <= 0) reader.fail("dimensions must be positive");
  if (symmetry != Symmetry::General && rows != cols)
    reader.fail("symmetric storage requires a square matrix");

  const auto m = static_cast<std::size_t>(rows);
  const auto n = static_cast<std::size_t>(cols);
  ComplexMatrix out(m, n);

  if (format == Format::Array) {
    // Column-major; symmetric/hermitian files store column tails i >= j.
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t start_row = symmetry == Symmetry::General ? 0 : j;
      for (std::size_t i = start_row; i < m; ++i) {
        if (!reader.next(line)) reader.fail("unexpected end of file");
        std::istringstream stream(line);
        const Complex value = parse_entry(reader, stream, field);
        require_line_consumed(reader, stream);
        out(i, j) = value;
        if (symmetry == Symmetry::Symmetric && i != j) out(j, i) = value;
        if (symmetry == Symmetry::Hermitian && i != j) out(j, i) = std::conj(value);
      }
    }
  } else {
    if (entries < 0) reader.fail("negative entry count");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (long long e = 0; e < entries; ++e) {
      if (!reader.next(line)) reader.fail("unexpected end of file");
      std::istringstream stream(line);
      long long i1 = 0, j1 = 0;
      if (!(stream >> i1 >> j1)) reader.fail("expected row and column indices");
      if (i1 < 1 || j1 < 1 || i1 > rows || j1 > cols) reader.fail("index out of range");
      const auto i = static_cast<std::size_t>(i1 - 1);
      const auto j = static_cast<std::size_t>(j1 - 1);
      if (symmetry != Symmetry::General && i < j)
        reader.fail("entry above the diagonal in symmetric storage");
      if (!seen.insert({i, j}).second) reader.fail("duplicate entry");
      const Complex value = parse_entry(reader, stream, field);
      require_line_consumed(reader, stream);
      out(i, j) = value;
      if (symmetry == Symmetry::Symmetric && i != j) out(j, i) = value;
      if (symmetry == Symmetry::Hermitian && i != j) out(j, i) = std::conj(value);
    }
  }
  if (reader.next(line)) reader.fail("unexpected trailing data");

  if (symmetry == Symmetry::Hermitian) {
    const double asym = frobenius_norm(out - adjoint(out));
    if (asym > 1e-12 * std::max(frobenius_norm(out), 1e-300))
      throw Error(ErrorCode::SymmetryViolation,
                  name + ": hermitian-declared matrix has non-real diagonal");
  }
  return out;
}

ComplexMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  return read_matrix_market(in, path);
}

namespace {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace

void write_matrix_market(std::ostream& out, const ComplexMatrix& a, const std::string& comment) {
  if (a.rows() == 0 || a.cols() == 0)
    throw Error(ErrorCode::InvalidArgument, "write_matrix_market: empty matrix");
  require_finite(a, "write_matrix_market");
  out << "%%MatrixMarket matrix array complex general\n";
  if (!comment.empty()) out << "% " << comment << "\n";
  out << a.rows() << " " << a.cols() << "\n";
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      out << format_double(a(i, j).real()) << " " << format_double(a(i, j).imag()) << "\n";
}

void write_matrix_market_file(const std::string& path, const ComplexMatrix& a,
                              const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, path + ": cannot open file for writing");
  write_matrix_market(out, a, comment);
  if (!out) throw Error(ErrorCode::ParseError, path + ": write failed");
}

}  // namespace mptk
