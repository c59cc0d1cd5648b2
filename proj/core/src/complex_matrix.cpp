#include "mptk/complex_matrix.hpp"

#include <cmath>
#include <string>

namespace mptk {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::RankCollapse: return "RankCollapse";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::columns(std::size_t lo, std::size_t hi) const {
  if (lo > hi || hi > cols_)
    throw Error(ErrorCode::ShapeError, "column range [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + ") out of bounds");
  ComplexMatrix out(rows_, hi - lo);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = lo; j < hi; ++j) out(i, j - lo) = (*this)(i, j);
  return out;
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeError, std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()) + " vs " +
                                           std::to_string(b.rows()) + "x" +
                                           std::to_string(b.cols()));
}

}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::ShapeError, "multiply: inner dimensions " + std::to_string(a.cols()) +
                                           " vs " + std::to_string(b.rows()));
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex aij = a(i, l);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aij * b(l, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (Complex& z : out.data()) z *= s;
  return out;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.data()) sum += std::norm(z);
  return std::sqrt(sum);
}

double max_abs(const ComplexMatrix& a) {
  double best = 0.0;
  for (const Complex& z : a.data()) best = std::max(best, std::abs(z));
  return best;
}

ComplexMatrix hcat(const std::vector<ComplexMatrix>& parts) {
  if (parts.empty()) return {};
  std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const ComplexMatrix& p : parts) {
    if (p.rows() != rows) throw Error(ErrorCode::ShapeError, "hcat: row counts differ");
    cols += p.cols();
  }
  ComplexMatrix out(rows, cols);
  std::size_t at = 0;
  for (const ComplexMatrix& p : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out(i, at + j) = p(i, j);
    at += p.cols();
  }
  return out;
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.all_finite())
    throw Error(ErrorCode::NonFinite, std::string(what) + " contains a non-finite entry");
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::NotSquare, std::string(what) + " is " + std::to_string(a.rows()) +
                                          "x" + std::to_string(a.cols()));
  require_finite(a, what);
  const double scale = frobenius_norm(a);
  double asym = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) asym += std::norm(a(i, j) - std::conj(a(j, i)));
  if (std::sqrt(asym) > 1e-12 * scale)
    throw Error(ErrorCode::NotHermitian,
                std::string(what) + " deviates from its adjoint beyond 1e-12 * ||.||_F");
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return out;
}

}  // namespace mptk
