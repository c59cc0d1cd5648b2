#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mptk/errors.hpp"

namespace mptk {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.  This is the one carrier type for the
/// whole library; real inputs are stored with zero imaginary parts.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

  /// Columns [lo, hi) as a rows() x (hi-lo) matrix.
  ComplexMatrix columns(std::size_t lo, std::size_t hi) const;

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);

/// Largest entry magnitude (0 for an empty matrix).
double max_abs(const ComplexMatrix& a);

/// Horizontal concatenation; all pieces must share the row count.
ComplexMatrix hcat(const std::vector<ComplexMatrix>& parts);

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, const char* what);

/// Throws NotSquare / NotHermitian unless ||A - A^H||_F <= 1e-12 ||A||_F.
void require_hermitian(const ComplexMatrix& a, const char* what);

/// (A + A^H) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

}  // namespace mptk
