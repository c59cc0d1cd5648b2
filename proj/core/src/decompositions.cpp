#include "mptk/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mptk {

namespace {

constexpr double kOffDiagTol = 1e-14;
constexpr int kMaxSweeps = 30;

/// One complex Jacobi rotation, parameterized so that
///   R = [[c, s],[-conj(phase) s, conj(phase) c]],  phase = a_pq / |a_pq|,
/// annihilates the (p, q) entry of the Hermitian pivot submatrix.
struct Rotation {
  double c;
  double s;
  Complex phase;  // e^{i arg(a_pq)}
};

Rotation make_rotation(double app, double aqq, Complex apq) {
  const double sigma = std::abs(apq);
  const Complex phase = apq / sigma;
  const double tau = (aqq - app) / (2.0 * sigma);
  // Smaller root of t^2 + 2 tau t - 1 = 0 keeps |theta| <= pi/4.
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return Rotation{c, t * c, phase};
}

/// Applies R on the right to columns p, q of m.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex ph = std::conj(r.phase);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Complex xp = m(i, p);
    const Complex xq = m(i, q);
    m(i, p) = r.c * xp - ph * r.s * xq;
    m(i, q) = r.s * xp + ph * r.c * xq;
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) sum += 2.0 * std::norm(m(i, j));
  return std::sqrt(sum);
}

/// In-place phase fix: rotate each column by a unit scalar so its
/// largest-magnitude entry is real nonnegative (ties: lowest row index).
void fix_column_phases(ComplexMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double mag = std::abs(m(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag == 0.0) continue;
    const Complex alpha = std::conj(m(best, j)) / best_mag;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= alpha;
    m(best, j) = Complex(std::abs(m(best, j)), 0.0);
  }
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

ComplexMatrix permute_columns(const ComplexMatrix& m, const std::vector<std::size_t>& order) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, order[j]);
  return out;
}

}  // namespace

SpectralDecomposition eigh_sorted(const ComplexMatrix& a) {
  require_hermitian(a, "eigh_sorted input");
  const std::size_t n = a.rows();
  ComplexMatrix m = hermitian_part(a);
  ComplexMatrix u = ComplexMatrix::identity(n);
  const double target = kOffDiagTol * frobenius_norm(m);

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(m) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        if (apq == Complex(0.0, 0.0)) continue;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const Rotation r = make_rotation(app, aqq, apq);

        // Off-pivot rows/columns transform like column pairs; the pivot
        // 2x2 block has the closed form below (diagonal stays real).
        const Complex ph = std::conj(r.phase);
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const Complex xp = m(i, p);
          const Complex xq = m(i, q);
          m(i, p) = r.c * xp - ph * r.s * xq;
          m(i, q) = r.s * xp + ph * r.c * xq;
          m(p, i) = std::conj(m(i, p));
          m(q, i) = std::conj(m(i, q));
        }
        const double sigma = std::abs(apq);
        const double cc = r.c * r.c, ss = r.s * r.s, cs = 2.0 * r.c * r.s;
        m(p, p) = Complex(cc * app + ss * aqq - cs * sigma, 0.0);
        m(q, q) = Complex(ss * app + cc * aqq + cs * sigma, 0.0);
        m(p, q) = Complex(0.0, 0.0);
        m(q, p) = Complex(0.0, 0.0);

        rotate_columns(u, p, q, r);
      }
    }
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = m(i, i).real();
  const std::vector<std::size_t> order = descending_order(eigs);

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = eigs[order[i]];
  out.basis = permute_columns(u, order);
  fix_column_phases(out.basis);
  return out;
}

namespace {

/// Appends to w (m x r, orthonormal) enough identity-derived columns to make
/// it m x m.  Greedy pivoting: each step orthogonalizes every e_i against the
/// accepted columns (twice-iterated Gram-Schmidt) and keeps the residual of
/// largest norm, which is at least sqrt((m - cols)/m) while columns remain.
ComplexMatrix complete_orthonormal(const ComplexMatrix& w) {
  const std::size_t m = w.rows();
  std::vector<std::vector<Complex>> cols(w.cols(), std::vector<Complex>(m));
  for (std::size_t j = 0; j < w.cols(); ++j)
    for (std::size_t i = 0; i < m; ++i) cols[j][i] = w(i, j);

  const auto orthogonalized = [&](std::size_t cand) {
    std::vector<Complex> v(m, Complex(0.0, 0.0));
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : cols) {
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) proj += std::conj(q[i]) * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= proj * q[i];
      }
    }
    return v;
  };
  const auto norm_of = [](const std::vector<Complex>& v) {
    double sum = 0.0;
    for (const Complex& z : v) sum += std::norm(z);
    return std::sqrt(sum);
  };

  while (cols.size() < m) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t cand = 0; cand < m; ++cand) {
      const double norm = norm_of(orthogonalized(cand));
      if (norm > best_norm) {
        best_norm = norm;
        best = cand;
      }
    }
    if (best_norm < 1e-6)
      throw Error(ErrorCode::RankCollapse, "orthonormal completion failed to reach full rank");
    std::vector<Complex> v = orthogonalized(best);
    const double norm = norm_of(v);
    for (Complex& z : v) z /= norm;
    cols.push_back(std::move(v));
  }

  ComplexMatrix out(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) out(i, j) = cols[j][i];
  return out;
}

}  // namespace

SingularDecomposition svd_sorted(const ComplexMatrix& b) {
  if (b.rows() < b.cols())
    throw Error(ErrorCode::ShapeError, "svd_sorted requires rows >= cols; transpose first");
  require_finite(b, "svd_sorted input");
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();

  ComplexMatrix c = b;  // maintained as B * V
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Column inner products drive the rotations; the per-pair relative
  // criterion |c_p^H c_q| <= 1e-14 ||c_p|| ||c_q|| preserves the mutual
  // orthogonality of the normalized left vectors even for small singular
  // values.
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        Complex apq(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          app += std::norm(c(i, p));
          aqq += std::norm(c(i, q));
          apq += std::conj(c(i, p)) * c(i, q);
        }
        if (std::abs(apq) <= kOffDiagTol * std::sqrt(app) * std::sqrt(aqq)) continue;
        const Rotation r = make_rotation(app, aqq, apq);
        rotate_columns(c, p, q, r);
        rotate_columns(v, p, q, r);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += std::norm(c(i, j));
    sigma[j] = std::sqrt(sum);
  }
  const std::vector<std::size_t> order = descending_order(sigma);
  c = permute_columns(c, order);
  v = permute_columns(v, order);
  std::vector<double> sorted_sigma(n);
  for (std::size_t j = 0; j < n; ++j) sorted_sigma[j] = sigma[order[j]];

  // Phase convention lives on the right factor; replaying it onto the
  // B*V columns keeps c_j = B v_j exact so the left factor inherits it.
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag == 0.0) continue;
    const Complex alpha = std::conj(v(best, j)) / best_mag;
    for (std::size_t i = 0; i < n; ++i) v(i, j) *= alpha;
    v(best, j) = Complex(std::abs(v(best, j)), 0.0);
    for (std::size_t i = 0; i < m; ++i) c(i, j) *= alpha;
  }

  // Left columns for numerically nonzero singular values; the rest (rank
  // deficiency and the m - n nullspace part) come from QR completion.
  const double rank_tol = sorted_sigma.empty()
                              ? 0.0
                              : sorted_sigma.front() * static_cast<double>(std::max(m, n)) * 1e-15;
  std::size_t kept = 0;
  while (kept < n && sorted_sigma[kept] > rank_tol) ++kept;

  ComplexMatrix w_range(m, kept);
  for (std::size_t j = 0; j < kept; ++j)
    for (std::size_t i = 0; i < m; ++i) w_range(i, j) = c(i, j) / sorted_sigma[j];
  ComplexMatrix w = complete_orthonormal(w_range);
  {
    // Completed columns are free; apply the phase convention to them alone.
    ComplexMatrix tail = w.columns(kept, m);
    fix_column_phases(tail);
    for (std::size_t j = kept; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) w(i, j) = tail(i, j - kept);
  }

  return SingularDecomposition{std::move(w), std::move(sorted_sigma), std::move(v)};
}

double matrix_norm(const ComplexMatrix& a, NormKind kind) {
  require_finite(a, "matrix_norm input");
  if (kind == NormKind::Frobenius) return frobenius_norm(a);
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const SingularDecomposition svd =
      (a.rows() >= a.cols()) ? svd_sorted(a) : svd_sorted(adjoint(a));
  return svd.singulars.empty() ? 0.0 : svd.singulars.front();
}

}  // namespace mptk
