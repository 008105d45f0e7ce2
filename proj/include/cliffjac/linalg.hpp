#pragma once

// Dense real linear algebra kernel: vectors, row-major matrices, a cyclic
// Jacobi symmetric eigensolver, spectrum clustering, modified Gram-Schmidt,
// and a deterministic random source (Mersenne twister + Box-Muller).
//
// Everything is dependency-free by design: the dimensions in play are tiny
// (tensors live on R^n with n <= 32 in practice), so a short, fully
// deterministic Jacobi sweep beats pulling in an external eigensolver and
// keeps byte-for-byte reproducibility across platforms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cliffjac {

using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

inline Vector normalized(const Vector& a) {
  const double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  Vector r(a);
  for (double& v : r) v /= n;
  return r;
}

inline Vector basis_vector(std::size_t dim, std::size_t i) {
  if (i >= dim) throw std::invalid_argument("basis_vector: index out of range");
  Vector e(dim, 0.0);
  e[i] = 1.0;
  return e;
}

// r += s * a
inline void add_scaled(Vector& r, double s, const Vector& a) {
  if (r.size() != a.size()) {
    throw std::invalid_argument("add_scaled: dimension mismatch");
  }
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * a[i];
}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  // a b^T
  static Matrix outer(const Vector& a, const Vector& b) {
    Matrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  double trace() const {
    const std::size_t n = std::min(rows_, cols_);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (*this)(i, i);
    return s;
  }

  double max_norm() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double fro_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  // max-norm of A - A^T; 0 for exactly symmetric input.
  double sym_residual() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = i + 1; j < cols_; ++j) {
        m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
      }
    }
    return m;
  }

  Vector col(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_col(std::size_t j, const Vector& c) {
    if (c.size() != rows_) throw std::invalid_argument("set_col: dimension mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  Matrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

 private:
  void check_same_shape(const Matrix& o, const char* who) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument(std::string(who) + ": shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double commutator_norm(const Matrix& a, const Matrix& b) {
  return (a * b - b * a).fro_norm();
}

inline double anticommutator_norm(const Matrix& a, const Matrix& b) {
  return (a * b + b * a).fro_norm();
}

// ---------------------------------------------------------------------------
// Symmetric eigensolver (cyclic Jacobi)
// ---------------------------------------------------------------------------

struct SymSpectrum {
  Vector eigenvalues;                             // ascending
  Matrix eigenvectors;                            // columns, same order
  std::vector<std::pair<double, int>> clusters;   // (representative, multiplicity)
};

// Merge consecutive ascending eigenvalues whose gap is <= gap; the
// representative of each cluster is the mean of its members.
inline std::vector<std::pair<double, int>> cluster_spectrum(const Vector& sorted,
                                                            double gap) {
  std::vector<std::pair<double, int>> out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    double sum = sorted[i];
    while (j < sorted.size() && sorted[j] - sorted[j - 1] <= gap) {
      sum += sorted[j];
      ++j;
    }
    out.emplace_back(sum / static_cast<double>(j - i), static_cast<int>(j - i));
    i = j;
  }
  return out;
}

inline double default_cluster_gap(double spectral_radius) {
  return 1e-7 * (1.0 + spectral_radius);
}

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Input must be symmetric to sym_tol * max_norm (throws otherwise).
// Deterministic: fixed sweep order, fixed convergence threshold, fixed
// eigenvector sign convention (largest-magnitude component positive).
inline SymSpectrum symmetric_eigen(const Matrix& a_in, double sym_tol = 1e-12) {
  if (a_in.rows() != a_in.cols()) {
    throw std::invalid_argument("symmetric_eigen: matrix not square");
  }
  const std::size_t n = a_in.rows();
  const double scale = a_in.max_norm();
  if (a_in.sym_residual() > sym_tol * std::max(1.0, scale)) {
    throw std::invalid_argument("symmetric_eigen: matrix not symmetric");
  }

  Matrix a(a_in);
  // Symmetrize exactly so rotations keep both triangles consistent.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = m;
      a(j, i) = m;
    }
  }
  Matrix v = Matrix::identity(n);

  const double fro = a.fro_norm();
  const double stop = 1e-12 * std::max(1.0, fro);
  const int max_sweeps = 100;

  auto off_diag = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps && off_diag() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i != p && i != q) {
            const double aip = a(i, p);
            const double aiq = a(i, q);
            a(i, p) = aip - s * (aiq + tau * aip);
            a(i, q) = aiq + s * (aip - tau * aiq);
            a(p, i) = a(i, p);
            a(q, i) = a(i, q);
          }
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
  }

  // Sort ascending, carrying eigenvector columns along.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  SymSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    Vector column = v.col(order[k]);
    // Sign convention: largest-magnitude component made positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(column[i]) > std::abs(column[imax])) imax = i;
    }
    if (column[imax] < 0.0) {
      for (double& x : column) x = -x;
    }
    out.eigenvectors.set_col(k, column);
  }

  double radius = 0.0;
  for (double lam : out.eigenvalues) radius = std::max(radius, std::abs(lam));
  out.clusters = cluster_spectrum(out.eigenvalues, default_cluster_gap(radius));
  return out;
}

// ---------------------------------------------------------------------------
// Orthonormalization
// ---------------------------------------------------------------------------

// Modified Gram-Schmidt with one reorthogonalization pass. Vectors whose
// remaining component is below pivot_tol * (original norm, floored at 1) are
// dropped. Surviving vectors get a deterministic sign: first component with
// magnitude > 1e-12 is made positive.
inline std::vector<Vector> gram_schmidt(const std::vector<Vector>& vs,
                                        double pivot_tol = 1e-10) {
  std::vector<Vector> basis;
  for (const Vector& v0 : vs) {
    Vector v(v0);
    const double original = norm(v0);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& b : basis) add_scaled(v, -dot(v, b), b);
    }
    const double rem = norm(v);
    if (rem <= pivot_tol * std::max(1.0, original)) continue;
    for (double& x : v) x /= rem;
    for (double x : v) {
      if (std::abs(x) > 1e-12) {
        if (x < 0.0) {
          for (double& y : v) y = -y;
        }
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

// mt19937_64 + hand-rolled Box-Muller. std::normal_distribution is not
// bit-stable across standard libraries; this is, so seeded runs produce the
// same samples (and the same serialized reports) everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]: keeps log() finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline Vector random_unit(std::size_t dim, Rng& rng) {
  Vector v(dim);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (double& x : v) x = rng.gaussian();
    const double n = norm(v);
    if (n > 1e-8) {
      for (double& x : v) x /= n;
      return v;
    }
  }
  throw std::runtime_error("random_unit: degenerate draw");
}

// Haar-distributed orthogonal matrix: MGS of a Gaussian matrix, with the
// orientation left untouched (no sign convention) so the law is invariant.
inline Matrix random_orthogonal(std::size_t dim, Rng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<Vector> cols(dim, Vector(dim));
    for (auto& c : cols) {
      for (double& x : c) x = rng.gaussian();
    }
    std::vector<Vector> basis;
    bool ok = true;
    for (const Vector& v0 : cols) {
      Vector v(v0);
      for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& b : basis) add_scaled(v, -dot(v, b), b);
      }
      const double rem = norm(v);
      if (rem <= 1e-10 * std::max(1.0, norm(v0))) {
        ok = false;
        break;
      }
      for (double& x : v) x /= rem;
      basis.push_back(std::move(v));
    }
    if (!ok) continue;
    Matrix q(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) q.set_col(j, basis[j]);
    return q;
  }
  throw std::runtime_error("random_orthogonal: degenerate draw");
}

}  // namespace cliffjac
