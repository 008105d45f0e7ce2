#pragma once

// Algebraic curvature tensors of Clifford type on R^n with the standard
// inner product:
//
//   R = c0 * R_id + sum_i c_i * R_{Psi_i}
//
// where R_id(x,y,z,t) = <x,t><y,z> - <x,z><y,t> is the constant-curvature
// tensor and, for a skew-symmetric Psi,
//
//   R_Psi(x,y,z,t) = <x,Psi t><y,Psi z> - <x,Psi z><y,Psi t> - 2<x,Psi y><z,Psi t>.
//
// The module evaluates R, materializes it entrywise, verifies the curvature
// symmetries, and exposes the associated operators: the Jacobi operator
// J(x), its higher-signature version J(sigma) for a k-frame sigma, the
// complex Jacobi operator J(x) + J(Jx), the skew-curvature operator R(x,y),
// and the Ricci operator.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffjac/linalg.hpp"

namespace cliffjac {

struct CurvatureTerm {
  double c = 0.0;
  Matrix psi;  // n x n, expected skew-symmetric and orthogonal
};

// Plain aggregate on purpose: validation is separate so that deliberately
// malformed inputs (e.g. a skew but non-orthogonal Psi, used to exhibit a
// non-Einstein tensor) can still be built and probed.
struct CurvatureSpec {
  std::size_t dim = 0;
  double c0 = 0.0;
  std::vector<CurvatureTerm> terms;
};

struct SpecIssue {
  std::string what;
};

inline std::vector<SpecIssue> validate_spec(const CurvatureSpec& spec,
                                            double tol = 1e-10) {
  std::vector<SpecIssue> issues;
  if (spec.dim == 0) issues.push_back({"dimension must be positive"});
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    const CurvatureTerm& term = spec.terms[i];
    const std::string tag = "term " + std::to_string(i) + ": ";
    if (term.psi.rows() != spec.dim || term.psi.cols() != spec.dim) {
      issues.push_back({tag + "matrix shape does not match dimension"});
      continue;
    }
    if (term.c == 0.0) issues.push_back({tag + "coefficient is zero"});
    const double skew = (term.psi + term.psi.transpose()).max_norm();
    if (skew > tol) {
      issues.push_back({tag + "matrix is not skew-symmetric (residual " +
                        std::to_string(skew) + ")"});
    }
    const double orth =
        (term.psi.transpose() * term.psi - Matrix::identity(spec.dim)).max_norm();
    if (orth > tol) {
      issues.push_back({tag + "matrix is not orthogonal (residual " +
                        std::to_string(orth) + ")"});
    }
  }
  return issues;
}

inline void require_valid_spec(const CurvatureSpec& spec, double tol = 1e-10) {
  const auto issues = validate_spec(spec, tol);
  if (!issues.empty()) {
    std::string msg = "invalid curvature data:";
    for (const auto& issue : issues) msg += "\n  " + issue.what;
    throw std::invalid_argument(msg);
  }
}

// ---------------------------------------------------------------------------
// Scalar evaluation
// ---------------------------------------------------------------------------

inline double eval_R(const CurvatureSpec& spec, const Vector& x, const Vector& y,
                     const Vector& z, const Vector& t) {
  if (x.size() != spec.dim || y.size() != spec.dim || z.size() != spec.dim ||
      t.size() != spec.dim) {
    throw std::invalid_argument("eval_R: dimension mismatch");
  }
  double value = spec.c0 * (dot(x, t) * dot(y, z) - dot(x, z) * dot(y, t));
  for (const CurvatureTerm& term : spec.terms) {
    const Vector px = term.psi.apply(x);
    const Vector py = term.psi.apply(y);
    const Vector pz = term.psi.apply(z);
    const Vector pt = term.psi.apply(t);
    value += term.c * (dot(x, pt) * dot(y, pz) - dot(x, pz) * dot(y, pt) -
                       2.0 * dot(x, py) * dot(z, pt));
  }
  return value;
}

// ---------------------------------------------------------------------------
// Dense materialization and symmetry audit
// ---------------------------------------------------------------------------

class DenseCurvature {
 public:
  explicit DenseCurvature(std::size_t dim)
      : dim_(dim), data_(dim * dim * dim * dim, 0.0) {}

  std::size_t dim() const { return dim_; }

  double& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return data_[((a * dim_ + b) * dim_ + c) * dim_ + d];
  }
  double at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data_[((a * dim_ + b) * dim_ + c) * dim_ + d];
  }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

// Entrywise materialization on the standard basis. Guarded at n <= 32: the
// table holds n^4 doubles and exists for audits and small experiments, not
// as the evaluation path (the operators below never touch it).
inline DenseCurvature materialize(const CurvatureSpec& spec,
                                  std::size_t max_dim = 32) {
  const std::size_t n = spec.dim;
  if (n > max_dim) {
    throw std::invalid_argument(
        "materialize: dimension too large for a dense table (limit " +
        std::to_string(max_dim) + ")");
  }
  for (const CurvatureTerm& term : spec.terms) {
    if (term.psi.rows() != n || term.psi.cols() != n) {
      throw std::invalid_argument("materialize: term shape mismatch");
    }
  }
  DenseCurvature R(n);
  auto kron = [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          double v = spec.c0 * (kron(a, d) * kron(b, c) - kron(a, c) * kron(b, d));
          for (const CurvatureTerm& term : spec.terms) {
            const Matrix& P = term.psi;
            v += term.c * (P(a, d) * P(b, c) - P(a, c) * P(b, d) -
                           2.0 * P(a, b) * P(c, d));
          }
          R.at(a, b, c, d) = v;
        }
      }
    }
  }
  return R;
}

struct SymmetryReport {
  double antisymmetry = 0.0;   // max |R(a,b,c,d) + R(b,a,c,d)|
  double pair_exchange = 0.0;  // max |R(a,b,c,d) - R(c,d,a,b)|
  double bianchi = 0.0;        // max |R(a,b,c,d) + R(b,c,a,d) + R(c,a,b,d)|
  std::size_t worst[4] = {0, 0, 0, 0};
  bool pass = false;
  double tolerance = 0.0;
};

inline SymmetryReport verify_symmetries(const DenseCurvature& R,
                                        double tol = 1e-10) {
  SymmetryReport rep;
  rep.tolerance = tol;
  const std::size_t n = R.dim();
  double worst_val = -1.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          const double anti = std::abs(R.at(a, b, c, d) + R.at(b, a, c, d));
          const double pair = std::abs(R.at(a, b, c, d) - R.at(c, d, a, b));
          const double bian = std::abs(R.at(a, b, c, d) + R.at(b, c, a, d) +
                                       R.at(c, a, b, d));
          rep.antisymmetry = std::max(rep.antisymmetry, anti);
          rep.pair_exchange = std::max(rep.pair_exchange, pair);
          rep.bianchi = std::max(rep.bianchi, bian);
          const double here = std::max(anti, std::max(pair, bian));
          if (here > worst_val) {
            worst_val = here;
            rep.worst[0] = a;
            rep.worst[1] = b;
            rep.worst[2] = c;
            rep.worst[3] = d;
          }
        }
      }
    }
  }
  rep.pass = rep.antisymmetry <= tol && rep.pair_exchange <= tol &&
             rep.bianchi <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

// Jacobi operator at a unit vector x, as a matrix: <J(x)y, z> = R(y,x,x,z).
// Closed form (valid for any skew Psi, orthogonal or not):
//   J(x) = c0 (id - x x^T) + sum_i 3 c_i (Psi_i x)(Psi_i x)^T.
inline Matrix jacobi(const CurvatureSpec& spec, const Vector& x,
                     double unit_tol = 1e-9) {
  if (x.size() != spec.dim) throw std::invalid_argument("jacobi: dimension mismatch");
  if (std::abs(norm(x) - 1.0) > unit_tol) {
    throw std::invalid_argument("jacobi: direction must be a unit vector");
  }
  Matrix J = Matrix::identity(spec.dim);
  J -= Matrix::outer(x, x);
  J *= spec.c0;
  for (const CurvatureTerm& term : spec.terms) {
    const Vector px = term.psi.apply(x);
    J += (3.0 * term.c) * Matrix::outer(px, px);
  }
  return J;
}

// Skew-symmetric curvature operator: <R(x,y)z, w> = R(x,y,z,w).
//   R_id(x,y)   = x y^T - y x^T
//   R_Psi(x,y)  = (Psi x)(Psi y)^T - (Psi y)(Psi x)^T + 2 <x, Psi y> Psi
inline Matrix skew_curv(const CurvatureSpec& spec, const Vector& x,
                        const Vector& y) {
  if (x.size() != spec.dim || y.size() != spec.dim) {
    throw std::invalid_argument("skew_curv: dimension mismatch");
  }
  Matrix Rxy = Matrix::outer(x, y) - Matrix::outer(y, x);
  Rxy *= spec.c0;
  for (const CurvatureTerm& term : spec.terms) {
    const Vector px = term.psi.apply(x);
    const Vector py = term.psi.apply(y);
    Matrix part = Matrix::outer(px, py) - Matrix::outer(py, px);
    part += (2.0 * dot(x, py)) * term.psi;
    Rxy += term.c * part;
  }
  return Rxy;
}

// Higher-signature Jacobi operator of an orthonormal k-frame:
// J(sigma) = sum_j J(x_j). The frame is checked (Gram deviation <= tol).
inline Matrix higher_jacobi(const CurvatureSpec& spec,
                            const std::vector<Vector>& frame,
                            double frame_tol = 1e-10) {
  if (frame.empty()) throw std::invalid_argument("higher_jacobi: empty frame");
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j = i; j < frame.size(); ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot(frame[i], frame[j]) - target) > frame_tol) {
        throw std::invalid_argument("higher_jacobi: frame is not orthonormal");
      }
    }
  }
  Matrix J(spec.dim, spec.dim);
  for (const Vector& x : frame) J += jacobi(spec, x);
  return J;
}

// Complex Jacobi operator J(pi_x) = J(x) + J(Jx) for the complex line
// pi_x = span{x, Jx}, where J is an orthogonal complex structure.
inline Matrix complex_jacobi(const CurvatureSpec& spec, const Matrix& J,
                             const Vector& x, double tol = 1e-10) {
  if (J.rows() != spec.dim || J.cols() != spec.dim) {
    throw std::invalid_argument("complex_jacobi: structure shape mismatch");
  }
  const Matrix id = Matrix::identity(spec.dim);
  if ((J.transpose() * J - id).max_norm() > tol ||
      (J * J + id).max_norm() > tol) {
    throw std::invalid_argument(
        "complex_jacobi: structure must be orthogonal with square -id");
  }
  return jacobi(spec, x) + jacobi(spec, normalized(J.apply(x)));
}

// Ricci operator: Ric = sum_a J(e_a) over the standard basis. For a valid
// family this is c0 (n-1) id + 3 sum_i c_i id, but it is computed honestly
// so that invalid inputs reveal themselves.
inline Matrix ricci(const CurvatureSpec& spec) {
  Matrix r(spec.dim, spec.dim);
  for (std::size_t a = 0; a < spec.dim; ++a) {
    r += jacobi(spec, basis_vector(spec.dim, a));
  }
  return r;
}

}  // namespace cliffjac
