#pragma once

// Families of anticommuting orthogonal complex structures on R^n
// ("Clifford families"): J_i skew-symmetric, orthogonal, J_i^2 = -id,
// J_i J_j = -J_j J_i for i != j.
//
// The largest possible family size in dimension n is the Adams number
// nu(n), with nu(n) depending only on the power of two in n.  Conversely a
// family of rank kappa exists exactly when n is a multiple of the minimal
// dimension d(kappa), and this module builds one explicitly: tensor-product
// generators in the minimal dimension, block-diagonal copies to reach n,
// and an optional Haar-random orthogonal conjugation to hide the block
// structure (all algebraic relations are conjugation-invariant).

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffjac/linalg.hpp"

namespace cliffjac {

struct CliffordFamily {
  std::size_t dim = 0;
  std::vector<Matrix> generators;

  std::size_t rank() const { return generators.size(); }
};

// ---------------------------------------------------------------------------
// Adams number and the minimal supporting dimension
// ---------------------------------------------------------------------------

// nu(n): the maximal number of pointwise linearly independent vector fields
// on the sphere S^{n-1}, equivalently the maximal rank of a family as above.
// Only the 2-adic part matters: nu(m * 2^s) = nu(2^s) for odd m, and
// nu(2^s) follows the 8-fold pattern 0, 1, 3, 7 then +8 per factor of 16.
inline int adams_nu(std::size_t n) {
  if (n == 0) throw std::invalid_argument("adams_nu: n must be positive");
  int s = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++s;
  }
  static constexpr int low[4] = {0, 1, 3, 7};
  int value = 0;
  while (s > 3) {
    value += 8;
    s -= 4;
  }
  return value + low[s];
}

// Minimal dimension carrying a family of rank kappa:
// d(1..8) = 2, 4, 4, 8, 8, 8, 8, 16 and d(kappa + 8) = 16 d(kappa).
// (Equivalently: kappa <= nu(n) iff d(kappa) divides n.)
inline std::size_t min_clifford_dim(std::size_t kappa) {
  if (kappa == 0) throw std::invalid_argument("min_clifford_dim: rank must be positive");
  static constexpr std::size_t low[9] = {0, 2, 4, 4, 8, 8, 8, 8, 16};
  std::size_t scale = 1;
  while (kappa > 8) {
    scale *= 16;
    kappa -= 8;
  }
  return scale * low[kappa];
}

// ---------------------------------------------------------------------------
// Explicit constructions
// ---------------------------------------------------------------------------

namespace detail {

inline Matrix from_rows(std::size_t n, const double* entries) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
  }
  return m;
}

// 2 x 2 seeds: E is the rotation by a quarter turn, S and T the two real
// reflections; they pairwise anticommute.
inline Matrix mat_E() {
  static constexpr double e[4] = {0, -1, 1, 0};
  return from_rows(2, e);
}
inline Matrix mat_S() {
  static constexpr double e[4] = {1, 0, 0, -1};
  return from_rows(2, e);
}
inline Matrix mat_T() {
  static constexpr double e[4] = {0, 1, 1, 0};
  return from_rows(2, e);
}

// Quaternion multiplication operators on the basis (1, i, j, k):
// L_q is left multiplication by q, R_q right multiplication.  Left and
// right multiplications commute with each other; each triple consists of
// pairwise anticommuting skew orthogonal complex structures.
inline Matrix mat_Li() {
  static constexpr double e[16] = {0, -1, 0, 0, 1, 0, 0, 0,
                                   0, 0, 0, -1, 0, 0, 1, 0};
  return from_rows(4, e);
}
inline Matrix mat_Lj() {
  static constexpr double e[16] = {0, 0, -1, 0, 0, 0, 0, 1,
                                   1, 0, 0, 0, 0, -1, 0, 0};
  return from_rows(4, e);
}
inline Matrix mat_Lk() {
  static constexpr double e[16] = {0, 0, 0, -1, 0, 0, -1, 0,
                                   0, 1, 0, 0, 1, 0, 0, 0};
  return from_rows(4, e);
}
inline Matrix mat_Ri() {
  static constexpr double e[16] = {0, -1, 0, 0, 1, 0, 0, 0,
                                   0, 0, 0, 1, 0, 0, -1, 0};
  return from_rows(4, e);
}
inline Matrix mat_Rj() {
  static constexpr double e[16] = {0, 0, -1, 0, 0, 0, 0, -1,
                                   1, 0, 0, 0, 0, 1, 0, 0};
  return from_rows(4, e);
}
inline Matrix mat_Rk() {
  static constexpr double e[16] = {0, 0, 0, -1, 0, 0, 1, 0,
                                   0, -1, 0, 0, 1, 0, 0, 0};
  return from_rows(4, e);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return m;
}

// A family of the requested rank in the minimal dimension d(kappa).
inline std::vector<Matrix> base_family(std::size_t kappa) {
  if (kappa == 0) throw std::invalid_argument("base_family: rank must be positive");
  if (kappa == 1) return {mat_E()};
  if (kappa <= 3) {
    const std::vector<Matrix> triple = {mat_Li(), mat_Lj(), mat_Lk()};
    return std::vector<Matrix>(triple.begin(), triple.begin() + kappa);
  }
  if (kappa <= 7) {
    const Matrix S = mat_S();
    const Matrix T = mat_T();
    const std::vector<Matrix> seven = {
        kron(S, mat_Li()), kron(S, mat_Lj()), kron(S, mat_Lk()),
        kron(T, mat_Ri()), kron(T, mat_Rj()), kron(T, mat_Rk()),
        kron(mat_E(), Matrix::identity(4))};
    return std::vector<Matrix>(seven.begin(), seven.begin() + kappa);
  }
  if (kappa == 8) {
    const std::vector<Matrix> seven = base_family(7);
    std::vector<Matrix> f;
    for (const Matrix& g : seven) f.push_back(kron(mat_S(), g));
    f.push_back(kron(mat_E(), Matrix::identity(8)));
    return f;
  }
  // kappa >= 9: eight generators acting on the left factor R^16, and the
  // remaining kappa - 8 as W (x) B_j where W = T (x) id is a symmetric
  // orthogonal involution anticommuting with all eight.
  const std::vector<Matrix> eight = base_family(8);
  const std::vector<Matrix> rest = base_family(kappa - 8);
  const std::size_t dprime = rest.front().rows();
  const Matrix W = kron(mat_T(), Matrix::identity(8));
  std::vector<Matrix> f;
  for (const Matrix& g : eight) f.push_back(kron(g, Matrix::identity(dprime)));
  for (const Matrix& b : rest) f.push_back(kron(W, b));
  return f;
}

}  // namespace detail

// Build a Clifford family of rank kappa on R^n.  Throws when no such family
// exists (n not a multiple of d(kappa), equivalently kappa > nu(n)).  With
// conjugate = true (default) the block construction is hidden behind a
// seeded Haar-random orthogonal change of basis.
inline CliffordFamily generate_family(std::size_t n, std::size_t kappa,
                                      std::uint64_t seed = 0,
                                      bool conjugate = true) {
  if (n == 0) throw std::invalid_argument("generate_family: dimension must be positive");
  if (kappa == 0) throw std::invalid_argument("generate_family: rank must be positive");
  const std::size_t d = min_clifford_dim(kappa);
  if (n % d != 0) {
    throw std::invalid_argument(
        "generate_family: no family of rank " + std::to_string(kappa) +
        " exists in dimension " + std::to_string(n) +
        "; admissible dimensions are the multiples of " + std::to_string(d) +
        " (dimension " + std::to_string(n) + " supports at most " +
        std::to_string(adams_nu(n)) + " anticommuting complex structures)");
  }
  const std::vector<Matrix> base = detail::base_family(kappa);
  const std::size_t copies = n / d;

  CliffordFamily family;
  family.dim = n;
  for (const Matrix& b : base) {
    Matrix big(n, n);
    for (std::size_t block = 0; block < copies; ++block) {
      const std::size_t off = block * d;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) big(off + i, off + j) = b(i, j);
      }
    }
    family.generators.push_back(std::move(big));
  }

  if (conjugate) {
    Rng rng(seed);
    const Matrix q = random_orthogonal(n, rng);
    const Matrix qt = q.transpose();
    for (Matrix& g : family.generators) g = q * g * qt;
  }
  return family;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct FamilyReport {
  double skew = 0.0;          // max over i of ||J_i + J_i^T||_max
  double orthogonality = 0.0; // max over i of ||J_i^T J_i - id||_max
  double square = 0.0;        // max over i of ||J_i^2 + id||_max
  double anticommute = 0.0;   // max over i<j of ||J_i J_j + J_j J_i||_max
  bool pass = false;
  double tolerance = 0.0;
};

inline FamilyReport verify_family(const CliffordFamily& family,
                                  double tol = 1e-10) {
  FamilyReport rep;
  rep.tolerance = tol;
  const Matrix id = Matrix::identity(family.dim);
  for (std::size_t i = 0; i < family.generators.size(); ++i) {
    const Matrix& J = family.generators[i];
    if (J.rows() != family.dim || J.cols() != family.dim) {
      throw std::invalid_argument("verify_family: generator shape mismatch");
    }
    rep.skew = std::max(rep.skew, (J + J.transpose()).max_norm());
    rep.orthogonality =
        std::max(rep.orthogonality, (J.transpose() * J - id).max_norm());
    rep.square = std::max(rep.square, (J * J + id).max_norm());
    for (std::size_t j = i + 1; j < family.generators.size(); ++j) {
      const Matrix& K = family.generators[j];
      rep.anticommute = std::max(rep.anticommute, (J * K + K * J).max_norm());
    }
  }
  rep.pass = rep.skew <= tol && rep.orthogonality <= tol && rep.square <= tol &&
             rep.anticommute <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Derived structures
// ---------------------------------------------------------------------------

// Linear reparametrization J~_i = sum_j A(i,j) J_j.  A must be orthogonal
// (kappa x kappa); this is exactly the class of maps sending families to
// families.
inline CliffordFamily reparametrize(const CliffordFamily& family,
                                    const Matrix& A, double tol = 1e-10) {
  const std::size_t kappa = family.rank();
  if (A.rows() != kappa || A.cols() != kappa) {
    throw std::invalid_argument("reparametrize: matrix shape mismatch");
  }
  if ((A.transpose() * A - Matrix::identity(kappa)).max_norm() > tol) {
    throw std::invalid_argument("reparametrize: matrix must be orthogonal");
  }
  CliffordFamily out;
  out.dim = family.dim;
  for (std::size_t i = 0; i < kappa; ++i) {
    Matrix g(family.dim, family.dim);
    for (std::size_t j = 0; j < kappa; ++j) {
      g += A(i, j) * family.generators[j];
    }
    out.generators.push_back(std::move(g));
  }
  return out;
}

// For a rank-3 family, the dual family {J_2 J_3, J_3 J_1, J_1 J_2}.  It is
// again a rank-3 family, and always a quaternion one (its triple product is
// -id regardless of the input family).
inline CliffordFamily dual_structure(const CliffordFamily& family) {
  if (family.rank() != 3) {
    throw std::invalid_argument("dual_structure: family must have rank 3");
  }
  const Matrix& J1 = family.generators[0];
  const Matrix& J2 = family.generators[1];
  const Matrix& J3 = family.generators[2];
  CliffordFamily out;
  out.dim = family.dim;
  out.generators = {J2 * J3, J3 * J1, J1 * J2};
  return out;
}

// Least-squares coordinates of M in the span of a word list, under the
// normalized trace inner product <A, B> = tr(A^T B) / n.  The Gram matrix is
// pseudo-inverted (eigenvalue cutoff relative to the largest), so linearly
// dependent word lists are handled.  residual is relative Frobenius.
struct SpanFit {
  Vector coeffs;
  double residual = 0.0;
};

inline SpanFit decompose_in_span(const Matrix& M,
                                 const std::vector<Matrix>& words) {
  if (words.empty()) throw std::invalid_argument("decompose_in_span: no words");
  const std::size_t n = M.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t k = words.size();
  Matrix gram(k, k);
  Vector rhs(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const double g = (words[a].transpose() * words[b]).trace() * inv_n;
      gram(a, b) = g;
      gram(b, a) = g;
    }
    rhs[a] = (words[a].transpose() * M).trace() * inv_n;
  }
  const SymSpectrum eig = symmetric_eigen(gram);
  double lam_max = 0.0;
  for (double lam : eig.eigenvalues) lam_max = std::max(lam_max, std::abs(lam));
  const double cutoff = 1e-10 * std::max(lam_max, 1e-300);

  SpanFit fit;
  fit.coeffs.assign(k, 0.0);
  for (std::size_t m = 0; m < k; ++m) {
    const double lam = eig.eigenvalues[m];
    if (std::abs(lam) <= cutoff) continue;
    const Vector u = eig.eigenvectors.col(m);
    const double proj = dot(u, rhs) / lam;
    add_scaled(fit.coeffs, proj, u);
  }

  Matrix recon(M.rows(), M.cols());
  for (std::size_t a = 0; a < k; ++a) {
    if (fit.coeffs[a] != 0.0) recon += fit.coeffs[a] * words[a];
  }
  fit.residual = (M - recon).fro_norm() / std::max(1.0, M.fro_norm());
  return fit;
}

// Coordinates of M in the full word algebra of a family of rank <= 3:
// id, the generators, the pair products J_i J_j (i < j), and the triple
// product for rank 3.
struct AlgebraCoordinates {
  std::vector<std::string> labels;
  Vector coeffs;
  double residual = 0.0;
};

inline AlgebraCoordinates decompose_in_algebra(const Matrix& M,
                                               const CliffordFamily& family) {
  const std::size_t kappa = family.rank();
  if (kappa > 3) {
    throw std::invalid_argument(
        "decompose_in_algebra: supported for families of rank <= 3");
  }
  std::vector<Matrix> words = {Matrix::identity(family.dim)};
  std::vector<std::string> labels = {"id"};
  for (std::size_t i = 0; i < kappa; ++i) {
    words.push_back(family.generators[i]);
    labels.push_back("J" + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < kappa; ++i) {
    for (std::size_t j = i + 1; j < kappa; ++j) {
      words.push_back(family.generators[i] * family.generators[j]);
      labels.push_back("J" + std::to_string(i + 1) + "J" + std::to_string(j + 1));
    }
  }
  if (kappa == 3) {
    words.push_back(family.generators[0] * family.generators[1] *
                    family.generators[2]);
    labels.push_back("J1J2J3");
  }
  const SpanFit fit = decompose_in_span(M, words);
  AlgebraCoordinates out;
  out.labels = std::move(labels);
  out.coeffs = fit.coeffs;
  out.residual = fit.residual;
  return out;
}

}  // namespace cliffjac
