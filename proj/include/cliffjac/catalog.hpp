#pragma once

// Named model constructors and the registry behind the CLI's `catalog`
// subcommand.  Every constructor returns a fully validated ComplexModel,
// carrying its generating family (when the terms form one) and any
// falsification probes the model is meant to be examined with.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffjac/clifford.hpp"
#include "cliffjac/curvature.hpp"
#include "cliffjac/osserman.hpp"

namespace cliffjac {

// Constant curvature: no structure terms.  J is taken from a generated
// rank-1 family so the model still carries a complex structure to verify
// against; every choice works.
inline ComplexModel constant_curvature(std::size_t n, double c0,
                                       std::uint64_t seed = 0) {
  CliffordFamily fam = generate_family(n, 1, seed);
  ComplexModel model;
  model.spec.dim = n;
  model.spec.c0 = c0;
  model.J = fam.generators[0];
  model.provenance = ModelProvenance{std::move(fam), std::nullopt};
  validate_model(model);
  return model;
}

// One structure term with J equal to the structure.
inline ComplexModel complex_space_form(std::size_t n, double c0, double c1,
                                       std::uint64_t seed = 0) {
  CliffordFamily fam = generate_family(n, 1, seed);
  ComplexModel model;
  model.spec.dim = n;
  model.spec.c0 = c0;
  model.spec.terms = {{c1, fam.generators[0]}};
  model.J = fam.generators[0];
  model.provenance = ModelProvenance{std::move(fam), std::nullopt};
  validate_model(model);
  return model;
}

// Three anticommuting structure terms (a quaternion triple) with J = J1.
inline ComplexModel quaternionic_model(std::size_t n, double c0, double c1,
                                       double c2, double c3,
                                       std::uint64_t seed = 0) {
  if (n % 4 != 0) {
    throw std::invalid_argument(
        "quaternionic_model: dimension must be a multiple of 4");
  }
  CliffordFamily fam = generate_family(n, 3, seed);
  ComplexModel model;
  model.spec.dim = n;
  model.spec.c0 = c0;
  model.spec.terms = {{c1, fam.generators[0]},
                      {c2, fam.generators[1]},
                      {c3, fam.generators[2]}};
  model.J = fam.generators[0];
  model.provenance = ModelProvenance{std::move(fam), std::nullopt};
  validate_model(model);
  return model;
}

// A model whose complex Jacobi operator vanishes identically although the
// ordinary Jacobi operator does not: four structure terms built from a
// quaternion triple, the third with a sign split between the first block of
// coordinates and the rest.  The terms do NOT pairwise anticommute, so no
// generating family is attached.  Ships with the three probe directions
// that exhibit the non-constant ordinary spectrum.
inline ComplexModel null_complex_jacobi_model(std::size_t n) {
  if (n % 4 != 0 || n < 8) {
    throw std::invalid_argument(
        "null_complex_jacobi_model: dimension must be a multiple of 4, >= 8");
  }
  // Canonical (unconjugated) quaternion blocks keep the split aligned with
  // the coordinate axes, so the probes are plain basis vectors.
  CliffordFamily quat = generate_family(n, 3, 0, false);
  const Matrix& K1 = quat.generators[0];
  const Matrix& K2 = quat.generators[1];
  const Matrix K12 = K1 * K2;
  std::size_t split = 4 * ((n / 4) / 2);
  if (split == 0) split = 4;
  Matrix J3(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = i < split ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) J3(i, j) = sign * K12(i, j);
  }
  ComplexModel model;
  model.spec.dim = n;
  model.spec.c0 = 0.0;
  model.spec.terms = {{1.0, K2}, {-1.0, K12}, {-1.0, J3}, {1.0, K1 * J3}};
  model.J = K1;
  model.probes = {basis_vector(n, 0), basis_vector(n, split)};
  {
    Vector mix(n, 0.0);
    mix[0] = 0.70710678118654752440;
    mix[split] = 0.70710678118654752440;
    model.probes.push_back(mix);
  }
  validate_model(model);
  return model;
}

enum class JChoice { J1, J1J2, Custom };

// Generic rank-kappa Clifford model.  coeffs holds (c_1 .. c_kappa); when
// empty, powers of two keep every derived eigenvalue cluster distinct.
// For ranks 4 and 5 the falsification probes for J = J1J2 are attached:
// eigenvectors of the 3- and 4-letter products (rank 4), and the
// zero-word-mean direction found by projection (rank 5).
inline ComplexModel rank_k_generic(std::size_t n, std::size_t kappa,
                                   JChoice choice, double c0,
                                   std::vector<double> coeffs = {},
                                   std::uint64_t seed = 0,
                                   const Matrix* custom_j = nullptr) {
  if (kappa == 0) {
    throw std::invalid_argument("rank_k_generic: need at least one structure");
  }
  if (coeffs.empty()) {
    double c = 1.0;
    for (std::size_t i = 0; i < kappa; ++i, c *= 2.0) coeffs.push_back(c);
  }
  if (coeffs.size() != kappa) {
    throw std::invalid_argument(
        "rank_k_generic: coefficient count does not match the rank");
  }
  CliffordFamily fam = generate_family(n, kappa, seed);
  ComplexModel model;
  model.spec.dim = n;
  model.spec.c0 = c0;
  for (std::size_t i = 0; i < kappa; ++i) {
    model.spec.terms.push_back({coeffs[i], fam.generators[i]});
  }
  switch (choice) {
    case JChoice::J1:
      model.J = fam.generators[0];
      break;
    case JChoice::J1J2:
      if (kappa < 2) {
        throw std::invalid_argument("rank_k_generic: J1J2 needs rank >= 2");
      }
      model.J = fam.generators[0] * fam.generators[1];
      break;
    case JChoice::Custom:
      if (custom_j == nullptr) {
        throw std::invalid_argument("rank_k_generic: custom J not provided");
      }
      model.J = *custom_j;
      break;
  }
  if (kappa == 4) {
    const Matrix triple =
        fam.generators[0] * fam.generators[1] * fam.generators[2];
    const Matrix quad = triple * fam.generators[3];
    model.probes.push_back(symmetric_eigen(triple).eigenvectors.col(0));
    model.probes.push_back(symmetric_eigen(quad).eigenvectors.col(0));
  } else if (kappa >= 5) {
    std::vector<Matrix> conds;
    const std::vector<std::vector<std::size_t>> cond_idx = {
        {1, 2, 3, 4}, {0, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 4}, {0, 1, 2, 3},
        {0, 1, 2},    {0, 1, 3},    {0, 1, 4}};
    for (const auto& idx : cond_idx) {
      conds.push_back(detail::word_product(fam.generators, idx));
    }
    if (auto probe = detail::word_null_probe(conds, n, seed)) {
      model.probes.push_back(*probe);
    }
  }
  model.provenance = ModelProvenance{std::move(fam), std::nullopt};
  validate_model(model);
  return model;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::size_t default_dim = 8;
  std::vector<double> default_coeffs;  // leading constant-curvature c0
  // build(dim, coeffs-with-leading-c0, seed)
  std::function<ComplexModel(std::size_t, const std::vector<double>&,
                             std::uint64_t)>
      build;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    auto need = [](const std::vector<double>& c, std::size_t k,
                   const char* name) {
      if (c.size() != k) {
        throw std::invalid_argument(std::string(name) + ": expected " +
                                    std::to_string(k) + " coefficients");
      }
    };
    out.push_back(
        {"constant-curvature",
         "no structure terms; complex spectrum {(c0,2),(2c0,n-2)} for every "
         "complex structure",
         8,
         {1.0},
         [need](std::size_t n, const std::vector<double>& c, std::uint64_t s) {
           need(c, 1, "constant-curvature");
           return constant_curvature(n, c[0], s);
         }});
    out.push_back(
        {"complex-space-form",
         "one structure term with J equal to it; complex spectrum "
         "{(c0+3c1,2),(2c0,n-2)}",
         8,
         {1.0, 1.0},
         [need](std::size_t n, const std::vector<double>& c, std::uint64_t s) {
           need(c, 2, "complex-space-form");
           return complex_space_form(n, c[0], c[1], s);
         }});
    out.push_back(
        {"quaternionic",
         "quaternion triple with J = J1; complex spectrum "
         "{(c0+3c1,2),(2c0+3c2+3c3,2),(2c0,n-4)}",
         8,
         {1.0, 1.0, 1.0, 1.0},
         [need](std::size_t n, const std::vector<double>& c, std::uint64_t s) {
           need(c, 4, "quaternionic");
           return quaternionic_model(n, c[0], c[1], c[2], c[3], s);
         }});
    out.push_back(
        {"showcase-a",
         "complex space form with c0 = 3, c1 = 1: single eigenvalue 6",
         8,
         {3.0, 1.0},
         [need](std::size_t n, const std::vector<double>& c, std::uint64_t s) {
           need(c, 2, "showcase-a");
           return complex_space_form(n, c[0], c[1], s);
         }});
    out.push_back(
        {"showcase-b",
         "complex space form with c0 = 1, c1 = 1: spectrum {(2,n-2),(4,2)}",
         8,
         {1.0, 1.0},
         [need](std::size_t n, const std::vector<double>& c, std::uint64_t s) {
           need(c, 2, "showcase-b");
           return complex_space_form(n, c[0], c[1], s);
         }});
    out.push_back(
        {"showcase-c",
         "quaternion model with c = (3,3,1,1): spectrum {(6,n-4),(12,4)}",
         8,
         {3.0, 3.0, 1.0, 1.0},
         [need](std::size_t n, const std::vector<double>& c, std::uint64_t s) {
           need(c, 4, "showcase-c");
           return quaternionic_model(n, c[0], c[1], c[2], c[3], s);
         }});
    out.push_back(
        {"showcase-d",
         "quaternion model with c = (1,1,1,1): spectrum {(2,n-4),(4,2),(8,2)}",
         8,
         {1.0, 1.0, 1.0, 1.0},
         [need](std::size_t n, const std::vector<double>& c, std::uint64_t s) {
           need(c, 4, "showcase-d");
           return quaternionic_model(n, c[0], c[1], c[2], c[3], s);
         }});
    out.push_back(
        {"null-complex-jacobi",
         "complex Jacobi operator vanishes identically, ordinary Jacobi "
         "spectrum direction-dependent; Ricci-flat; ships its probes",
         8,
         {},
         [](std::size_t n, const std::vector<double>& c, std::uint64_t) {
           if (!c.empty()) {
             throw std::invalid_argument(
                 "null-complex-jacobi: takes no coefficients");
           }
           return null_complex_jacobi_model(n);
         }});
    return out;
  }();
  return entries;
}

inline const CatalogEntry* find_catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace cliffjac
