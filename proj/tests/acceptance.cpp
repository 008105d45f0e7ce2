// Acceptance suite: eight end-to-end criteria, each timed and reported on its
// own line.  Exit status 0 only when every criterion passes within its time
// budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cliffjac/catalog.hpp"
#include "cliffjac/model_io.hpp"
#include "cliffjac/osserman.hpp"

using namespace cliffjac;

namespace {

// --------------------------------------------------------------------------
// Small helpers
// --------------------------------------------------------------------------

using Clusters = std::vector<std::pair<double, int>>;

bool clusters_match(const Clusters& got, const Clusters& want, double tol) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i].second != want[i].second) return false;
    if (std::abs(got[i].first - want[i].first) > tol) return false;
  }
  return true;
}

std::string cluster_text(const Clusters& cl) {
  std::string out = "{";
  char buf[48];
  for (const auto& c : cl) {
    std::snprintf(buf, sizeof buf, "%s(%.6g,%d)", out.size() > 1 ? " " : "",
                  c.first, c.second);
    out += buf;
  }
  return out + "}";
}

void note(std::string& notes, const std::string& line) {
  notes += "      " + line + "\n";
}

// 2x2 rotation blocks, +E on the first half of the coordinates, -E after.
Matrix split_complex(std::size_t n) {
  Matrix j(n, n);
  for (std::size_t b = 0; b < n; b += 2) {
    const double s = b < n / 2 ? 1.0 : -1.0;
    j(b, b + 1) = -s;
    j(b + 1, b) = s;
  }
  return j;
}

Matrix top4(const Matrix& m) {
  Matrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = m(i, j);
  return out;
}

// blockdiag copies of a 4x4 block, negated from coordinate flip_from on.
Matrix half_signed(const Matrix& block4, std::size_t n, std::size_t flip_from) {
  Matrix out(n, n);
  for (std::size_t b = 0; b + 4 <= n; b += 4) {
    const double s = b >= flip_from ? -1.0 : 1.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out(b + i, b + j) = s * block4(i, j);
  }
  return out;
}

// Negate the leading k x k sub-block (used on 4-aligned block matrices).
Matrix flip_leading(const Matrix& m, std::size_t k) {
  Matrix out = m;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = -out(i, j);
  return out;
}

// Haar-random conjugate of the split complex structure.
Matrix random_complex(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix q = random_orthogonal(n, rng);
  Matrix e(n, n);
  for (std::size_t b = 0; b < n; b += 2) {
    e(b, b + 1) = -1.0;
    e(b + 1, b) = 1.0;
  }
  return q * e * q.transpose();
}

ComplexModel make_model(std::size_t n, double c0, const CliffordFamily& fam,
                        const std::vector<double>& cs, Matrix j) {
  ComplexModel model;
  model.spec.dim = n;
  model.spec.c0 = c0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    model.spec.terms.push_back({cs[i], fam.generators[i]});
  }
  model.J = std::move(j);
  model.provenance = ModelProvenance{fam, std::nullopt};
  return model;
}

// Passing complex-osserman reports accumulated for criterion 7.
std::vector<std::pair<VerificationReport, std::size_t>> g_co_reports;

// --------------------------------------------------------------------------
// Criterion 1: admissible family sizes
// --------------------------------------------------------------------------

bool criterion_nu(std::string& notes) {
  bool ok = true;
  const std::size_t dims[] = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  const std::size_t want[] = {0, 1, 3, 7, 8, 9, 11, 15, 16};
  for (std::size_t i = 0; i < 9; ++i) {
    if (adams_nu(dims[i]) != want[i]) {
      note(notes, "nu(" + std::to_string(dims[i]) + ") != " +
                      std::to_string(want[i]));
      ok = false;
    }
  }
  if (adams_nu(12) != 3) { note(notes, "nu(12) != 3"); ok = false; }
  if (adams_nu(24) != 7) { note(notes, "nu(24) != 7"); ok = false; }

  for (std::size_t n : {std::size_t{4}, std::size_t{8}, std::size_t{16}}) {
    const std::size_t k = adams_nu(n);
    try {
      const CliffordFamily fam = generate_family(n, k, 1);
      if (!verify_family(fam).pass) {
        note(notes, "family at the maximal size fails its relations, n=" +
                        std::to_string(n));
        ok = false;
      }
    } catch (const std::exception& e) {
      note(notes, "family at the maximal size refused, n=" + std::to_string(n) +
                      ": " + e.what());
      ok = false;
    }
    try {
      generate_family(n, k + 1, 1);
      note(notes, "family above the maximal size was not refused, n=" +
                      std::to_string(n));
      ok = false;
    } catch (const std::invalid_argument&) {
      // expected
    }
  }
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 2: showcase models at n = 8 and n = 12
// --------------------------------------------------------------------------

bool criterion_showcases(std::string& notes) {
  bool ok = true;
  const PlaneSampler sampler{2026, 64};
  const auto expected = [](const std::string& name, int n) -> Clusters {
    if (name == "showcase-a") return {{6.0, n}};
    if (name == "showcase-b") return {{2.0, n - 2}, {4.0, 2}};
    if (name == "showcase-c") return {{6.0, n - 4}, {12.0, 4}};
    return {{2.0, n - 4}, {4.0, 2}, {8.0, 2}};  // showcase-d
  };
  for (const char* name : {"showcase-a", "showcase-b", "showcase-c",
                           "showcase-d"}) {
    const CatalogEntry* entry = find_catalog_entry(name);
    if (entry == nullptr) {
      note(notes, std::string("missing catalog entry ") + name);
      ok = false;
      continue;
    }
    for (std::size_t n : {std::size_t{8}, std::size_t{12}}) {
      const ComplexModel model = entry->build(n, entry->default_coeffs, 0);
      const VerificationReport rep = check_complex_osserman(model, sampler);
      const Clusters want = expected(name, static_cast<int>(n));
      if (!rep.pass) {
        note(notes, std::string(name) + " n=" + std::to_string(n) +
                        " failed the spectral check");
        ok = false;
      } else if (!clusters_match(rep.reference_spectrum, want, 1e-8)) {
        note(notes, std::string(name) + " n=" + std::to_string(n) +
                        " spectrum " + cluster_text(rep.reference_spectrum) +
                        " != " + cluster_text(want));
        ok = false;
      } else {
        g_co_reports.push_back({rep, n});
      }
    }
  }
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 3: the model with vanishing complex Jacobi operator
// --------------------------------------------------------------------------

bool criterion_null_model(std::string& notes) {
  bool ok = true;
  const PlaneSampler sampler{2026, 64};
  for (std::size_t n : {std::size_t{8}, std::size_t{16}}) {
    const ComplexModel model = null_complex_jacobi_model(n);
    std::vector<Matrix> structures;
    for (const CurvatureTerm& t : model.spec.terms) structures.push_back(t.psi);
    const SampleSet set = unit_samples(n, sampler, model.probes, structures);
    double worst = 0.0;
    for (const Vector& x : set.samples) {
      worst = std::max(worst, complex_jacobi(model.spec, model.J, x).max_norm());
    }
    if (worst > 1e-10) {
      note(notes, "complex Jacobi operator does not vanish at n=" +
                      std::to_string(n));
      ok = false;
    }
    if (ricci(model.spec).max_norm() > 1e-10) {
      note(notes, "Ricci operator does not vanish at n=" + std::to_string(n));
      ok = false;
    }
    const VerificationReport oss =
        check_osserman(model.spec, sampler, 1e-8, model.probes);
    const int ni = static_cast<int>(n);
    if (oss.pass) {
      note(notes, "direction-spectrum check unexpectedly passed at n=" +
                      std::to_string(n));
      ok = false;
    } else {
      if (!clusters_match(oss.reference_spectrum,
                          {{-6.0, 1}, {0.0, ni - 2}, {6.0, 1}}, 1e-8)) {
        note(notes, "reference spectrum at n=" + std::to_string(n) + " is " +
                        cluster_text(oss.reference_spectrum));
        ok = false;
      }
      bool found = false;
      for (const Witness& w : oss.witnesses) {
        if (clusters_match(w.spectrum, {{-3.0, 2}, {0.0, ni - 4}, {3.0, 2}},
                           1e-8)) {
          found = true;
        }
      }
      if (!found) {
        note(notes, "no witness with the mixed-direction spectrum at n=" +
                        std::to_string(n));
        ok = false;
      }
    }
  }
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 4: classification corpus, closed form against sampling
// --------------------------------------------------------------------------

struct CorpusCase {
  std::string name;
  ComplexModel model;
  Status expect = Status::Abstain;
};

std::vector<CorpusCase> build_corpus() {
  std::vector<CorpusCase> cases;
  const double s = 1.0 / std::sqrt(2.0);
  const auto tag = [](const std::string& base, std::size_t n, double c0) {
    return base + " n=" + std::to_string(n) + " c0=" + std::to_string(int(c0));
  };
  const std::size_t all_n[] = {8, 12, 16};

  for (std::size_t n : all_n) {
    for (double c0 : {0.0, 1.0}) {
      // rank 0: every complex structure works
      {
        CliffordFamily trivial;
        trivial.dim = n;
        CliffordFamily aux = generate_family(n, 1, 5);
        cases.push_back({tag("rank0", n, c0),
                         make_model(n, c0, trivial, {}, aux.generators[0]),
                         Status::ComplexOsserman});
      }

      // rank 1
      {
        CliffordFamily fam = generate_family(n, 1, 7);
        cases.push_back({tag("rank1 J=J1", n, c0),
                         make_model(n, c0, fam, {1.0}, fam.generators[0]),
                         Status::ComplexOsserman});
        cases.push_back({tag("rank1 J=-J1", n, c0),
                         make_model(n, c0, fam, {1.0}, fam.generators[0] * -1.0),
                         Status::ComplexOsserman});
      }
      {
        // ambient anticommuting structure from a larger family
        CliffordFamily pair = generate_family(n, 2, 7);
        CliffordFamily fam;
        fam.dim = n;
        fam.generators = {pair.generators[0]};
        cases.push_back({tag("rank1 J anticommuting", n, c0),
                         make_model(n, c0, fam, {1.0}, pair.generators[1]),
                         Status::ComplexOsserman});
      }
      {
        // commuting split structure: admissible only without the
        // constant-curvature part
        CliffordFamily fam = generate_family(n, 1, 0, false);
        cases.push_back({tag("rank1 J split-commuting", n, c0),
                         make_model(n, c0, fam, {1.0}, split_complex(n)),
                         c0 == 0.0 ? Status::ComplexOsserman
                                   : Status::NotComplexOsserman});
      }

      // rank 2, structures in general position (conjugated family)
      {
        CliffordFamily fam = generate_family(n, 2, 3);
        const Matrix& g1 = fam.generators[0];
        const Matrix& g2 = fam.generators[1];
        cases.push_back({tag("rank2 J=J1J2 c=(1,2)", n, c0),
                         make_model(n, c0, fam, {1.0, 2.0}, g1 * g2),
                         Status::ComplexOsserman});
        cases.push_back({tag("rank2 J=(J1+J2)/sqrt2 c=(1,1)", n, c0),
                         make_model(n, c0, fam, {1.0, 1.0}, g1 * s + g2 * s),
                         Status::ComplexOsserman});
        cases.push_back({tag("rank2 J=(J1+J2)/sqrt2 c=(1,2)", n, c0),
                         make_model(n, c0, fam, {1.0, 2.0}, g1 * s + g2 * s),
                         Status::NotComplexOsserman});
        cases.push_back({tag("rank2 J=-J2 c=(1,2)", n, c0),
                         make_model(n, c0, fam, {1.0, 2.0}, g2 * -1.0),
                         Status::ComplexOsserman});
      }

      // rank 3, quaternion-type family (conjugated)
      {
        CliffordFamily fam = generate_family(n, 3, 11);
        const Matrix& g1 = fam.generators[0];
        const Matrix& g2 = fam.generators[1];
        cases.push_back({tag("rank3 J=J1 c=(1,2,3)", n, c0),
                         make_model(n, c0, fam, {1.0, 2.0, 3.0}, g1),
                         Status::ComplexOsserman});
        cases.push_back({tag("rank3 J=-J2 c=(1,2,3)", n, c0),
                         make_model(n, c0, fam, {1.0, 2.0, 3.0}, g2 * -1.0),
                         Status::ComplexOsserman});
        cases.push_back({tag("rank3 J=(J1+J2)/sqrt2 c=(1,1,3)", n, c0),
                         make_model(n, c0, fam, {1.0, 1.0, 3.0}, g1 * s + g2 * s),
                         Status::ComplexOsserman});
        cases.push_back({tag("rank3 J=(J1+J2)/sqrt2 c=(1,2,3)", n, c0),
                         make_model(n, c0, fam, {1.0, 2.0, 3.0}, g1 * s + g2 * s),
                         Status::NotComplexOsserman});
      }
    }

    // rank 2, canonical blocks: sign-split patterns (c0 = 0 branches)
    {
      CliffordFamily fam = generate_family(n, 2, 0, false);
      const Matrix li = top4(fam.generators[0]);
      const Matrix lj = top4(fam.generators[1]);
      const std::size_t flip = n == 12 ? 8 : n / 2;
      const Matrix jsplit = half_signed(li, n, flip);
      cases.push_back({tag("rank2 split-block c=(1,2)", n, 0.0),
                       make_model(n, 0.0, fam, {1.0, 2.0}, jsplit),
                       Status::ComplexOsserman});
      cases.push_back({tag("rank2 split-block c=(1,1)", n, 0.0),
                       make_model(n, 0.0, fam, {1.0, 1.0}, jsplit),
                       Status::ComplexOsserman});
      const double th = 0.6;
      const Matrix lu = li * std::cos(th) + lj * std::sin(th);
      const Matrix jrot = half_signed(lu, n, flip);
      cases.push_back({tag("rank2 rotated-split c=(1,1)", n, 0.0),
                       make_model(n, 0.0, fam, {1.0, 1.0}, jrot),
                       Status::ComplexOsserman});
      cases.push_back({tag("rank2 rotated-split c=(1,2)", n, 0.0),
                       make_model(n, 0.0, fam, {1.0, 2.0}, jrot),
                       Status::NotComplexOsserman});
      // with the constant-curvature part the split patterns are excluded
      // once the structure theory applies (n >= 12)
      if (n >= 12) {
        cases.push_back({tag("rank2 split-block c=(1,2)", n, 1.0),
                         make_model(n, 1.0, fam, {1.0, 2.0}, jsplit),
                         Status::NotComplexOsserman});
        cases.push_back({tag("rank2 rotated-split c=(1,1)", n, 1.0),
                         make_model(n, 1.0, fam, {1.0, 1.0}, jrot),
                         Status::NotComplexOsserman});
      }
    }

    // rank 3, block-signed family (not quaternion-type: the three-letter
    // product is +id on the flipped block and -id elsewhere)
    {
      CliffordFamily base = generate_family(n, 3, 0, false);
      CliffordFamily alt;
      alt.dim = n;
      alt.generators = {base.generators[0], base.generators[1],
                        flip_leading(base.generators[2], 4)};
      const CliffordFamily duals = dual_structure(alt);
      const Matrix jmix = duals.generators[0] * s + duals.generators[1] * s;
      cases.push_back({tag("rank3 mixed-dual c=(1,2,3)", n, 0.0),
                       make_model(n, 0.0, alt, {1.0, 2.0, 3.0}, jmix),
                       Status::NotComplexOsserman});
      if (n >= 12) {
        cases.push_back(
            {tag("rank3 block-signed J=J1 c=(1,2,3)", n, 0.0),
             make_model(n, 0.0, alt, {1.0, 2.0, 3.0}, alt.generators[0]),
             Status::NotComplexOsserman});
      }
      if (n >= 16) {
        cases.push_back(
            {tag("rank3 block-signed J=J1 c=(1,2,3)", n, 1.0),
             make_model(n, 1.0, alt, {1.0, 2.0, 3.0}, alt.generators[0]),
             Status::NotComplexOsserman});
        cases.push_back({tag("rank3 mixed-dual c=(1,2,3)", n, 1.0),
                         make_model(n, 1.0, alt, {1.0, 2.0, 3.0}, jmix),
                         Status::NotComplexOsserman});
      }
    }
  }
  return cases;
}

std::vector<CorpusCase> build_perturbations() {
  std::vector<CorpusCase> cases;
  const auto tag = [](const std::string& base, std::size_t n, double c0,
                      std::uint64_t seed) {
    return base + " n=" + std::to_string(n) + " c0=" + std::to_string(int(c0)) +
           " jseed=" + std::to_string(seed);
  };
  const std::size_t all_n[] = {8, 12, 16};

  // rank 0: a generic structure is always admissible (6 cases)
  for (std::size_t n : all_n) {
    for (double c0 : {0.0, 1.0}) {
      CliffordFamily trivial;
      trivial.dim = n;
      cases.push_back({tag("perturb rank0", n, c0, 40),
                       make_model(n, c0, trivial, {}, random_complex(n, 40)),
                       Status::ComplexOsserman});
    }
  }
  // rank 1: a generic structure never is (12 cases)
  for (std::size_t n : all_n) {
    for (double c0 : {0.0, 1.0}) {
      for (std::uint64_t seed : {41, 42}) {
        CliffordFamily fam = generate_family(n, 1, 7);
        cases.push_back({tag("perturb rank1", n, c0, seed),
                         make_model(n, c0, fam, {1.0}, random_complex(n, seed)),
                         Status::NotComplexOsserman});
      }
    }
  }
  // rank 2 (8 cases): without the constant part the classification is
  // dimension-free; with it the structure theory needs n >= 12
  for (std::size_t n : all_n) {
    for (std::uint64_t seed : {51, 52}) {
      CliffordFamily fam = generate_family(n, 2, 3);
      cases.push_back({tag("perturb rank2", n, 0.0, seed),
                       make_model(n, 0.0, fam, {1.0, 2.0},
                                  random_complex(n, seed)),
                       Status::NotComplexOsserman});
    }
  }
  for (std::size_t n : {std::size_t{12}, std::size_t{16}}) {
    CliffordFamily fam = generate_family(n, 2, 3);
    cases.push_back({tag("perturb rank2", n, 1.0, 53),
                     make_model(n, 1.0, fam, {1.0, 2.0}, random_complex(n, 53)),
                     Status::NotComplexOsserman});
  }
  // rank 3 (4 cases): n >= 12 without the constant part, n >= 16 with it
  for (std::size_t n : {std::size_t{12}, std::size_t{16}}) {
    CliffordFamily fam = generate_family(n, 3, 11);
    cases.push_back({tag("perturb rank3", n, 0.0, 61),
                     make_model(n, 0.0, fam, {1.0, 2.0, 3.0},
                                random_complex(n, 61)),
                     Status::NotComplexOsserman});
  }
  {
    CliffordFamily fam = generate_family(12, 3, 11);
    cases.push_back({tag("perturb rank3", 12, 0.0, 62),
                     make_model(12, 0.0, fam, {1.0, 2.0, 3.0},
                                random_complex(12, 62)),
                     Status::NotComplexOsserman});
  }
  {
    CliffordFamily fam = generate_family(16, 3, 11);
    cases.push_back({tag("perturb rank3", 16, 1.0, 63),
                     make_model(16, 1.0, fam, {1.0, 2.0, 3.0},
                                random_complex(16, 63)),
                     Status::NotComplexOsserman});
  }
  return cases;
}

bool criterion_classification(std::string& notes) {
  bool ok = true;
  const PlaneSampler sampler{777, 24};
  std::vector<CorpusCase> cases = build_corpus();
  const std::vector<CorpusCase> perturb = build_perturbations();
  if (perturb.size() != 30) {
    note(notes, "expected 30 perturbation cases, built " +
                    std::to_string(perturb.size()));
    ok = false;
  }
  cases.insert(cases.end(), perturb.begin(), perturb.end());

  std::size_t agreed = 0;
  for (const CorpusCase& c : cases) {
    ClassifierVerdict v;
    try {
      v = classify_clifford_model(c.model);
    } catch (const std::exception& e) {
      note(notes, c.name + ": classifier threw: " + e.what());
      ok = false;
      continue;
    }
    if (v.status != c.expect) {
      note(notes, c.name + ": classifier verdict " +
                      std::string(status_name(v.status)) + ", expected " +
                      status_name(c.expect) + " [" + v.case_label + "]");
      ok = false;
      continue;
    }
    const VerificationReport rep = check_complex_osserman(c.model, sampler);
    if (rep.pass != (c.expect == Status::ComplexOsserman)) {
      note(notes, c.name + ": sampling check " +
                      (rep.pass ? "passed" : "failed") +
                      " against the closed-form verdict");
      ok = false;
      continue;
    }
    if (rep.pass) g_co_reports.push_back({rep, c.model.spec.dim});
    ++agreed;
  }
  note(notes, std::to_string(agreed) + "/" + std::to_string(cases.size()) +
                  " cases agreed");
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 5: falsification probes at rank 4 and 5, n = 32
// --------------------------------------------------------------------------

bool criterion_high_rank(std::string& notes) {
  bool ok = true;
  const PlaneSampler sampler{2026, 16};
  const std::size_t n = 32;

  for (double c0 : {0.0, 1.0}) {
    // rank 4: two eigenvector probes
    {
      const ComplexModel model = rank_k_generic(n, 4, JChoice::J1J2, c0);
      if (model.probes.size() != 2) {
        note(notes, "rank4: expected 2 probes");
        ok = false;
      }
      const VerificationReport rep = check_complex_osserman(model, sampler);
      const Clusters ref = c0 == 0.0
                               ? Clusters{{0.0, 26}, {9.0, 2}, {12.0, 2}, {24.0, 2}}
                               : Clusters{{2.0, 26}, {11.0, 2}, {13.0, 2}, {26.0, 2}};
      const Clusters wit = c0 == 0.0
                               ? Clusters{{0.0, 28}, {9.0, 2}, {36.0, 2}}
                               : Clusters{{1.0, 2}, {2.0, 26}, {11.0, 2}, {38.0, 2}};
      if (rep.pass) {
        note(notes, "rank4 c0=" + std::to_string(int(c0)) +
                        ": check unexpectedly passed");
        ok = false;
      } else {
        if (!clusters_match(rep.reference_spectrum, ref, 1e-8)) {
          note(notes, "rank4 c0=" + std::to_string(int(c0)) + " reference " +
                          cluster_text(rep.reference_spectrum) + " != " +
                          cluster_text(ref));
          ok = false;
        }
        bool found = false;
        for (const Witness& w : rep.witnesses) {
          if (clusters_match(w.spectrum, wit, 1e-8)) found = true;
        }
        if (!found) {
          note(notes, "rank4 c0=" + std::to_string(int(c0)) +
                          ": second probe spectrum missing from witnesses");
          ok = false;
        }
      }
    }
    // rank 5: the zero-word-mean probe
    {
      const ComplexModel model = rank_k_generic(n, 5, JChoice::J1J2, c0);
      if (model.probes.size() != 1) {
        note(notes, "rank5: expected 1 probe");
        ok = false;
        continue;
      }
      const VerificationReport rep = check_complex_osserman(model, sampler);
      const Clusters ref =
          c0 == 0.0
              ? Clusters{{0.0, 24}, {9.0, 2}, {12.0, 2}, {24.0, 2}, {48.0, 2}}
              : Clusters{{1.0, 2}, {2.0, 22}, {11.0, 2}, {14.0, 2}, {26.0, 2},
                         {50.0, 2}};
      if (rep.pass) {
        note(notes, "rank5 c0=" + std::to_string(int(c0)) +
                        ": check unexpectedly passed");
        ok = false;
      } else if (!clusters_match(rep.reference_spectrum, ref, 1e-8)) {
        note(notes, "rank5 c0=" + std::to_string(int(c0)) + " reference " +
                        cluster_text(rep.reference_spectrum) + " != " +
                        cluster_text(ref));
        ok = false;
      }
    }
  }
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 6: curvature identities
// --------------------------------------------------------------------------

bool criterion_identities(std::string& notes) {
  bool ok = true;
  Rng rng(99);

  // 50 random admissible models, dimensions <= 8
  std::vector<CurvatureSpec> specs;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = (i % 3 == 0) ? 4 : (i % 3 == 1) ? 6 : 8;
    const std::size_t kmax = adams_nu(n);
    const std::size_t k = 1 + rng.raw() % kmax;
    const CliffordFamily fam = generate_family(n, k, 100 + i);
    CurvatureSpec spec;
    spec.dim = n;
    spec.c0 = rng.uniform() * 2.0 - 1.0;
    for (std::size_t t = 0; t < k; ++t) {
      const double mag = 0.5 + 2.0 * rng.uniform();
      spec.terms.push_back(
          {rng.uniform() < 0.5 ? -mag : mag, fam.generators[t]});
    }
    specs.push_back(std::move(spec));
  }
  for (const CurvatureSpec& spec : specs) {
    const VerificationReport rep = check_symmetries(spec);
    if (!rep.pass) {
      note(notes, "symmetry identities fail on a random model, deviation " +
                      std::to_string(rep.max_deviation));
      ok = false;
      break;
    }
  }

  // <J(x)y, y> = R(y, x, x, y), one thousand draws
  double worst_pair = 0.0;
  for (const CurvatureSpec& spec : specs) {
    for (int t = 0; t < 20; ++t) {
      const Vector x = random_unit(spec.dim, rng);
      const Vector y = random_unit(spec.dim, rng);
      const double lhs = dot(y, jacobi(spec, x).apply(y));
      const double rhs = eval_R(spec, y, x, x, y);
      worst_pair = std::max(worst_pair, std::abs(lhs - rhs));
    }
  }
  if (worst_pair > 1e-10) {
    note(notes, "quadratic-form identity deviates by " +
                    std::to_string(worst_pair));
    ok = false;
  }

  // rotating the family leaves the summed tensor invariant
  double worst_reparam = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t k = (i % 2 == 0) ? 2 : 3;
    const CliffordFamily fam = generate_family(8, k, 200 + i);
    const Matrix a = random_orthogonal(k, rng);
    const CliffordFamily famA = reparametrize(fam, a);
    CurvatureSpec sp1, sp2;
    sp1.dim = sp2.dim = 8;
    sp1.c0 = sp2.c0 = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      sp1.terms.push_back({1.0, fam.generators[t]});
      sp2.terms.push_back({1.0, famA.generators[t]});
    }
    const DenseCurvature d1 = materialize(sp1);
    const DenseCurvature d2 = materialize(sp2);
    for (std::size_t p = 0; p < 8; ++p)
      for (std::size_t q = 0; q < 8; ++q)
        for (std::size_t r = 0; r < 8; ++r)
          for (std::size_t t = 0; t < 8; ++t)
            worst_reparam = std::max(
                worst_reparam, std::abs(d1.at(p, q, r, t) - d2.at(p, q, r, t)));
  }
  if (worst_reparam > 1e-10) {
    note(notes, "family rotation changes the summed tensor by " +
                    std::to_string(worst_reparam));
    ok = false;
  }

  // the plane operator only sees the plane: x -> cos(t) x + sin(t) Jx
  double worst_rot = 0.0;
  {
    std::vector<ComplexModel> models;
    models.push_back(quaternionic_model(8, 1.0, 1.0, 2.0, 3.0, 5));
    models.push_back(rank_k_generic(8, 2, JChoice::J1J2, 1.0, {1.0, 2.0}, 3));
    CliffordFamily fam = generate_family(8, 1, 7);
    models.push_back(
        make_model(8, 0.5, fam, {1.5}, random_complex(8, 77)));  // generic J
    for (const ComplexModel& m : models) {
      for (int t = 0; t < 34; ++t) {
        const Vector x = random_unit(8, rng);
        const double th = rng.uniform() * 6.283185307179586;
        Vector xr = x;
        for (auto& v : xr) v *= std::cos(th);
        add_scaled(xr, std::sin(th), m.J.apply(x));
        const Matrix k1 = complex_jacobi(m.spec, m.J, x);
        const Matrix k2 = complex_jacobi(m.spec, m.J, xr);
        worst_rot = std::max(worst_rot, (k1 - k2).max_norm());
      }
    }
  }
  if (worst_rot > 1e-10) {
    note(notes, "plane operator is not rotation invariant, deviation " +
                    std::to_string(worst_rot));
    ok = false;
  }

  // trace identity: tr J(pi_x) = ric(x,x) + ric(Jx,Jx), and twice the
  // diagonal value on a compatible model
  double worst_trace = 0.0;
  {
    CliffordFamily fam = generate_family(8, 2, 9);
    const ComplexModel generic =
        make_model(8, 0.7, fam, {1.0, -2.0}, random_complex(8, 88));
    const Matrix ric = ricci(generic.spec);
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_unit(8, rng);
      const Vector jx = generic.J.apply(x);
      const double lhs = complex_jacobi(generic.spec, generic.J, x).trace();
      const double rhs = dot(x, ric.apply(x)) + dot(jx, ric.apply(jx));
      worst_trace = std::max(worst_trace, std::abs(lhs - rhs));
    }
    const ComplexModel compat = complex_space_form(8, 1.0, 1.0, 2);
    const Matrix ric2 = ricci(compat.spec);
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_unit(8, rng);
      const double lhs = complex_jacobi(compat.spec, compat.J, x).trace();
      worst_trace =
          std::max(worst_trace, std::abs(lhs - 2.0 * dot(x, ric2.apply(x))));
    }
  }
  if (worst_trace > 1e-9) {
    note(notes, "trace identity deviates by " + std::to_string(worst_trace));
    ok = false;
  }
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 7: eigenvalue multiplicities of every passing report
// --------------------------------------------------------------------------

bool criterion_multiplicities(std::string& notes) {
  if (g_co_reports.empty()) {
    note(notes, "no passing reports were collected");
    return false;
  }
  bool ok = true;
  std::size_t violations = 0;
  for (const auto& [rep, n] : g_co_reports) {
    const MultiplicityCase mc = classify_multiplicities(rep, n);
    if (mc.label == "VIOLATION" || !mc.allowed) {
      ++violations;
      ok = false;
    }
  }
  note(notes, std::to_string(g_co_reports.size()) +
                  " passing reports checked, " + std::to_string(violations) +
                  " violations");
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 8: deterministic command-line artifacts
// --------------------------------------------------------------------------

#ifdef CLIFFJAC_CLI_PATH
int run_cli(const std::string& args, const std::string& capture) {
  const std::string cmd =
      "\"" CLIFFJAC_CLI_PATH "\" " + args + " > " + capture + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_cli_determinism(std::string& notes) {
  bool ok = true;
  const std::string dir = "acceptance_cli";
  std::filesystem::create_directories(dir);
  const auto path = [&dir](const char* f) { return dir + "/" + f; };

  for (int round = 1; round <= 2; ++round) {
    const std::string m = path(round == 1 ? "m1.json" : "m2.json");
    if (run_cli("catalog showcase-c --out " + m, path("m.log")) != 0) {
      note(notes, "model construction failed");
      return false;
    }
  }
  if (read_file(path("m1.json")) != read_file(path("m2.json"))) {
    note(notes, "model files differ between identical invocations");
    ok = false;
  }
  for (int round = 1; round <= 2; ++round) {
    const std::string r = path(round == 1 ? "r1.json" : "r2.json");
    if (run_cli("verify --model " + path("m1.json") +
                    " --check complex-osserman --samples 32 --out " + r,
                path("r.log")) != 0) {
      note(notes, "verification run failed");
      return false;
    }
  }
  if (read_file(path("r1.json")) != read_file(path("r2.json"))) {
    note(notes, "report files differ between identical invocations");
    ok = false;
  }
  for (int round = 1; round <= 2; ++round) {
    const std::string v = path(round == 1 ? "v1.json" : "v2.json");
    if (run_cli("classify --model " + path("m1.json") + " --out " + v,
                path("v.log")) != 0) {
      note(notes, "classification run failed");
      return false;
    }
  }
  if (read_file(path("v1.json")) != read_file(path("v2.json"))) {
    note(notes, "verdict files differ between identical invocations");
    ok = false;
  }
  return ok;
}
#else
bool criterion_cli_determinism(std::string& notes) {
  note(notes, "command-line binary path not configured");
  return false;
}
#endif

}  // namespace

int main() {
  struct Entry {
    const char* what;
    double limit;  // seconds; <= 0 means no limit
    bool (*fn)(std::string&);
  };
  const Entry entries[] = {
      {"admissible family sizes and obstructions", 1.0, criterion_nu},
      {"showcase spectra at n=8 and n=12", 5.0, criterion_showcases},
      {"vanishing complex Jacobi operator model", 5.0, criterion_null_model},
      {"closed-form classification vs sampling (131 models)", 60.0,
       criterion_classification},
      {"rank 4 and 5 falsification probes at n=32", 30.0, criterion_high_rank},
      {"curvature identity suite", 60.0, criterion_identities},
      {"multiplicity taxonomy of all passing reports", 0.0,
       criterion_multiplicities},
      {"byte-identical command-line artifacts", 0.0, criterion_cli_determinism},
  };

  bool all_ok = true;
  int k = 0;
  for (const Entry& e : entries) {
    ++k;
    std::string notes;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = e.fn(notes);
    } catch (const std::exception& ex) {
      note(notes, std::string("unhandled exception: ") + ex.what());
      ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (e.limit > 0.0 && secs > e.limit) {
      note(notes, "time limit exceeded (" + std::to_string(e.limit) + "s)");
      ok = false;
    }
    std::printf("[%d] %s %s (%.2fs)\n", k, ok ? "PASS" : "FAIL", e.what, secs);
    if (!ok && !notes.empty()) std::fputs(notes.c_str(), stdout);
    all_ok = all_ok && ok;
  }
  std::printf("%s\n", all_ok ? "ACCEPTANCE: ALL CRITERIA PASS"
                             : "ACCEPTANCE: FAILURES PRESENT");
  return all_ok ? 0 : 1;
}
