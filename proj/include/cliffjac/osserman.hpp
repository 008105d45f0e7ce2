#pragma once

// Verification engines and classifiers for spectral constancy conditions:
//
//   * check_osserman        — Jacobi spectrum constant over directions
//   * check_p_osserman      — higher-signature Jacobi spectrum constant over p-frames
//   * check_complex_osserman— complex Jacobi spectrum constant over complex lines,
//                             with J-invariant eigenspaces
//   * check_compatibility   — the three equivalent J/R compatibility conditions,
//                             each as its own channel
//   * check_einstein        — Ricci operator proportional to the identity
//   * check_symmetries      — the three curvature identities on the dense table
//   * classify_multiplicities — eigenvalue-multiplicity taxonomy for passing
//                             complex-Osserman reports
//   * classify_clifford_model — closed-form complex-Osserman classification for
//                             Clifford models of rank <= 3, with an explicit
//                             reparametrization certificate when one exists
//
// Verdict semantics: a FAIL is definitive (a concrete witness is attached);
// a PASS certifies constancy over the reported sample census only.

#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cliffjac/clifford.hpp"
#include "cliffjac/curvature.hpp"
#include "cliffjac/linalg.hpp"

namespace cliffjac {

// ---------------------------------------------------------------------------
// Model with a complex structure
// ---------------------------------------------------------------------------

struct ModelProvenance {
  CliffordFamily family;            // generators behind spec.terms, same order
  std::optional<Matrix> reparam;    // optional record of a reparametrization
};

struct ComplexModel {
  CurvatureSpec spec;
  Matrix J;                         // orthogonal, J^2 = -id
  std::optional<ModelProvenance> provenance;
  std::vector<Vector> probes;       // unit directions always sampled first
};

inline void validate_model(const ComplexModel& model, double tol = 1e-10) {
  require_valid_spec(model.spec, tol);
  const std::size_t n = model.spec.dim;
  if (n % 2 != 0) {
    throw std::invalid_argument("validate_model: dimension must be even");
  }
  if (model.J.rows() != n || model.J.cols() != n) {
    throw std::invalid_argument("validate_model: structure shape mismatch");
  }
  const Matrix id = Matrix::identity(n);
  if ((model.J.transpose() * model.J - id).max_norm() > tol) {
    throw std::invalid_argument("validate_model: structure is not orthogonal");
  }
  if ((model.J * model.J + id).max_norm() > tol) {
    throw std::invalid_argument("validate_model: structure squared is not -id");
  }
  for (const Vector& p : model.probes) {
    if (p.size() != n) {
      throw std::invalid_argument("validate_model: probe dimension mismatch");
    }
  }
  if (model.provenance) {
    const CliffordFamily& fam = model.provenance->family;
    if (fam.dim != n) {
      throw std::invalid_argument("validate_model: provenance dimension mismatch");
    }
    for (const Matrix& g : fam.generators) {
      if (g.rows() != n || g.cols() != n) {
        throw std::invalid_argument("validate_model: provenance generator shape");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct PlaneSampler {
  std::uint64_t seed = 0;
  std::size_t count = 64;  // random samples on top of the structured probes
};

struct SampleCensus {
  std::size_t extra = 0;   // caller-provided probes
  std::size_t basis = 0;   // standard basis vectors / basis frames
  std::size_t pairs = 0;   // (e_i + e_j)/sqrt(2)
  std::size_t family = 0;  // word-eigenvector and word-null probes
  std::size_t random = 0;  // seeded random draws

  std::size_t total() const { return extra + basis + pairs + family + random; }
};

namespace detail {

inline unsigned thread_budget() {
  if (const char* env = std::getenv("CLIFFJAC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 1) return static_cast<unsigned>(v > 64 ? 64 : v);
  }
  return 1;
}

// Runs fn(0..count-1), possibly across threads (CLIFFJAC_THREADS). fn must
// write only into its own index slot; results are reduced serially by index
// afterwards, so parallel and serial runs produce identical reports.
template <class Fn>
inline void for_each_index(std::size_t count, Fn&& fn) {
  const unsigned budget = thread_budget();
  if (budget <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned threads =
      static_cast<unsigned>(count < budget ? count : budget);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&next, count, &fn]() {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

// Product of the chosen structure matrices, in index order.
inline Matrix word_product(const std::vector<Matrix>& structures,
                           const std::vector<std::size_t>& idx) {
  Matrix w = structures[idx[0]];
  for (std::size_t k = 1; k < idx.size(); ++k) w = w * structures[idx[k]];
  return w;
}

// Seeded Gauss-Newton search for a unit x with <x, W_k x> = 0 for every
// symmetric W_k. Deterministic; returns nothing when no restart converges.
inline std::optional<Vector> word_null_probe(const std::vector<Matrix>& words,
                                             std::size_t dim,
                                             std::uint64_t seed) {
  if (words.empty()) return std::nullopt;
  const std::size_t m = words.size();
  for (int attempt = 0; attempt < 4; ++attempt) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(attempt)));
    Vector x = random_unit(dim, rng);
    double worst = 1.0;
    for (int iter = 0; iter < 50; ++iter) {
      std::vector<Vector> grads(m);
      Vector g(m, 0.0);
      worst = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        grads[k] = words[k].apply(x);
        g[k] = dot(x, grads[k]);
        for (double& v : grads[k]) v *= 2.0;
        worst = std::max(worst, std::abs(g[k]));
      }
      if (worst <= 1e-12) break;
      Matrix gram(m, m);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
          const double v = dot(grads[a], grads[b]);
          gram(a, b) = v;
          gram(b, a) = v;
        }
      }
      const SymSpectrum eig = symmetric_eigen(gram);
      double lam_max = 0.0;
      for (double lam : eig.eigenvalues) lam_max = std::max(lam_max, std::abs(lam));
      const double cutoff = 1e-12 * std::max(lam_max, 1e-300);
      Vector y(m, 0.0);
      for (std::size_t k = 0; k < m; ++k) {
        const double lam = eig.eigenvalues[k];
        if (std::abs(lam) <= cutoff) continue;
        const Vector u = eig.eigenvectors.col(k);
        add_scaled(y, -dot(u, g) / lam, u);
      }
      for (std::size_t k = 0; k < m; ++k) add_scaled(x, y[k], grads[k]);
      x = normalized(x);
    }
    double final_worst = 0.0;
    for (const Matrix& w : words) {
      final_worst = std::max(final_worst, std::abs(dot(x, w.apply(x))));
    }
    if (final_worst <= 1e-9) return x;
  }
  return std::nullopt;
}

}  // namespace detail

struct SampleSet {
  std::vector<Vector> samples;
  SampleCensus census;
};

// Deterministic unit-direction samples: caller probes, the standard basis,
// all normalized basis pairs, structure-adapted probes (eigenvectors of
// symmetric triple/quadruple products of the first few structures, plus a
// word-null probe for five or more structures), then seeded random draws.
inline SampleSet unit_samples(std::size_t dim, const PlaneSampler& sampler,
                              const std::vector<Vector>& extra = {},
                              const std::vector<Matrix>& structures = {}) {
  SampleSet out;
  for (const Vector& p : extra) {
    out.samples.push_back(normalized(p));
    ++out.census.extra;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    out.samples.push_back(basis_vector(dim, i));
    ++out.census.basis;
  }
  const double inv_sqrt2 = 0.70710678118654752440;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      Vector v(dim, 0.0);
      v[i] = inv_sqrt2;
      v[j] = inv_sqrt2;
      out.samples.push_back(std::move(v));
      ++out.census.pairs;
    }
  }

  const std::size_t m = structures.size() < 5 ? structures.size() : 5;
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        subsets.push_back({a, b, c});
        for (std::size_t d = c + 1; d < m; ++d) subsets.push_back({a, b, c, d});
      }
    }
  }
  for (const auto& idx : subsets) {
    const Matrix w = detail::word_product(structures, idx);
    if (w.sym_residual() > 1e-8 * std::max(1.0, w.max_norm())) continue;
    const SymSpectrum eig = symmetric_eigen(w, 1e-8);
    const Vector lo = eig.eigenvectors.col(0);
    const Vector hi = eig.eigenvectors.col(dim - 1);
    Vector mix(dim);
    for (std::size_t i = 0; i < dim; ++i) mix[i] = (lo[i] + hi[i]) * inv_sqrt2;
    out.samples.push_back(lo);
    out.samples.push_back(hi);
    out.samples.push_back(normalized(mix));
    out.census.family += 3;
  }
  if (m >= 5) {
    // Null-mean probe for the words used by the rank-5 falsification spectra:
    // the five 4-subset products and the three triples through the first two
    // structures.  All must be symmetric for the probe to be meaningful.
    std::vector<Matrix> conditions;
    bool usable = true;
    std::vector<std::vector<std::size_t>> cond_idx = {
        {1, 2, 3, 4}, {0, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 4}, {0, 1, 2, 3},
        {0, 1, 2},    {0, 1, 3},    {0, 1, 4}};
    for (const auto& idx : cond_idx) {
      Matrix w = detail::word_product(structures, idx);
      if (w.sym_residual() > 1e-8 * std::max(1.0, w.max_norm())) {
        usable = false;
        break;
      }
      conditions.push_back(std::move(w));
    }
    if (usable) {
      if (auto probe = detail::word_null_probe(conditions, dim, sampler.seed)) {
        out.samples.push_back(*probe);
        ++out.census.family;
      }
    }
  }

  Rng rng(sampler.seed);
  for (std::size_t k = 0; k < sampler.count; ++k) {
    out.samples.push_back(random_unit(dim, rng));
    ++out.census.random;
  }
  return out;
}

struct FrameSet {
  std::vector<std::vector<Vector>> frames;
  SampleCensus census;
};

// Orthonormal p-frames: consecutive basis blocks, one shifted block, then
// seeded random frames (Gaussian draws orthonormalized).
inline FrameSet frame_samples(std::size_t dim, std::size_t p,
                              const PlaneSampler& sampler) {
  if (p == 0 || p >= dim) {
    throw std::invalid_argument("frame_samples: need 1 <= p <= dim-1");
  }
  FrameSet out;
  for (std::size_t start = 0; start + p <= dim; start += p) {
    std::vector<Vector> frame;
    for (std::size_t k = 0; k < p; ++k) frame.push_back(basis_vector(dim, start + k));
    out.frames.push_back(std::move(frame));
    ++out.census.basis;
  }
  if (dim >= p + 1) {
    std::vector<Vector> frame;
    for (std::size_t k = 0; k < p; ++k) frame.push_back(basis_vector(dim, 1 + k));
    out.frames.push_back(std::move(frame));
    ++out.census.basis;
  }
  Rng rng(sampler.seed);
  std::size_t made = 0;
  int attempts = 0;
  while (made < sampler.count && attempts < 1000) {
    ++attempts;
    std::vector<Vector> raw;
    for (std::size_t k = 0; k < p; ++k) {
      Vector v(dim);
      for (double& x : v) x = rng.gaussian();
      raw.push_back(std::move(v));
    }
    std::vector<Vector> frame = gram_schmidt(raw);
    if (frame.size() != p) continue;
    out.frames.push_back(std::move(frame));
    ++out.census.random;
    ++made;
  }
  if (made < sampler.count) {
    throw std::runtime_error("frame_samples: could not draw enough frames");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct Witness {
  Vector sample;  // offending direction (frames/quadruples are concatenated)
  std::vector<std::pair<double, int>> spectrum;  // clustered, when applicable
  double deviation = 0.0;
  std::string note;
};

struct ChannelReport {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct VerificationReport {
  std::string check;
  bool pass = false;
  double max_deviation = 0.0;  // over structure-matching comparisons
  double tolerance = 0.0;      // effective tolerance actually applied
  double cluster_gap = 0.0;
  std::vector<std::pair<double, int>> reference_spectrum;
  Vector reference_sample;
  std::vector<Witness> witnesses;  // capped at 4; first failures by index
  std::vector<ChannelReport> channels;
  SampleCensus census;
};

namespace detail {

constexpr std::size_t kWitnessCap = 4;

inline void add_witness(VerificationReport& rep, Witness w) {
  if (rep.witnesses.size() < kWitnessCap) rep.witnesses.push_back(std::move(w));
}

// Deviation between two clustered spectra with identical structure, or
// nothing when the structures (cluster counts or multiplicities) differ.
inline std::optional<double> cluster_deviation(
    const std::vector<std::pair<double, int>>& ref,
    const std::vector<std::pair<double, int>>& obs) {
  if (ref.size() != obs.size()) return std::nullopt;
  double dev = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i].second != obs[i].second) return std::nullopt;
    dev = std::max(dev, std::abs(ref[i].first - obs[i].first));
  }
  return dev;
}

inline Vector flatten(const std::vector<Vector>& vs) {
  Vector out;
  for (const Vector& v : vs) out.insert(out.end(), v.begin(), v.end());
  return out;
}

struct SpectrumObservation {
  Vector eigenvalues;
  std::vector<std::pair<double, int>> clusters;
  double commutator = 0.0;  // used by the complex check's invariance channel
};

// Shared engine: constant clustered spectrum of op(sample) across samples,
// with the cluster gap and effective tolerance frozen from the first sample.
// with_commutator(J): additionally requires ||[op(x), J]|| <= tol_eff.
template <class Samples, class OpFn, class FlattenFn>
inline VerificationReport run_spectrum_check(const std::string& check,
                                             const Samples& samples,
                                             const SampleCensus& census,
                                             OpFn&& op, FlattenFn&& flat,
                                             double tol,
                                             const Matrix* commute_with) {
  if (samples.empty()) {
    throw std::invalid_argument(check + ": no samples");
  }
  VerificationReport rep;
  rep.check = check;
  rep.census = census;

  std::vector<SpectrumObservation> obs(samples.size());
  detail::for_each_index(samples.size(), [&](std::size_t i) {
    const Matrix K = op(samples[i]);
    SymSpectrum s = symmetric_eigen(K);
    obs[i].eigenvalues = std::move(s.eigenvalues);
    if (commute_with != nullptr) {
      obs[i].commutator = commutator_norm(K, *commute_with);
    }
  });

  double radius = 0.0;
  for (double lam : obs[0].eigenvalues) radius = std::max(radius, std::abs(lam));
  rep.cluster_gap = default_cluster_gap(radius);
  rep.tolerance = tol * (1.0 + radius);
  for (SpectrumObservation& o : obs) {
    o.clusters = cluster_spectrum(o.eigenvalues, rep.cluster_gap);
  }
  rep.reference_spectrum = obs[0].clusters;
  rep.reference_sample = flat(samples[0]);

  ChannelReport invariance{"eigenspace-invariance", 0.0, rep.tolerance, true};
  ChannelReport constancy{"spectrum-constancy", 0.0, rep.tolerance, true};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (commute_with != nullptr) {
      invariance.max_deviation = std::max(invariance.max_deviation, obs[i].commutator);
      if (obs[i].commutator > rep.tolerance) {
        invariance.pass = false;
        add_witness(rep, Witness{flat(samples[i]), obs[i].clusters, obs[i].commutator,
                                 "eigenspaces not invariant under the complex structure"});
      }
    }
    if (i == 0) continue;
    const auto dev = cluster_deviation(rep.reference_spectrum, obs[i].clusters);
    if (!dev) {
      constancy.pass = false;
      add_witness(rep, Witness{flat(samples[i]), obs[i].clusters, 0.0,
                               "spectrum structure differs from reference"});
      continue;
    }
    constancy.max_deviation = std::max(constancy.max_deviation, *dev);
    if (*dev > rep.tolerance) {
      constancy.pass = false;
      add_witness(rep, Witness{flat(samples[i]), obs[i].clusters, *dev,
                               "spectrum deviates from reference"});
    }
  }

  if (commute_with != nullptr) rep.channels.push_back(invariance);
  rep.channels.push_back(constancy);
  rep.pass = true;
  for (const ChannelReport& ch : rep.channels) {
    rep.pass = rep.pass && ch.pass;
    rep.max_deviation = std::max(rep.max_deviation, ch.max_deviation);
  }
  return rep;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

inline VerificationReport check_osserman(const CurvatureSpec& spec,
                                         const PlaneSampler& sampler,
                                         double tol = 1e-8,
                                         const std::vector<Vector>& probes = {}) {
  std::vector<Matrix> structures;
  for (const CurvatureTerm& t : spec.terms) structures.push_back(t.psi);
  SampleSet set = unit_samples(spec.dim, sampler, probes, structures);
  return detail::run_spectrum_check(
      "osserman", set.samples, set.census,
      [&](const Vector& x) { return jacobi(spec, x); },
      [](const Vector& x) { return x; }, tol, nullptr);
}

inline VerificationReport check_p_osserman(const CurvatureSpec& spec,
                                           std::size_t p,
                                           const PlaneSampler& sampler,
                                           double tol = 1e-8) {
  FrameSet set = frame_samples(spec.dim, p, sampler);
  return detail::run_spectrum_check(
      "p-osserman", set.frames, set.census,
      [&](const std::vector<Vector>& frame) { return higher_jacobi(spec, frame); },
      [](const std::vector<Vector>& frame) { return detail::flatten(frame); }, tol,
      nullptr);
}

inline VerificationReport check_complex_osserman(const ComplexModel& model,
                                                 const PlaneSampler& sampler,
                                                 double tol = 1e-8) {
  validate_model(model);
  std::vector<Matrix> structures;
  if (model.provenance) {
    structures = model.provenance->family.generators;
  } else {
    for (const CurvatureTerm& t : model.spec.terms) structures.push_back(t.psi);
  }
  SampleSet set = unit_samples(model.spec.dim, sampler, model.probes, structures);
  return detail::run_spectrum_check(
      "complex-osserman", set.samples, set.census,
      [&](const Vector& x) { return complex_jacobi(model.spec, model.J, x); },
      [](const Vector& x) { return x; }, tol, &model.J);
}

// The three equivalent compatibility conditions, each its own channel:
//   (1) R(Jx,Jy,Jz,Jt) = R(x,y,z,t) on sampled quadruples,
//   (2) [J(pi_x), J] = 0 on sampled directions,
//   (3) [R(x,Jx), J] = 0 on sampled directions.
inline VerificationReport check_compatibility(const ComplexModel& model,
                                              const PlaneSampler& sampler,
                                              double tol = 1e-8) {
  validate_model(model);
  const std::size_t n = model.spec.dim;

  VerificationReport rep;
  rep.check = "compatibility";

  // Scale for the tensor channel: |R| on unit vectors is bounded by this.
  double coef_scale = std::abs(model.spec.c0);
  for (const CurvatureTerm& t : model.spec.terms) coef_scale += 3.0 * std::abs(t.c);
  const double tensor_tol = tol * (1.0 + coef_scale);

  ChannelReport tensor{"tensor-invariance", 0.0, tensor_tol, true};
  std::vector<std::vector<Vector>> quads;
  for (std::size_t i = 0; i + 3 < n; ++i) {
    quads.push_back({basis_vector(n, i), basis_vector(n, i + 1),
                     basis_vector(n, i + 2), basis_vector(n, i + 3)});
    ++rep.census.basis;
  }
  {
    Rng rng(sampler.seed);
    for (std::size_t k = 0; k < sampler.count; ++k) {
      quads.push_back({random_unit(n, rng), random_unit(n, rng),
                       random_unit(n, rng), random_unit(n, rng)});
      ++rep.census.random;
    }
  }
  std::vector<double> tensor_dev(quads.size(), 0.0);
  detail::for_each_index(quads.size(), [&](std::size_t i) {
    const auto& q = quads[i];
    const double plain = eval_R(model.spec, q[0], q[1], q[2], q[3]);
    const double rotated =
        eval_R(model.spec, model.J.apply(q[0]), model.J.apply(q[1]),
               model.J.apply(q[2]), model.J.apply(q[3]));
    tensor_dev[i] = std::abs(rotated - plain);
  });
  for (std::size_t i = 0; i < quads.size(); ++i) {
    tensor.max_deviation = std::max(tensor.max_deviation, tensor_dev[i]);
    if (tensor_dev[i] > tensor_tol) {
      tensor.pass = false;
      detail::add_witness(rep, Witness{detail::flatten(quads[i]), {}, tensor_dev[i],
                                       "tensor changes under the complex structure"});
    }
  }

  // Direction-based channels share the unit sample set.
  std::vector<Matrix> structures;
  for (const CurvatureTerm& t : model.spec.terms) structures.push_back(t.psi);
  SampleSet set = unit_samples(n, sampler, model.probes, structures);
  rep.census.extra += set.census.extra;
  rep.census.basis += set.census.basis;
  rep.census.pairs += set.census.pairs;
  rep.census.family += set.census.family;
  rep.census.random += set.census.random;

  struct Row {
    double complex_comm = 0.0;
    double skew_comm = 0.0;
  };
  std::vector<Row> rows(set.samples.size());
  detail::for_each_index(set.samples.size(), [&](std::size_t i) {
    const Vector& x = set.samples[i];
    rows[i].complex_comm =
        commutator_norm(complex_jacobi(model.spec, model.J, x), model.J);
    rows[i].skew_comm = commutator_norm(
        skew_curv(model.spec, x, model.J.apply(x)), model.J);
  });

  double radius = 0.0;
  {
    const SymSpectrum s =
        symmetric_eigen(complex_jacobi(model.spec, model.J, set.samples[0]));
    for (double lam : s.eigenvalues) radius = std::max(radius, std::abs(lam));
    rep.cluster_gap = default_cluster_gap(radius);
    rep.reference_spectrum = cluster_spectrum(s.eigenvalues, rep.cluster_gap);
    rep.reference_sample = set.samples[0];
  }
  const double op_tol = tol * (1.0 + radius);
  ChannelReport complex_ch{"complex-jacobi-commutation", 0.0, op_tol, true};
  ChannelReport skew_ch{"skew-curvature-commutation", 0.0, op_tol, true};
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    complex_ch.max_deviation = std::max(complex_ch.max_deviation, rows[i].complex_comm);
    if (rows[i].complex_comm > op_tol) {
      complex_ch.pass = false;
      detail::add_witness(rep, Witness{set.samples[i], {}, rows[i].complex_comm,
                                       "complex Jacobi operator does not commute "
                                       "with the complex structure"});
    }
    skew_ch.max_deviation = std::max(skew_ch.max_deviation, rows[i].skew_comm);
    if (rows[i].skew_comm > op_tol) {
      skew_ch.pass = false;
      detail::add_witness(rep, Witness{set.samples[i], {}, rows[i].skew_comm,
                                       "curvature operator of the holomorphic plane "
                                       "does not commute with the complex structure"});
    }
  }

  rep.tolerance = std::max(tensor_tol, op_tol);
  rep.channels = {tensor, complex_ch, skew_ch};
  rep.pass = true;
  for (const ChannelReport& ch : rep.channels) {
    rep.pass = rep.pass && ch.pass;
    rep.max_deviation = std::max(rep.max_deviation, ch.max_deviation);
  }
  return rep;
}

inline VerificationReport check_einstein(const CurvatureSpec& spec,
                                         double tol = 1e-10) {
  const Matrix ric = ricci(spec);
  const std::size_t n = spec.dim;
  const double mean = ric.trace() / static_cast<double>(n);
  const double dev = (ric - mean * Matrix::identity(n)).max_norm();

  VerificationReport rep;
  rep.check = "einstein";
  rep.tolerance = tol * (1.0 + std::abs(mean));
  rep.max_deviation = dev;
  rep.pass = dev <= rep.tolerance;
  const SymSpectrum s = symmetric_eigen(ric);
  double radius = 0.0;
  for (double lam : s.eigenvalues) radius = std::max(radius, std::abs(lam));
  rep.cluster_gap = default_cluster_gap(radius);
  rep.reference_spectrum = cluster_spectrum(s.eigenvalues, rep.cluster_gap);
  rep.channels.push_back({"ricci-isotropy", dev, rep.tolerance, rep.pass});
  if (!rep.pass) {
    // Witness: eigendirection whose Ricci eigenvalue is farthest from the mean.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
      if (std::abs(s.eigenvalues[i] - mean) > std::abs(s.eigenvalues[worst] - mean)) {
        worst = i;
      }
    }
    detail::add_witness(rep, Witness{s.eigenvectors.col(worst), rep.reference_spectrum,
                                     dev, "direction with extremal Ricci eigenvalue"});
  }
  return rep;
}

inline VerificationReport check_symmetries(const CurvatureSpec& spec,
                                           double tol = 1e-10) {
  const SymmetryReport sym = verify_symmetries(materialize(spec), tol);
  VerificationReport rep;
  rep.check = "symmetries";
  rep.tolerance = tol;
  rep.max_deviation =
      std::max(sym.antisymmetry, std::max(sym.pair_exchange, sym.bianchi));
  rep.pass = sym.pass;
  rep.channels = {
      {"antisymmetry", sym.antisymmetry, tol, sym.antisymmetry <= tol},
      {"pair-exchange", sym.pair_exchange, tol, sym.pair_exchange <= tol},
      {"first-bianchi", sym.bianchi, tol, sym.bianchi <= tol}};
  if (!rep.pass) {
    Vector idx(4);
    for (int k = 0; k < 4; ++k) idx[k] = static_cast<double>(sym.worst[k]);
    detail::add_witness(rep, Witness{idx, {}, rep.max_deviation,
                                     "worst basis index quadruple (a,b,c,d)"});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Multiplicity taxonomy
// ---------------------------------------------------------------------------

struct MultiplicityCase {
  std::string label;   // "scalar", "(n-2,2)", "(n-4,4)", "(n-4,2,2)", "VIOLATION"
  bool allowed = false;
};

inline MultiplicityCase classify_multiplicities(const VerificationReport& report,
                                                std::size_t n) {
  if (report.check != "complex-osserman" || !report.pass) {
    throw std::invalid_argument(
        "classify_multiplicities: report is not a passing complex-osserman check");
  }
  std::vector<int> mult;
  for (const auto& cl : report.reference_spectrum) mult.push_back(cl.second);
  std::sort(mult.begin(), mult.end(), std::greater<int>());

  const int ni = static_cast<int>(n);
  MultiplicityCase out;
  if (mult == std::vector<int>{ni}) {
    out.label = "scalar";
    out.allowed = true;
  } else if (mult == std::vector<int>{ni - 2, 2}) {
    out.label = "(n-2,2)";
    out.allowed = true;
  } else if (mult == std::vector<int>{ni - 4, 4}) {
    out.label = "(n-4,4)";
    out.allowed = n % 4 == 0;
  } else if (mult == std::vector<int>{ni - 4, 2, 2}) {
    out.label = "(n-4,2,2)";
    out.allowed = n % 4 == 0;
  } else {
    out.label = "VIOLATION";
    out.allowed = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form classifier for Clifford models of rank <= 3
// ---------------------------------------------------------------------------

enum class Status { ComplexOsserman, NotComplexOsserman, Abstain };

struct ClassifierVerdict {
  Status status = Status::Abstain;
  std::string case_label;
  std::string detail;
  double residual = 0.0;                 // numeric evidence for the branch taken
  std::optional<Matrix> reparam;         // orthogonal A with J~_i = sum_j A(i,j) J_j
  std::optional<Vector> reparam_coeffs;  // c~_i = sum_j A(i,j)^2 c_j
  std::optional<Vector> j_coordinates;   // coordinates of J in the decisive span
};

namespace detail {

inline double nrm(const Matrix& m) {
  return m.fro_norm() / std::sqrt(static_cast<double>(m.rows()));
}

inline double det2(const Matrix& a) {
  return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

inline double det3(const Matrix& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Complete the unit row a (supported on one coefficient block) to an
// orthogonal kappa x kappa matrix whose rows all lie in single blocks of
// equal coefficients, fixing the determinant to want_det.
inline Matrix block_completion(const Vector& a, const Vector& c, double ctol,
                               double want_det) {
  const std::size_t kappa = a.size();
  std::vector<Vector> rows = {normalized(a)};
  // First the indices of the block carrying a, then the rest: completing a
  // against same-block basis vectors keeps every row inside one block.
  std::vector<std::size_t> order;
  std::size_t lead = 0;
  for (std::size_t i = 1; i < kappa; ++i) {
    if (std::abs(a[i]) > std::abs(a[lead])) lead = i;
  }
  for (std::size_t i = 0; i < kappa; ++i) {
    if (std::abs(c[i] - c[lead]) <= ctol) order.push_back(i);
  }
  for (std::size_t i = 0; i < kappa; ++i) {
    if (std::abs(c[i] - c[lead]) > ctol) order.push_back(i);
  }
  for (std::size_t idx : order) {
    if (rows.size() == kappa) break;
    Vector v = basis_vector(kappa, idx);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& r : rows) add_scaled(v, -dot(v, r), r);
    }
    const double rem = norm(v);
    if (rem <= 1e-8) continue;
    for (double& x : v) x /= rem;
    rows.push_back(std::move(v));
  }
  if (rows.size() != kappa) {
    throw std::runtime_error("block_completion: could not complete basis");
  }
  Matrix A(kappa, kappa);
  for (std::size_t i = 0; i < kappa; ++i) {
    for (std::size_t j = 0; j < kappa; ++j) A(i, j) = rows[i][j];
  }
  const double d = kappa == 2 ? det2(A) : kappa == 3 ? det3(A) : 1.0;
  if (d * want_det < 0.0) {
    for (std::size_t j = 0; j < kappa; ++j) A(kappa - 1, j) = -A(kappa - 1, j);
  }
  return A;
}

inline Vector mixed_coeffs(const Matrix& A, const Vector& c) {
  Vector out(c.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) out[i] += A(i, j) * A(i, j) * c[j];
  }
  return out;
}

// Indices with coordinate magnitude above tol all carry the same coefficient?
inline bool single_block(const Vector& coords, const Vector& c, double coord_tol,
                         double ctol) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (std::abs(coords[i]) <= coord_tol) continue;
    if (!any) {
      lo = hi = c[i];
      any = true;
    } else {
      lo = std::min(lo, c[i]);
      hi = std::max(hi, c[i]);
    }
  }
  return !any || hi - lo <= ctol;
}

}  // namespace detail

inline ClassifierVerdict classify_clifford_model(const ComplexModel& model,
                                                 double tol = 1e-6) {
  validate_model(model);
  if (!model.provenance) {
    throw std::invalid_argument(
        "classify_clifford_model: model carries no generating family");
  }
  const CliffordFamily& fam = model.provenance->family;
  const std::size_t kappa = fam.rank();
  const std::size_t n = model.spec.dim;
  if (kappa > 3) {
    throw std::invalid_argument(
        "classify_clifford_model: classification covers rank <= 3 only");
  }
  if (model.spec.terms.size() != kappa) {
    throw std::invalid_argument(
        "classify_clifford_model: term count does not match family rank");
  }
  Vector c(kappa, 0.0);
  for (std::size_t i = 0; i < kappa; ++i) {
    if ((model.spec.terms[i].psi - fam.generators[i]).max_norm() > 1e-8) {
      throw std::invalid_argument(
          "classify_clifford_model: term " + std::to_string(i) +
          " does not match the family generator");
    }
    c[i] = model.spec.terms[i].c;
    if (std::abs(c[i]) < 1e-12) {
      throw std::invalid_argument(
          "classify_clifford_model: coefficient " + std::to_string(i) +
          " is zero; drop the term instead");
    }
  }
  const FamilyReport fam_rep = verify_family(fam, 1e-8);
  if (!fam_rep.pass) {
    throw std::invalid_argument(
        "classify_clifford_model: generators do not form a Clifford family");
  }

  const Matrix& J = model.J;
  const double c0 = model.spec.c0;
  const bool zero_c0 = std::abs(c0) < 1e-12;
  const double ctol = 1e-9 * (1.0 + [&] {
                        double m = 0.0;
                        for (double v : c) m = std::max(m, std::abs(v));
                        return m;
                      }());

  ClassifierVerdict v;

  if (kappa == 0) {
    v.status = Status::ComplexOsserman;
    v.case_label = "rank 0";
    v.detail = "constant-curvature tensor; every complex structure works";
    return v;
  }

  if (kappa == 1) {
    const Matrix& J1 = fam.generators[0];
    const double comm = detail::nrm(J * J1 - J1 * J);
    const double anti = detail::nrm(J * J1 + J1 * J);
    const double dplus = detail::nrm(J - J1);
    const double dminus = detail::nrm(J + J1);
    const SpanFit fit = decompose_in_span(J, {J1});
    v.j_coordinates = fit.coeffs;
    if (anti <= tol) {
      v.status = Status::ComplexOsserman;
      v.case_label = "rank 1: J anticommutes with J1";
      v.residual = anti;
      return v;
    }
    if (zero_c0) {
      if (comm <= tol) {
        v.status = Status::ComplexOsserman;
        v.case_label = "rank 1: J commutes with J1";
        v.residual = comm;
        return v;
      }
      v.status = Status::NotComplexOsserman;
      v.case_label = "rank 1: J neither commutes nor anticommutes with J1";
      v.residual = std::min(comm, anti);
      return v;
    }
    if (dplus <= tol || dminus <= tol) {
      v.status = Status::ComplexOsserman;
      v.case_label = dplus <= tol ? "rank 1: J = J1" : "rank 1: J = -J1";
      v.residual = std::min(dplus, dminus);
      Matrix A(1, 1);
      A(0, 0) = dplus <= tol ? 1.0 : -1.0;
      v.reparam = A;
      v.reparam_coeffs = c;
      return v;
    }
    v.status = Status::NotComplexOsserman;
    v.case_label = "rank 1: J is not +-J1 and does not anticommute with J1";
    v.residual = std::min(std::min(dplus, dminus), anti);
    return v;
  }

  if (kappa == 2) {
    const Matrix& J1 = fam.generators[0];
    const Matrix& J2 = fam.generators[1];
    const Matrix D = J1 * J2;
    const double dplus = detail::nrm(J - D);
    const double dminus = detail::nrm(J + D);
    if (dplus <= tol || dminus <= tol) {
      v.status = Status::ComplexOsserman;
      v.case_label = dplus <= tol ? "rank 2: J = J1J2" : "rank 2: J = -J1J2";
      v.residual = std::min(dplus, dminus);
      Matrix A = Matrix::identity(2);
      if (dminus <= tol) A(1, 1) = -1.0;  // J~1 J~2 = -J1J2
      v.reparam = A;
      v.reparam_coeffs = c;
      v.j_coordinates = decompose_in_span(J, {J1, J2}).coeffs;
      return v;
    }

    const SpanFit span = decompose_in_span(J, {J1, J2});
    const double unit_dev = std::abs(norm(span.coeffs) - 1.0);
    const bool equal_c = std::abs(c[0] - c[1]) <= ctol;
    if (span.residual <= tol && unit_dev <= tol) {
      const bool aligned = std::abs(std::abs(span.coeffs[0]) - 1.0) <= tol ||
                           std::abs(std::abs(span.coeffs[1]) - 1.0) <= tol;
      if (equal_c || aligned) {
        v.status = Status::ComplexOsserman;
        v.case_label = "rank 2: J in the unit span of {J1, J2}";
        v.detail = equal_c && !aligned
                       ? "c1 = c2: any unit combination reparametrizes to J = J~1"
                       : "J = +-J1 or +-J2 up to reparametrization";
        v.residual = std::max(span.residual, unit_dev);
        v.j_coordinates = span.coeffs;
        Vector a = normalized(span.coeffs);
        Matrix A(2, 2);
        A(0, 0) = a[0];
        A(0, 1) = a[1];
        A(1, 0) = -a[1];
        A(1, 1) = a[0];
        v.reparam = A;
        v.reparam_coeffs = detail::mixed_coeffs(A, c);
        return v;
      }
      // Genuinely mixed coordinates with c1 != c2: incompatible with R
      // (the coefficient constraint is dimension-free), hence not
      // complex Osserman in any dimension.
      v.status = Status::NotComplexOsserman;
      v.case_label = "rank 2: J mixes both generators but their coefficients "
                     "differ (violates compatibility)";
      v.residual = std::max(span.residual, unit_dev);
      v.j_coordinates = span.coeffs;
      return v;
    }

    if (zero_c0) {
      const Matrix C1 = J * J1 - J1 * J;
      const Matrix C2 = J * J2 - J2 * J;
      const Matrix A1 = J * J1 + J1 * J;
      const Matrix A2 = J * J2 + J2 * J;
      if (equal_c) {
        // One rotation angle: J~1 = p J1 + q J2, J~2 = -q J1 + p J2 with
        // [J, J~1] = 0 and {J, J~2} = 0.  Stack both conditions and take the
        // smallest eigenvalue of the 2x2 Gram of the stacked columns.
        const double inv = 1.0 / static_cast<double>(n);
        auto pair_dot = [&](const Matrix& x1, const Matrix& x2, const Matrix& y1,
                            const Matrix& y2) {
          double s = 0.0;
          for (std::size_t k = 0; k < x1.data().size(); ++k) {
            s += x1.data()[k] * y1.data()[k] + x2.data()[k] * y2.data()[k];
          }
          return s * inv;
        };
        Matrix gram(2, 2);
        gram(0, 0) = pair_dot(C1, A2, C1, A2);
        gram(0, 1) = gram(1, 0) = pair_dot(C1, A2, C2, A1 * -1.0);
        gram(1, 1) = pair_dot(C2, A1 * -1.0, C2, A1 * -1.0);
        const SymSpectrum eig = symmetric_eigen(gram);
        const double lam = std::max(eig.eigenvalues[0], 0.0);
        if (lam <= tol * tol) {
          const Vector pq = eig.eigenvectors.col(0);
          v.status = Status::ComplexOsserman;
          v.case_label =
              "rank 2: J commutes with J~1 and anticommutes with J~2";
          v.detail = "c1 = c2 (reparametrized)";
          v.residual = std::sqrt(lam);
          Matrix A(2, 2);
          A(0, 0) = pq[0];
          A(0, 1) = pq[1];
          A(1, 0) = -pq[1];
          A(1, 1) = pq[0];
          v.reparam = A;
          v.reparam_coeffs = detail::mixed_coeffs(A, c);
          return v;
        }
        v.status = Status::NotComplexOsserman;
        v.case_label = "rank 2: no reparametrization splits J into a "
                       "commuting/anticommuting pair";
        v.residual = std::sqrt(lam);
        return v;
      }
      // c1 != c2: coefficient-preserving reparametrizations only permute
      // (and flip) the generators, so test the two patterns directly.
      const double r_id = std::max(detail::nrm(C1), detail::nrm(A2));
      const double r_sw = std::max(detail::nrm(C2), detail::nrm(A1));
      if (r_id <= tol || r_sw <= tol) {
        v.status = Status::ComplexOsserman;
        v.case_label = r_id <= r_sw
                           ? "rank 2: J commutes with J1 and anticommutes with J2"
                           : "rank 2: J commutes with J2 and anticommutes with J1";
        v.detail = "c1 != c2";
        v.residual = std::min(r_id, r_sw);
        Matrix A = Matrix::identity(2);
        if (r_sw < r_id) {
          A = Matrix(2, 2);
          A(0, 1) = 1.0;
          A(1, 0) = 1.0;
        }
        v.reparam = A;
        v.reparam_coeffs = detail::mixed_coeffs(A, c);
        return v;
      }
      v.status = Status::NotComplexOsserman;
      v.case_label = "rank 2: J fits no commuting/anticommuting pattern";
      v.residual = std::min(r_id, r_sw);
      return v;
    }

    // c0 != 0 and J is not +-J1J2 and not in the admissible unit span.
    if (n >= 12) {
      v.status = Status::NotComplexOsserman;
      v.case_label = "rank 2: J is neither J~1 nor J~1J~2 for any "
                     "coefficient-preserving reparametrization";
      v.residual = std::min(std::min(dplus, dminus),
                            std::max(span.residual, unit_dev));
      return v;
    }
    v.status = Status::Abstain;
    v.case_label = "rank 2: below the classified dimension range";
    v.detail = "the structure theorem needs dimension >= 12 when the "
               "constant-curvature coefficient is nonzero";
    return v;
  }

  // kappa == 3
  const Matrix omega = fam.generators[0] * fam.generators[1] * fam.generators[2];
  const Matrix id = Matrix::identity(n);
  const double quat_plus = detail::nrm(omega - id);
  const double quat_minus = detail::nrm(omega + id);
  const double quat = std::min(quat_plus, quat_minus);
  const double omega_sign = quat_plus <= quat_minus ? 1.0 : -1.0;

  if (zero_c0) {
    const CliffordFamily duals = dual_structure(fam);
    const SpanFit fit = decompose_in_span(J, duals.generators);
    const double unit_dev = std::abs(norm(fit.coeffs) - 1.0);
    v.j_coordinates = fit.coeffs;
    if (fit.residual <= tol && unit_dev <= tol &&
        detail::single_block(fit.coeffs, c, tol, ctol)) {
      v.status = Status::ComplexOsserman;
      v.case_label = "rank 3: J = J~2J~3 (unit combination of the dual "
                     "structures J2J3, J3J1, J1J2)";
      v.detail = quat <= tol ? "family is quaternion: dual span equals generator span"
                             : "single coefficient block";
      v.residual = std::max(fit.residual, unit_dev);
      const Matrix A =
          detail::block_completion(fit.coeffs, c, ctol, 1.0);  // duals follow A when det = 1
      v.reparam = A;
      v.reparam_coeffs = detail::mixed_coeffs(A, c);
      return v;
    }
    if (fit.residual <= tol && unit_dev <= tol) {
      // In the dual span but across distinct coefficient blocks: violates
      // compatibility in any dimension.
      v.status = Status::NotComplexOsserman;
      v.case_label = "rank 3: dual coordinates of J mix distinct coefficients "
                     "(violates compatibility)";
      v.residual = std::max(fit.residual, unit_dev);
      return v;
    }
    if (n >= 12) {
      v.status = Status::NotComplexOsserman;
      v.case_label = "rank 3: J is outside the span of the dual structures";
      v.residual = std::max(fit.residual, unit_dev);
      return v;
    }
    v.status = Status::Abstain;
    v.case_label = "rank 3: below the classified dimension range";
    v.detail = "the classification needs dimension >= 12 when the "
               "constant-curvature coefficient is zero";
    return v;
  }

  // kappa == 3, c0 != 0: needs a quaternion family and J = J~1 with
  // J~1J~2J~3 = id after a coefficient-preserving reparametrization.
  const SpanFit fit = decompose_in_span(J, fam.generators);
  const double unit_dev = std::abs(norm(fit.coeffs) - 1.0);
  v.j_coordinates = fit.coeffs;
  if (quat <= tol && fit.residual <= tol && unit_dev <= tol &&
      detail::single_block(fit.coeffs, c, tol, ctol)) {
    v.status = Status::ComplexOsserman;
    v.case_label = "rank 3: quaternion family with J = J~1 and J~1J~2J~3 = id";
    v.residual = std::max(quat, std::max(fit.residual, unit_dev));
    // The triple product scales by det(A); pick det(A) so it lands on +id.
    const Matrix A = detail::block_completion(fit.coeffs, c, ctol, omega_sign);
    v.reparam = A;
    v.reparam_coeffs = detail::mixed_coeffs(A, c);
    return v;
  }
  if (fit.residual <= tol && unit_dev <= tol &&
      !detail::single_block(fit.coeffs, c, tol, ctol)) {
    // In the generator span but across distinct coefficient blocks:
    // violates compatibility in any dimension.
    v.status = Status::NotComplexOsserman;
    v.case_label = "rank 3: coordinates of J mix distinct coefficients "
                   "(violates compatibility)";
    v.residual = std::max(fit.residual, unit_dev);
    return v;
  }
  if (n >= 16) {
    v.status = Status::NotComplexOsserman;
    if (quat > tol) {
      v.case_label = "rank 3: family is not quaternion (triple product is "
                     "not +-id), required when the constant-curvature "
                     "coefficient is nonzero";
      v.residual = quat;
    } else {
      v.case_label = "rank 3: J is not a unit combination of the generators";
      v.residual = std::max(fit.residual, unit_dev);
    }
    return v;
  }
  v.status = Status::Abstain;
  v.case_label = "rank 3: below the classified dimension range";
  v.detail = "the classification needs dimension >= 16 when the "
             "constant-curvature coefficient is nonzero";
  return v;
}

}  // namespace cliffjac
