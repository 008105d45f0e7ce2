// Command-line laboratory for curvature models built from anticommuting
// families of skew-symmetric orthogonal structures.
//
// Subcommands:
//   nu        maximal family size admitted by a dimension
//   catalog   construct a named model (writes a model file)
//   build     construct a generic rank-k model
//   spectrum  clustered (complex) Jacobi spectrum at a direction
//   verify    run a spectral-constancy or identity check
//   classify  closed-form complex-Osserman classification (rank <= 3)
//
// Exit codes: 0 success / check passed / classified admissible (or abstained),
//             1 check failed / classified not admissible,
//             2 usage or input errors.

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cliffjac/catalog.hpp"
#include "cliffjac/clifford.hpp"
#include "cliffjac/model_io.hpp"
#include "cliffjac/osserman.hpp"

namespace {

using namespace cliffjac;

std::vector<double> parse_coeff_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) {
      throw std::invalid_argument("bad number in coefficient list: " + item);
    }
    out.push_back(v);
  }
  return out;
}

std::string format_clusters(const std::vector<std::pair<double, int>>& cl) {
  std::string out;
  char buf[64];
  for (const auto& c : cl) {
    std::snprintf(buf, sizeof buf, "%s(%.12g, x%d)", out.empty() ? "" : " ",
                  c.first, c.second);
    out += buf;
  }
  return out.empty() ? "(empty)" : out;
}

void print_model_summary(const ComplexModel& model, const std::string& digest) {
  std::printf("model: dim=%zu c0=%.12g terms=%zu%s digest=%s\n",
              model.spec.dim, model.spec.c0, model.spec.terms.size(),
              model.provenance ? " (with generating family)" : "", digest.c_str());
}

void emit_model(const ComplexModel& model, const std::string& out_path) {
  const Json j = model_to_json(model);
  if (out_path.empty()) {
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    write_json_file(out_path, j);
    print_model_summary(model, fnv1a64_hex(j.dump()));
    std::printf("wrote %s\n", out_path.c_str());
  }
}

ComplexModel load_model(const std::string& path) {
  return model_from_json(load_json_file(path));
}

int run_nu(const std::vector<std::size_t>& dims) {
  for (std::size_t n : dims) {
    std::printf("nu(%zu) = %d\n", n, adams_nu(n));
  }
  return 0;
}

int run_catalog(const std::string& name, std::size_t dim,
                const std::string& coeff_text, std::uint64_t seed,
                const std::string& out_path) {
  if (name == "list") {
    for (const CatalogEntry& e : catalog_entries()) {
      std::printf("%-20s %s\n", e.name.c_str(), e.summary.c_str());
    }
    return 0;
  }
  const CatalogEntry* entry = find_catalog_entry(name);
  if (entry == nullptr) {
    std::fprintf(stderr, "unknown catalog model '%s' (try 'catalog list')\n",
                 name.c_str());
    return 2;
  }
  const std::size_t n = dim == 0 ? entry->default_dim : dim;
  const std::vector<double> coeffs =
      coeff_text.empty() ? entry->default_coeffs : parse_coeff_list(coeff_text);
  emit_model(entry->build(n, coeffs, seed), out_path);
  return 0;
}

int run_build(std::size_t dim, double c0, std::size_t rank,
              const std::string& coeff_text, const std::string& j_choice,
              std::uint64_t seed, const std::string& out_path) {
  JChoice choice = JChoice::J1;
  Matrix custom;
  const Matrix* custom_ptr = nullptr;
  if (j_choice == "j1") {
    choice = JChoice::J1;
  } else if (j_choice == "j1j2") {
    choice = JChoice::J1J2;
  } else {
    choice = JChoice::Custom;
    custom = matrix_from_json(load_json_file(j_choice), "J file");
    custom_ptr = &custom;
  }
  const std::vector<double> coeffs =
      coeff_text.empty() ? std::vector<double>{} : parse_coeff_list(coeff_text);
  emit_model(rank_k_generic(dim, rank, choice, c0, coeffs, seed, custom_ptr),
             out_path);
  return 0;
}

int run_spectrum(const std::string& model_path, const std::string& at,
                 bool use_complex, std::uint64_t seed) {
  const ComplexModel model = load_model(model_path);
  const std::size_t n = model.spec.dim;
  Vector x;
  if (at == "random") {
    Rng rng(seed);
    x = random_unit(n, rng);
  } else if (at == "basis" || at.rfind("basis:", 0) == 0) {
    std::size_t idx = 0;
    if (at.size() > 6) idx = static_cast<std::size_t>(std::stoul(at.substr(6)));
    if (idx >= n) {
      throw std::invalid_argument("basis index out of range");
    }
    x = basis_vector(n, idx);
  } else {
    x = normalized(parse_coeff_list(at));
    if (x.size() != n) {
      throw std::invalid_argument("direction has wrong dimension");
    }
  }
  const Matrix K =
      use_complex ? complex_jacobi(model.spec, model.J, x) : jacobi(model.spec, x);
  const SymSpectrum s = symmetric_eigen(K);
  double radius = 0.0;
  for (double lam : s.eigenvalues) radius = std::max(radius, std::abs(lam));
  const auto clusters = cluster_spectrum(s.eigenvalues, default_cluster_gap(radius));
  std::printf("%s spectrum at %s:\n", use_complex ? "complex" : "direction", at.c_str());
  for (const auto& c : clusters) {
    std::printf("  %.12g  x%d\n", c.first, c.second);
  }
  return 0;
}

int run_verify(const std::string& model_path, const std::string& check,
               std::size_t samples, std::uint64_t seed, double tol_arg,
               const std::string& out_path) {
  const ComplexModel model = load_model(model_path);
  const PlaneSampler sampler{seed, samples};
  VerificationReport rep;
  if (check == "osserman") {
    const double tol = tol_arg > 0 ? tol_arg : 1e-8;
    rep = check_osserman(model.spec, sampler, tol, model.probes);
  } else if (check.rfind("p-osserman:", 0) == 0) {
    const double tol = tol_arg > 0 ? tol_arg : 1e-8;
    const std::size_t p =
        static_cast<std::size_t>(std::stoul(check.substr(11)));
    rep = check_p_osserman(model.spec, p, sampler, tol);
  } else if (check == "complex-osserman") {
    const double tol = tol_arg > 0 ? tol_arg : 1e-8;
    rep = check_complex_osserman(model, sampler, tol);
  } else if (check == "compat") {
    const double tol = tol_arg > 0 ? tol_arg : 1e-8;
    rep = check_compatibility(model, sampler, tol);
  } else if (check == "einstein") {
    const double tol = tol_arg > 0 ? tol_arg : 1e-10;
    rep = check_einstein(model.spec, tol);
  } else if (check == "symmetries") {
    const double tol = tol_arg > 0 ? tol_arg : 1e-10;
    rep = check_symmetries(model.spec, tol);
  } else {
    std::fprintf(stderr,
                 "unknown check '%s' (osserman, p-osserman:P, "
                 "complex-osserman, compat, einstein, symmetries)\n",
                 check.c_str());
    return 2;
  }

  std::printf("check: %s\n", rep.check.c_str());
  std::printf("verdict: %s (max deviation %.6g, tolerance %.6g)\n",
              rep.pass ? "PASS" : "FAIL", rep.max_deviation, rep.tolerance);
  if (!rep.reference_spectrum.empty()) {
    std::printf("spectrum: %s\n", format_clusters(rep.reference_spectrum).c_str());
  }
  if (rep.census.total() > 0) {
    std::printf("samples: extra=%zu basis=%zu pairs=%zu family=%zu random=%zu "
                "total=%zu\n",
                rep.census.extra, rep.census.basis, rep.census.pairs,
                rep.census.family, rep.census.random, rep.census.total());
  }
  for (const ChannelReport& ch : rep.channels) {
    std::printf("channel %-28s dev=%.6g tol=%.6g %s\n", ch.name.c_str(),
                ch.max_deviation, ch.tolerance, ch.pass ? "pass" : "FAIL");
  }
  for (const Witness& w : rep.witnesses) {
    std::printf("witness: %s (deviation %.6g)\n", w.note.c_str(), w.deviation);
    if (!w.spectrum.empty()) {
      std::printf("  spectrum: %s\n", format_clusters(w.spectrum).c_str());
    }
  }

  if (!out_path.empty()) {
    std::ostringstream cmd;
    cmd << "verify --check " << check << " --samples " << samples << " --seed "
        << seed;
    const Json jr =
        report_to_json(rep, cmd.str(), model_digest(model), seed);
    write_json_file(out_path, jr);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return rep.pass ? 0 : 1;
}

int run_classify(const std::string& model_path, const std::string& out_path) {
  const ComplexModel model = load_model(model_path);
  const ClassifierVerdict v = classify_clifford_model(model);
  std::printf("verdict: %s\n", status_name(v.status));
  std::printf("case: %s\n", v.case_label.c_str());
  if (!v.detail.empty()) std::printf("detail: %s\n", v.detail.c_str());
  std::printf("residual: %.6g\n", v.residual);
  if (v.j_coordinates) {
    std::printf("J coordinates:");
    for (double a : *v.j_coordinates) std::printf(" %.12g", a);
    std::printf("\n");
  }
  if (v.reparam) {
    std::printf("reparametrization rows:\n");
    for (std::size_t i = 0; i < v.reparam->rows(); ++i) {
      std::printf(" ");
      for (std::size_t j = 0; j < v.reparam->cols(); ++j) {
        std::printf(" %.12g", (*v.reparam)(i, j));
      }
      std::printf("\n");
    }
  }
  if (v.reparam_coeffs) {
    std::printf("reparametrized coefficients:");
    for (double c : *v.reparam_coeffs) std::printf(" %.12g", c);
    std::printf("\n");
  }
  if (!out_path.empty()) {
    std::ostringstream cmd;
    cmd << "classify";
    write_json_file(out_path, verdict_to_json(v, cmd.str(), model_digest(model)));
    std::printf("wrote %s\n", out_path.c_str());
  }
  return v.status == Status::NotComplexOsserman ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical laboratory for curvature models built from anticommuting "
      "skew-symmetric orthogonal structures"};
  app.require_subcommand(1);

  // --- nu ---
  std::vector<std::size_t> nu_dims;
  CLI::App* nu = app.add_subcommand(
      "nu", "maximal number of anticommuting structures a dimension admits");
  nu->add_option("dims", nu_dims, "dimensions to query")->required();

  // --- catalog ---
  std::string cat_name, cat_coeffs, cat_out;
  std::size_t cat_dim = 0;
  std::uint64_t cat_seed = 0;
  CLI::App* cat = app.add_subcommand("catalog",
                                     "construct a named model ('catalog list' "
                                     "enumerates the names)");
  cat->add_option("name", cat_name, "model name or 'list'")->required();
  cat->add_option("--dim", cat_dim, "dimension (default: model's own)");
  cat->add_option("--coeffs", cat_coeffs,
                  "comma-separated coefficients, leading constant-curvature "
                  "coefficient first");
  cat->add_option("--seed", cat_seed, "seed for the generated structures");
  cat->add_option("--out", cat_out, "write the model file here");

  // --- build ---
  std::string bld_coeffs, bld_j = "j1", bld_out;
  std::size_t bld_dim = 0, bld_rank = 0;
  double bld_c0 = 0.0;
  std::uint64_t bld_seed = 0;
  CLI::App* bld =
      app.add_subcommand("build", "construct a generic rank-k model");
  bld->add_option("--dim", bld_dim, "dimension")->required();
  bld->add_option("--rank", bld_rank, "number of structures")->required();
  bld->add_option("--c0", bld_c0, "constant-curvature coefficient");
  bld->add_option("--coeffs", bld_coeffs,
                  "comma-separated structure coefficients (default powers of 2)");
  bld->add_option("--J", bld_j,
                  "complex structure: j1, j1j2, or a JSON matrix file");
  bld->add_option("--seed", bld_seed, "seed for the generated structures");
  bld->add_option("--out", bld_out, "write the model file here");

  // --- spectrum ---
  std::string spc_model, spc_at = "random";
  bool spc_complex = false;
  std::uint64_t spc_seed = 0;
  CLI::App* spc = app.add_subcommand(
      "spectrum", "clustered Jacobi spectrum at a direction");
  spc->add_option("--model", spc_model, "model file")->required();
  spc->add_option("--at", spc_at,
                  "direction: random, basis, basis:K, or x1,x2,...");
  spc->add_flag("--complex", spc_complex,
                "spectrum of the complex Jacobi operator (uses the model's J)");
  spc->add_option("--seed", spc_seed, "seed for --at random");

  // --- verify ---
  std::string ver_model, ver_check, ver_out;
  std::size_t ver_samples = 64;
  std::uint64_t ver_seed = 0;
  double ver_tol = 0.0;
  CLI::App* ver = app.add_subcommand("verify", "run a verification check");
  ver->add_option("--model", ver_model, "model file")->required();
  ver->add_option("--check", ver_check,
                  "osserman | p-osserman:P | complex-osserman | compat | "
                  "einstein | symmetries")
      ->required();
  ver->add_option("--samples", ver_samples, "random sample count (default 64)");
  ver->add_option("--seed", ver_seed, "sampling seed (default 0)");
  ver->add_option("--tol", ver_tol, "override the check's base tolerance");
  ver->add_option("--out", ver_out, "write the report file here");

  // --- classify ---
  std::string cls_model, cls_out;
  CLI::App* cls = app.add_subcommand(
      "classify", "closed-form complex-Osserman classification (rank <= 3)");
  cls->add_option("--model", cls_model, "model file")->required();
  cls->add_option("--out", cls_out, "write the verdict file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return 2;
  }

  try {
    if (nu->parsed()) return run_nu(nu_dims);
    if (cat->parsed()) {
      return run_catalog(cat_name, cat_dim, cat_coeffs, cat_seed, cat_out);
    }
    if (bld->parsed()) {
      return run_build(bld_dim, bld_c0, bld_rank, bld_coeffs, bld_j, bld_seed,
                       bld_out);
    }
    if (spc->parsed()) {
      return run_spectrum(spc_model, spc_at, spc_complex, spc_seed);
    }
    if (ver->parsed()) {
      return run_verify(ver_model, ver_check, ver_samples, ver_seed, ver_tol,
                        ver_out);
    }
    if (cls->parsed()) return run_classify(cls_model, cls_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
