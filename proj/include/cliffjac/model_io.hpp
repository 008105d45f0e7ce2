#pragma once

// JSON serialization for models and verification reports, plus the content
// digest and atomic file writes used by the CLI.  Serialized numbers use the
// shortest representation that round-trips the double exactly, so identical
// inputs always produce byte-identical files.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffjac/catalog.hpp"
#include "cliffjac/clifford.hpp"
#include "cliffjac/curvature.hpp"
#include "cliffjac/osserman.hpp"

namespace cliffjac {

using Json = nlohmann::json;

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(std::string(what) + ": expected a matrix");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) {
    throw std::invalid_argument(std::string(what) + ": expected matrix rows");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw std::invalid_argument(std::string(what) + ": ragged matrix rows");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix entries must be numbers");
      }
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

inline Vector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(what) + ": expected an array");
  }
  Vector v;
  v.reserve(j.size());
  for (const Json& x : j) {
    if (!x.is_number()) {
      throw std::invalid_argument(std::string(what) +
                                  ": vector entries must be numbers");
    }
    v.push_back(x.get<double>());
  }
  return v;
}

// ---------------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------------

inline Json model_to_json(const ComplexModel& model) {
  Json out;
  out["version"] = 1;
  out["dim"] = model.spec.dim;
  out["c0"] = model.spec.c0;
  Json terms = Json::array();
  for (const CurvatureTerm& t : model.spec.terms) {
    Json jt;
    jt["c"] = t.c;
    jt["psi"] = matrix_to_json(t.psi);
    terms.push_back(std::move(jt));
  }
  out["terms"] = std::move(terms);
  out["J"] = matrix_to_json(model.J);
  if (model.provenance) {
    Json prov;
    prov["rank"] = model.provenance->family.rank();
    Json gens = Json::array();
    for (const Matrix& g : model.provenance->family.generators) {
      gens.push_back(matrix_to_json(g));
    }
    prov["generators"] = std::move(gens);
    if (model.provenance->reparam) {
      prov["reparam"] = matrix_to_json(*model.provenance->reparam);
    }
    out["provenance"] = std::move(prov);
  }
  if (!model.probes.empty()) {
    Json probes = Json::array();
    for (const Vector& p : model.probes) probes.push_back(vector_to_json(p));
    out["probes"] = std::move(probes);
  }
  return out;
}

inline ComplexModel model_from_json(const Json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("model file: expected a JSON object");
  }
  if (!j.contains("version") || j["version"].get<int>() != 1) {
    throw std::invalid_argument("model file: unsupported version");
  }
  for (const char* key : {"dim", "c0", "terms", "J"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("model file: missing field '") +
                                  key + "'");
    }
  }
  ComplexModel model;
  model.spec.dim = j["dim"].get<std::size_t>();
  model.spec.c0 = j["c0"].get<double>();
  const std::size_t n = model.spec.dim;
  if (n == 0 || n > 64) {
    throw std::invalid_argument("model file: dimension out of range (1..64)");
  }
  for (const Json& jt : j["terms"]) {
    if (!jt.contains("c") || !jt.contains("psi")) {
      throw std::invalid_argument("model file: term needs 'c' and 'psi'");
    }
    CurvatureTerm term{jt["c"].get<double>(),
                       matrix_from_json(jt["psi"], "model file term")};
    if (term.psi.rows() != n || term.psi.cols() != n) {
      throw std::invalid_argument("model file: term shape mismatch");
    }
    model.spec.terms.push_back(std::move(term));
  }
  model.J = matrix_from_json(j["J"], "model file J");
  if (j.contains("provenance")) {
    const Json& prov = j["provenance"];
    CliffordFamily fam;
    fam.dim = n;
    for (const Json& g : prov["generators"]) {
      fam.generators.push_back(matrix_from_json(g, "model file generator"));
    }
    if (prov.contains("rank") &&
        prov["rank"].get<std::size_t>() != fam.generators.size()) {
      throw std::invalid_argument(
          "model file: provenance rank does not match its generators");
    }
    const FamilyReport fr = verify_family(fam, 1e-8);
    if (!fr.pass) {
      throw std::invalid_argument(
          "model file: provenance generators do not form a Clifford family");
    }
    ModelProvenance mp{std::move(fam), std::nullopt};
    if (prov.contains("reparam")) {
      mp.reparam = matrix_from_json(prov["reparam"], "model file reparam");
    }
    model.provenance = std::move(mp);
  }
  if (j.contains("probes")) {
    for (const Json& p : j["probes"]) {
      model.probes.push_back(vector_from_json(p, "model file probe"));
    }
  }
  validate_model(model);  // orthogonality, skewness, shapes
  return model;
}

// ---------------------------------------------------------------------------
// Digest and file plumbing
// ---------------------------------------------------------------------------

inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::string model_digest(const ComplexModel& model) {
  return fnv1a64_hex(model_to_json(model).dump());
}

inline void write_text_atomic(const std::string& path,
                              const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp);
    }
    out << content;
    if (!out.good()) {
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot move " + tmp + " into place");
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

// ---------------------------------------------------------------------------
// Report files
// ---------------------------------------------------------------------------

inline Json census_to_json(const SampleCensus& c) {
  Json out;
  out["extra"] = c.extra;
  out["basis"] = c.basis;
  out["pairs"] = c.pairs;
  out["family"] = c.family;
  out["random"] = c.random;
  out["total"] = c.total();
  return out;
}

inline Json clusters_to_json(const std::vector<std::pair<double, int>>& cl) {
  Json out = Json::array();
  for (const auto& c : cl) {
    Json e;
    e["value"] = c.first;
    e["multiplicity"] = c.second;
    out.push_back(std::move(e));
  }
  return out;
}

inline Json report_to_json(const VerificationReport& rep,
                           const std::string& command,
                           const std::string& digest, std::uint64_t seed) {
  Json out;
  out["version"] = 1;
  out["command"] = command;
  out["check"] = rep.check;
  out["model"] = digest;
  out["seed"] = seed;
  out["rng"] = "mt19937_64";
  out["census"] = census_to_json(rep.census);
  Json tols;
  tols["tolerance"] = rep.tolerance;
  tols["cluster_gap"] = rep.cluster_gap;
  out["tolerances"] = std::move(tols);
  out["verdict"] = rep.pass ? "pass" : "fail";
  out["max_deviation"] = rep.max_deviation;
  out["spectrum"] = clusters_to_json(rep.reference_spectrum);
  if (!rep.reference_sample.empty()) {
    out["reference_sample"] = vector_to_json(rep.reference_sample);
  }
  Json chans = Json::array();
  for (const ChannelReport& ch : rep.channels) {
    Json c;
    c["name"] = ch.name;
    c["max_deviation"] = ch.max_deviation;
    c["tolerance"] = ch.tolerance;
    c["pass"] = ch.pass;
    chans.push_back(std::move(c));
  }
  out["channels"] = std::move(chans);
  Json wits = Json::array();
  for (const Witness& w : rep.witnesses) {
    Json jw;
    jw["sample"] = vector_to_json(w.sample);
    jw["deviation"] = w.deviation;
    jw["note"] = w.note;
    jw["spectrum"] = clusters_to_json(w.spectrum);
    wits.push_back(std::move(jw));
  }
  out["witnesses"] = std::move(wits);
  return out;
}

inline const char* status_name(Status s) {
  switch (s) {
    case Status::ComplexOsserman:
      return "complex-osserman";
    case Status::NotComplexOsserman:
      return "not-complex-osserman";
    default:
      return "abstain";
  }
}

inline Json verdict_to_json(const ClassifierVerdict& v,
                            const std::string& command,
                            const std::string& digest) {
  Json out;
  out["version"] = 1;
  out["command"] = command;
  out["check"] = "classify";
  out["model"] = digest;
  out["verdict"] = status_name(v.status);
  out["case"] = v.case_label;
  if (!v.detail.empty()) out["detail"] = v.detail;
  out["residual"] = v.residual;
  if (v.reparam) out["reparam"] = matrix_to_json(*v.reparam);
  if (v.reparam_coeffs) out["reparam_coeffs"] = vector_to_json(*v.reparam_coeffs);
  if (v.j_coordinates) out["j_coordinates"] = vector_to_json(*v.j_coordinates);
  return out;
}

}  // namespace cliffjac
