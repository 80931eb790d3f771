#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "infhom/conditions.hpp"
#include "infhom/lie_builder.hpp"
#include "infhom/realizer.hpp"
#include "infhom/subalgebra.hpp"

namespace infhom {

using Json = nlohmann::ordered_json;

/// Schema or validation failure, with the JSON path of the offending field.
struct ParseError : std::runtime_error {
  ParseError(const std::string& path_, const std::string& why)
      : std::runtime_error(path_ + ": " + why), path(path_) {}
  std::string path;
};

// ---------------------------------------------------------------------------
// rationals, vectors, matrices
// ---------------------------------------------------------------------------

inline Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Rational(BigInt(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected an integer or a rational string \"p/q\"");
}

inline Json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) {
    const BigInt num = numerator(q);
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
      return Json(static_cast<std::int64_t>(num));
  }
  return Json(rational_to_string(q));
}

inline Vector vector_from_json(const Json& j, const std::string& path, std::size_t n) {
  if (!j.is_array() || j.size() != n)
    throw ParseError(path, "expected an array of " + std::to_string(n) + " rationals");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = rational_from_json(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

inline Matrix matrix_from_json(const Json& j, const std::string& path, std::size_t n) {
  if (!j.is_array() || j.size() != n)
    throw ParseError(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                               " matrix (array of rows)");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n)
      throw ParseError(row_path, "expected a row of " + std::to_string(n) + " rationals");
    for (std::size_t k = 0; k < n; ++k)
      m(i, k) = rational_from_json(j[i][k], row_path + "[" + std::to_string(k) + "]");
  }
  return m;
}

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_to_json(v[i]));
  return out;
}

inline Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// instance files
// ---------------------------------------------------------------------------

/// On-disk description of a candidate (h, R0, T0, lambda [, generators]).
/// All indices are 0-based; sparse R0/T0 lists carry only i < j entries and
/// omitted pairs mean zero.
struct InstanceFile {
  std::size_t dimension = 0;
  Json metadata = nullptr;
  std::vector<Matrix> h_basis;
  Lifting lambda;
  CurvatureTensor R0;
  TorsionTensor T0;
  std::vector<Matrix> group_generators;

  LieSubalgebra subalgebra() const { return LieSubalgebra(dimension, h_basis); }
  CharTriple triple() const { return CharTriple{R0, T0, lambda}; }
  GroupGenerators generators() const { return GroupGenerators{group_generators}; }

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

inline InstanceFile instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("$", "instance must be a JSON object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw ParseError("dimension", "required integer field");
  const std::int64_t dim_raw = j["dimension"].get<std::int64_t>();
  if (dim_raw < 1) throw ParseError("dimension", "must be >= 1");
  const std::size_t n = static_cast<std::size_t>(dim_raw);

  InstanceFile out;
  out.dimension = n;
  out.lambda = Lifting(n);
  out.R0 = CurvatureTensor(n);
  out.T0 = TorsionTensor(n);
  if (j.contains("metadata")) out.metadata = j["metadata"];

  if (j.contains("h_basis")) {
    const Json& hb = j["h_basis"];
    if (!hb.is_array()) throw ParseError("h_basis", "expected an array of matrices");
    for (std::size_t s = 0; s < hb.size(); ++s)
      out.h_basis.push_back(
          matrix_from_json(hb[s], "h_basis[" + std::to_string(s) + "]", n));
    try {
      LieSubalgebra check(n, out.h_basis);
    } catch (const DependentBasisError& e) {
      throw ParseError("h_basis[" + std::to_string(e.index) + "]",
                       "not linearly independent of the previous basis elements");
    }
  }

  if (j.contains("lambda")) {
    const Json& lj = j["lambda"];
    if (!lj.is_array() || lj.size() != n)
      throw ParseError("lambda", "expected an array of " + std::to_string(n) + " matrices");
    for (std::size_t i = 0; i < n; ++i)
      out.lambda.set(i, matrix_from_json(lj[i], "lambda[" + std::to_string(i) + "]", n));
  }

  const auto parse_pair_list = [&](const char* key, auto&& set_component,
                                   const char* value_key) {
    if (!j.contains(key)) return;
    const Json& list = j[key];
    const std::string base(key);
    if (!list.is_array()) throw ParseError(base, "expected an array of {i, j, ...} entries");
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < list.size(); ++e) {
      const std::string path = base + "[" + std::to_string(e) + "]";
      const Json& entry = list[e];
      if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
          !entry.contains(value_key))
        throw ParseError(path, std::string("expected an object with i, j and ") + value_key);
      if (!entry["i"].is_number_integer() || !entry["j"].is_number_integer())
        throw ParseError(path, "i and j must be integers");
      const std::int64_t i_raw = entry["i"].get<std::int64_t>();
      const std::int64_t j_raw = entry["j"].get<std::int64_t>();
      if (i_raw < 0 || j_raw < 0 || j_raw >= dim_raw || i_raw >= dim_raw)
        throw ParseError(path, "indices out of range");
      if (i_raw >= j_raw) throw ParseError(path, "i<j required");
      const auto ij = std::make_pair(static_cast<std::size_t>(i_raw),
                                     static_cast<std::size_t>(j_raw));
      for (const auto& prev : seen)
        if (prev == ij) throw ParseError(path, "duplicate (i,j) pair");
      seen.push_back(ij);
      set_component(ij.first, ij.second, entry[value_key], path);
    }
  };

  parse_pair_list(
      "R0",
      [&](std::size_t i, std::size_t jj, const Json& value, const std::string& path) {
        out.R0.set_component(i, jj, matrix_from_json(value, path + ".matrix", n));
      },
      "matrix");
  parse_pair_list(
      "T0",
      [&](std::size_t i, std::size_t jj, const Json& value, const std::string& path) {
        out.T0.set_component(i, jj, vector_from_json(value, path + ".vector", n));
      },
      "vector");

  if (j.contains("group_generators")) {
    const Json& gj = j["group_generators"];
    if (!gj.is_array())
      throw ParseError("group_generators", "expected an array of matrices");
    for (std::size_t g = 0; g < gj.size(); ++g) {
      const std::string path = "group_generators[" + std::to_string(g) + "]";
      Matrix m = matrix_from_json(gj[g], path, n);
      if (!inverse(m)) throw ParseError(path, "generator is singular");
      out.group_generators.push_back(std::move(m));
    }
  }

  return out;
}

inline Json instance_to_json(const InstanceFile& inst) {
  const std::size_t n = inst.dimension;
  Json out = Json::object();
  out["dimension"] = n;
  if (!inst.metadata.is_null()) out["metadata"] = inst.metadata;
  Json hb = Json::array();
  for (const auto& m : inst.h_basis) hb.push_back(matrix_to_json(m));
  out["h_basis"] = std::move(hb);
  Json lj = Json::array();
  for (std::size_t i = 0; i < n; ++i) lj.push_back(matrix_to_json(inst.lambda[i]));
  out["lambda"] = std::move(lj);
  Json rj = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!inst.R0.component(i, j).is_zero()) {
        Json entry = Json::object();
        entry["i"] = i;
        entry["j"] = j;
        entry["matrix"] = matrix_to_json(inst.R0.component(i, j));
        rj.push_back(std::move(entry));
      }
  out["R0"] = std::move(rj);
  Json tj = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!inst.T0.component(i, j).is_zero()) {
        Json entry = Json::object();
        entry["i"] = i;
        entry["j"] = j;
        entry["vector"] = vector_to_json(inst.T0.component(i, j));
        tj.push_back(std::move(entry));
      }
  out["T0"] = std::move(tj);
  if (!inst.group_generators.empty()) {
    Json gj = Json::array();
    for (const auto& m : inst.group_generators) gj.push_back(matrix_to_json(m));
    out["group_generators"] = std::move(gj);
  }
  return out;
}

inline InstanceFile parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  return instance_from_json(j);
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream outf(path);
  if (!outf) throw ParseError(path, "cannot open file for writing");
  outf << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

inline Json witness_to_json(const Witness& w) {
  Json out = Json::object();
  Json idx = Json::object();
  for (const auto& [name, value] : w.indices) idx[name] = value;
  out["indices"] = std::move(idx);
  out["description"] = w.description;
  if (w.matrix_value)
    out["value"] = matrix_to_json(*w.matrix_value);
  else if (w.vector_value)
    out["value"] = vector_to_json(*w.vector_value);
  else
    out["value"] = nullptr;
  return out;
}

inline Json certificate_to_json(const CertificateReport& report) {
  Json out = Json::object();
  out["verdict"] = report.pass() ? "pass" : "fail";
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json entry = Json::object();
    entry["name"] = c.name;
    entry["pass"] = c.result.pass;
    entry["witness"] = c.result.witness ? witness_to_json(*c.result.witness) : Json(nullptr);
    checks.push_back(std::move(entry));
  }
  out["checks"] = std::move(checks);
  Json notes = Json::array();
  for (const auto& n : report.notes) notes.push_back(n);
  out["notes"] = std::move(notes);
  return out;
}

inline std::string certificate_to_text(const CertificateReport& report) {
  std::ostringstream out;
  out << "verdict: " << (report.pass() ? "pass" : "fail") << "\n";
  for (const auto& c : report.checks) {
    out << "  " << c.name << ": " << (c.result.pass ? "pass" : "fail") << "\n";
    if (c.result.witness) {
      out << "    witness:";
      for (const auto& [name, value] : c.result.witness->indices)
        out << " " << name << "=" << value;
      out << "\n    " << c.result.witness->description << "\n";
    }
  }
  for (const auto& n : report.notes) out << "note: " << n << "\n";
  return out.str();
}

inline Json build_output_to_json(const LieAlgebraStructure& a, const CheckResult& jacobi,
                                 const Inertia& inertia,
                                 const std::vector<std::size_t>& derived_dims) {
  Json out = Json::object();
  out["dim"] = a.dim();
  Json basis = Json::array();
  for (const auto& label : a.basis_labels()) basis.push_back(label);
  out["basis"] = std::move(basis);
  Json sc = Json::array();
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = p + 1; q < a.dim(); ++q) {
      Json entry = Json::object();
      entry["a"] = p;
      entry["b"] = q;
      entry["bracket"] = vector_to_json(a.bracket(p, q));
      sc.push_back(std::move(entry));
    }
  out["structure_constants"] = std::move(sc);
  out["killing_inertia"] = Json::array({inertia.positive, inertia.negative, inertia.zero});
  Json ds = Json::array();
  for (const auto d : derived_dims) ds.push_back(d);
  out["derived_series"] = std::move(ds);
  out["jacobi"] = jacobi.pass ? "pass" : "fail";
  if (!jacobi.pass) out["jacobi_witness"] = witness_to_json(*jacobi.witness);
  return out;
}

inline Json fd_report_to_json(const FdReport& r) {
  Json out = Json::object();
  out["pass"] = r.pass;
  out["deviation_at_identity"] = r.deviation_at_identity;
  out["max_deviation"] = r.max_deviation;
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json entry = Json::object();
    entry["coords"] = p.coords;
    entry["deviation"] = p.deviation;
    pts.push_back(std::move(entry));
  }
  out["points"] = std::move(pts);
  return out;
}

inline Json realize_output_to_json(const AdjointRealization& adj,
                                   const RealizationConfig& cfg, const FdReport* curvature,
                                   const FdReport* inner_torsion) {
  Json out = Json::object();
  out["status"] = adj.supported ? "ok" : "unsupported";
  if (!adj.supported) {
    out["reason"] = adj.reason;
    Json cb = Json::array();
    for (const auto& v : adj.center_basis) cb.push_back(vector_to_json(v));
    out["center_basis"] = std::move(cb);
    return out;
  }
  out["fd_step"] = cfg.fd_step;
  out["tolerance"] = cfg.tolerance;
  out["seed"] = cfg.seed;
  out["curvature"] = fd_report_to_json(*curvature);
  out["inner_torsion"] = fd_report_to_json(*inner_torsion);
  out["pass"] = curvature->pass && inner_torsion->pass;
  return out;
}

}  // namespace infhom
