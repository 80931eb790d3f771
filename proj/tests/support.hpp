#pragma once

// Shared test fixtures: deterministic random generators over small
// rationals, the standard matrices the corpus instances are built from, and
// file helpers for the bundled instances and golden reports.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "infhom/infhom.hpp"

namespace testsupport {

using namespace infhom;

inline std::string instance_dir() { return INFHOM_INSTANCE_DIR; }
inline std::string golden_dir() { return INFHOM_GOLDEN_DIR; }
inline std::string instance_path(const std::string& name) {
  return instance_dir() + "/" + name + ".json";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// Small random rationals: numerators in [-9, 9], denominators in [1, 4].
class RationalGen {
 public:
  explicit RationalGen(std::uint64_t seed) : rng_(seed) {}

  Rational next() {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    return Rational(num(rng_), den(rng_));
  }

  Vector vector(std::size_t n) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = next();
    return v;
  }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = next();
    return m;
  }

  TorsionTensor torsion(std::size_t n) {
    TorsionTensor t(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) t.set_component(i, j, vector(n));
    return t;
  }

  CurvatureTensor curvature(std::size_t n) {
    CurvatureTensor r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) r.set_component(i, j, matrix(n, n));
    return r;
  }

  Lifting lifting(std::size_t n) {
    Lifting l(n);
    for (std::size_t i = 0; i < n; ++i) l.set(i, matrix(n, n));
    return l;
  }

  /// A random h-valued shift of the lifting, as h-basis coefficients.
  LiftShift lift_shift(std::size_t n, std::size_t h_dim) {
    LiftShift d;
    d.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      d.coeffs[i].resize(h_dim);
      for (std::size_t a = 0; a < h_dim; ++a) d.coeffs[i][a] = next();
    }
    return d;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Rotation generator of so(2).
inline Matrix rot2() { return Matrix{{0, -1}, {1, 0}}; }

/// E_{ij} (0-based) in gl(n).
inline Matrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

/// L_{ij} = E_{ji} - E_{ij}: the rotation sending e_i to e_j.
inline Matrix so_rotation(std::size_t n, std::size_t i, std::size_t j) {
  return unit_matrix(n, j, i) - unit_matrix(n, i, j);
}

inline std::vector<Matrix> so_basis(std::size_t n) {
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) basis.push_back(so_rotation(n, i, j));
  return basis;
}

/// ad_x for the cross product on R^3: ad_x(y) = x cross y.
inline Matrix cross_ad(const Vector& x) {
  Matrix m(3, 3);
  m(0, 1) = -x[2];
  m(0, 2) = x[1];
  m(1, 0) = x[2];
  m(1, 2) = -x[0];
  m(2, 0) = -x[1];
  m(2, 1) = x[0];
  return m;
}

inline Vector cross(const Vector& a, const Vector& b) { return cross_ad(a) * b; }

/// Constant-curvature R0(u,v)w = c(<v,w>u - <u,w>v), componentwise.
inline CurvatureTensor constant_curvature(std::size_t n, const Rational& c) {
  CurvatureTensor r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      r.set_component(i, j, c * (unit_matrix(n, i, j) - unit_matrix(n, j, i)));
  return r;
}

/// The torsion of the (-) connection on SO(3): T(X,Y) = -(X x Y).
inline TorsionTensor minus_connection_torsion() {
  TorsionTensor t(3);
  t.set_component(0, 1, Vector{0, 0, -1});
  t.set_component(0, 2, Vector{0, 1, 0});
  t.set_component(1, 2, Vector{-1, 0, 0});
  return t;
}

struct NamedInstance {
  std::string name;
  InstanceFile file;
};

inline std::vector<std::string> passing_corpus_names() {
  return {"flat_e2",    "sphere_s2",
          "hyperbolic_h2", "sphere_s3",
          "abelian_r2", "liegroup_so3_minus_connection",
          "solvable_aff1", "sim2_plane"};
}

inline std::vector<std::string> corrupted_corpus_names() {
  return {"corrupted_flat_e2",   "corrupted_sphere_s2",    "corrupted_hyperbolic_h2",
          "corrupted_sphere_s3", "corrupted_closure",      "corrupted_liegroup_so3",
          "corrupted_star_r4"};
}

/// name -> the single check the instance is built to fail
inline std::vector<std::pair<std::string, std::string>> corrupted_expectations() {
  return {
      {"corrupted_flat_e2", "inf_invariance_lambda"},
      {"corrupted_sphere_s2", "inf_invariance_T"},
      {"corrupted_hyperbolic_h2", "curvature_relation"},
      {"corrupted_sphere_s3", "inf_invariance_R"},
      {"corrupted_closure", "closure"},
      {"corrupted_liegroup_so3", "curvature_relation"},
      {"corrupted_star_r4", "bianchi_1"},
  };
}

inline std::vector<NamedInstance> load_corpus(const std::vector<std::string>& names) {
  std::vector<NamedInstance> out;
  for (const auto& name : names)
    out.push_back({name, parse_instance(instance_path(name))});
  return out;
}

}  // namespace testsupport
