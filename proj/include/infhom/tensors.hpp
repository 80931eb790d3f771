#pragma once

#include <cstddef>
#include <vector>

#include "infhom/linalg.hpp"

namespace infhom {

namespace detail {
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  // flat index of (i,j), i < j, in lexicographic order
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}
}  // namespace detail

/// Skew-symmetric bilinear map R^n x R^n -> R^n, stored by components on the
/// standard basis with only i < j pairs kept; skewness is structural.
class TorsionTensor {
 public:
  TorsionTensor() = default;
  explicit TorsionTensor(std::size_t n)
      : n_(n), comps_(n * (n - 1) / 2, Vector(n)) {}

  std::size_t n() const { return n_; }

  const Vector& component(std::size_t i, std::size_t j) const {
    return comps_[detail::pair_index(n_, i, j)];
  }
  void set_component(std::size_t i, std::size_t j, Vector value) {
    if (i >= j || j >= n_) throw DimensionError("torsion component needs i < j < n");
    if (value.size() != n_) throw DimensionError("torsion component length mismatch");
    comps_[detail::pair_index(n_, i, j)] = std::move(value);
  }

  /// Bilinear skew evaluation: sum_{i<j} (u_i v_j - u_j v_i) T(e_i, e_j).
  Vector eval(const Vector& u, const Vector& v) const {
    if (u.size() != n_ || v.size() != n_)
      throw DimensionError("torsion eval: argument length mismatch");
    Vector out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const Rational c = u[i] * v[j] - u[j] * v[i];
        if (c != 0) out += c * component(i, j);
      }
    return out;
  }

  bool is_zero() const {
    for (const auto& v : comps_)
      if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const TorsionTensor&, const TorsionTensor&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Vector> comps_;
};

/// Skew-symmetric bilinear map R^n x R^n -> gl(n), same storage scheme.
class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(std::size_t n)
      : n_(n), comps_(n * (n - 1) / 2, Matrix(n, n)) {}

  std::size_t n() const { return n_; }

  const Matrix& component(std::size_t i, std::size_t j) const {
    return comps_[detail::pair_index(n_, i, j)];
  }
  void set_component(std::size_t i, std::size_t j, Matrix value) {
    if (i >= j || j >= n_) throw DimensionError("curvature component needs i < j < n");
    if (value.rows() != n_ || value.cols() != n_)
      throw DimensionError("curvature component shape mismatch");
    comps_[detail::pair_index(n_, i, j)] = std::move(value);
  }

  Matrix eval(const Vector& u, const Vector& v) const {
    if (u.size() != n_ || v.size() != n_)
      throw DimensionError("curvature eval: argument length mismatch");
    Matrix out(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const Rational c = u[i] * v[j] - u[j] * v[i];
        if (c != 0) out += c * component(i, j);
      }
    return out;
  }

  bool is_zero() const {
    for (const auto& m : comps_)
      if (!m.is_zero()) return false;
    return true;
  }

  friend bool operator==(const CurvatureTensor&, const CurvatureTensor&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Matrix> comps_;
};

/// Linear map R^n -> gl(n); a lifting of the inner-torsion class modulo h.
class Lifting {
 public:
  Lifting() = default;
  explicit Lifting(std::size_t n) : n_(n), mats_(n, Matrix(n, n)) {}
  Lifting(std::size_t n, std::vector<Matrix> mats) : n_(n), mats_(std::move(mats)) {
    if (mats_.size() != n_) throw DimensionError("lifting needs n matrices");
    for (const auto& m : mats_)
      if (m.rows() != n_ || m.cols() != n_)
        throw DimensionError("lifting matrix shape mismatch");
  }

  std::size_t n() const { return n_; }
  const Matrix& operator[](std::size_t i) const { return mats_[i]; }
  void set(std::size_t i, Matrix m) {
    if (m.rows() != n_ || m.cols() != n_)
      throw DimensionError("lifting matrix shape mismatch");
    mats_[i] = std::move(m);
  }

  Matrix eval(const Vector& u) const {
    if (u.size() != n_) throw DimensionError("lifting eval: argument length mismatch");
    Matrix out(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (u[i] != 0) out += u[i] * mats_[i];
    return out;
  }

  bool is_zero() const {
    for (const auto& m : mats_)
      if (!m.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Lifting&, const Lifting&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Matrix> mats_;
};

inline Matrix eval_R(const CurvatureTensor& r, const Vector& u, const Vector& v) {
  return r.eval(u, v);
}
inline Vector eval_T(const TorsionTensor& t, const Vector& u, const Vector& v) {
  return t.eval(u, v);
}
inline Matrix eval_lambda(const Lifting& lam, const Vector& u) { return lam.eval(u); }

/// (D_L T)(u,v) = L T(u,v) - T(Lu,v) - T(u,Lv), componentwise on the basis.
inline TorsionTensor derivation_action_on_T(const Matrix& l, const TorsionTensor& t) {
  const std::size_t n = t.n();
  if (!l.is_square() || l.rows() != n)
    throw DimensionError("derivation_action_on_T: dimension mismatch");
  TorsionTensor out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector v = l * t.component(i, j);
      v -= t.eval(l.col(i), Vector::unit(n, j));
      v -= t.eval(Vector::unit(n, i), l.col(j));
      out.set_component(i, j, std::move(v));
    }
  return out;
}

/// (D_L R)(u,v) = [L, R(u,v)] - R(Lu,v) - R(u,Lv).
inline CurvatureTensor derivation_action_on_R(const Matrix& l, const CurvatureTensor& r) {
  const std::size_t n = r.n();
  if (!l.is_square() || l.rows() != n)
    throw DimensionError("derivation_action_on_R: dimension mismatch");
  CurvatureTensor out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix m = mat_bracket(l, r.component(i, j));
      m -= r.eval(l.col(i), Vector::unit(n, j));
      m -= r.eval(Vector::unit(n, i), l.col(j));
      out.set_component(i, j, std::move(m));
    }
  return out;
}

/// Sum of f over the cyclic permutations of (x, y, z).
template <typename F, typename Arg>
auto cyclic_sum(F&& f, const Arg& x, const Arg& y, const Arg& z) {
  auto acc = f(x, y, z);
  acc += f(y, z, x);
  acc += f(z, x, y);
  return acc;
}

/// The m-part bracket induced by a lifting: lambda(u) v - lambda(v) u.
inline Vector lambda_bracket(const Lifting& lam, const Vector& u, const Vector& v) {
  return lam.eval(u) * v - lam.eval(v) * u;
}

namespace detail {
// Bookkeeping terms from the Jacobi computation; used by tests to pin the
// two identities they satisfy for every lifting.
inline Vector s_term(const Matrix& l, const Lifting& lam, const Vector& x,
                     const Vector& y) {
  return mat_bracket(l, lam.eval(x)) * y - lam.eval(y) * (l * x);
}
inline Vector t_term(const Lifting& lam, const Vector& x, const Vector& y,
                     const Vector& z) {
  return mat_bracket(lam.eval(x), lam.eval(y)) * z -
         lam.eval(z) * lambda_bracket(lam, x, y);
}
}  // namespace detail

/// The data a certificate judges: curvature-type and torsion-type tensors
/// plus a lifting of the inner torsion.
struct CharTriple {
  CurvatureTensor R;
  TorsionTensor T;
  Lifting lam;

  std::size_t n() const { return R.n(); }
  friend bool operator==(const CharTriple&, const CharTriple&) = default;
};

}  // namespace infhom
