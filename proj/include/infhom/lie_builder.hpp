#pragma once

#include <string>
#include <utility>
#include <vector>

#include "infhom/check.hpp"
#include "infhom/conditions.hpp"
#include "infhom/subalgebra.hpp"
#include "infhom/tensors.hpp"

namespace infhom {

/// Structure constants of a = h (+) m in the basis (h_1..h_k, e_1..e_n).
/// table[a][b] holds the coefficient vector of [basis_a, basis_b]; the table
/// is antisymmetric by construction.
struct LieAlgebraStructure {
  std::size_t h_dim = 0;
  std::size_t m_dim = 0;
  std::vector<std::vector<Vector>> table;

  std::size_t dim() const { return h_dim + m_dim; }

  const Vector& bracket(std::size_t a, std::size_t b) const { return table[a][b]; }

  /// Bilinear extension of the basis table.
  Vector bracket_of(const Vector& x, const Vector& y) const {
    if (x.size() != dim() || y.size() != dim())
      throw DimensionError("bracket_of: coordinate length mismatch");
    Vector out(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < dim(); ++b) {
        if (y[b] == 0) continue;
        out += (x[a] * y[b]) * table[a][b];
      }
    }
    return out;
  }

  /// ad_a as a dim x dim matrix: column b is [basis_a, basis_b].
  Matrix ad(std::size_t a) const {
    Matrix m(dim(), dim());
    for (std::size_t b = 0; b < dim(); ++b)
      for (std::size_t c = 0; c < dim(); ++c) m(c, b) = table[a][b][c];
    return m;
  }

  std::vector<std::string> basis_labels() const {
    std::vector<std::string> labels;
    labels.reserve(dim());
    for (std::size_t a = 0; a < h_dim; ++a) labels.push_back("h" + std::to_string(a + 1));
    for (std::size_t i = 0; i < m_dim; ++i) labels.push_back("e" + std::to_string(i + 1));
    return labels;
  }

  friend bool operator==(const LieAlgebraStructure&, const LieAlgebraStructure&) = default;
};

/// Raised when a bracket component fails to land in h; `recheck` names the
/// certificate condition whose failure explains it.
struct BuildError : std::runtime_error {
  BuildError(const std::string& what_, std::string recheck_, Witness w)
      : std::runtime_error(what_), recheck(std::move(recheck_)), witness(std::move(w)) {}
  std::string recheck;
  Witness witness;
};

/// The bracket on a = h (+) m induced by (h, R0, lambda), for torsion-free
/// certified data:
///   [X,Y]^m = lambda(X) Y - lambda(Y) X
///   [X,Y]^h = [lambda(X), lambda(Y)] - lambda([X,Y]^m) - R0(X,Y)
///   [L,X]^m = L X
///   [L,X]^h = [L, lambda(X)] - lambda(L X)
///   [L,T]   = the bracket of h
/// extended antisymmetrically.  With this orientation of [X,Y]^h the
/// curvature form of the associated local model reproduces R0 on the nose;
/// the constant-curvature family then lands on so(n+1) for positive c and
/// so(n,1) for negative c, as it should.
inline LieAlgebraStructure build_bracket(const LieSubalgebra& h,
                                         const CurvatureTensor& r, const Lifting& lam) {
  const std::size_t k = h.dim();
  const std::size_t n = r.n();
  if (lam.n() != n || h.n() != n) throw DimensionError("build_bracket: dimension mismatch");

  LieAlgebraStructure a;
  a.h_dim = k;
  a.m_dim = n;
  a.table.assign(k + n, std::vector<Vector>(k + n, Vector(k + n)));

  const auto h_coeffs = [&](const Matrix& m, const char* recheck, Witness w) {
    auto c = h.membership(m);
    if (!c)
      throw BuildError(std::string("bracket component is not in h; re-check ") + recheck,
                       recheck, std::move(w.with(m)));
    return *c;
  };

  // h x h block
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p + 1; q < k; ++q) {
      const auto c = h_coeffs(mat_bracket(h[p], h[q]), "closure",
                              Witness{}
                                  .at("a", static_cast<std::int64_t>(p))
                                  .at("b", static_cast<std::int64_t>(q)));
      Vector v(k + n);
      for (std::size_t s = 0; s < k; ++s) v[s] = c[s];
      a.table[p][q] = v;
      a.table[q][p] = -v;
    }

  // h x m block
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t i = 0; i < n; ++i) {
      const Vector lx = h[p].col(i);
      const auto c =
          h_coeffs(mat_bracket(h[p], lam[i]) - lam.eval(lx), "inf_invariance_lambda",
                   Witness{}
                       .at("L", static_cast<std::int64_t>(p))
                       .at("u", static_cast<std::int64_t>(i)));
      Vector v(k + n);
      for (std::size_t s = 0; s < k; ++s) v[s] = c[s];
      for (std::size_t s = 0; s < n; ++s) v[k + s] = lx[s];
      a.table[p][k + i] = v;
      a.table[k + i][p] = -v;
    }

  // m x m block
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector w = lam[i].col(j) - lam[j].col(i);
      Matrix hm = mat_bracket(lam[i], lam[j]) - lam.eval(w) - r.component(i, j);
      const auto c = h_coeffs(std::move(hm), "curvature_relation",
                              Witness{}
                                  .at("i", static_cast<std::int64_t>(i))
                                  .at("j", static_cast<std::int64_t>(j)));
      Vector v(k + n);
      for (std::size_t s = 0; s < k; ++s) v[s] = c[s];
      for (std::size_t s = 0; s < n; ++s) v[k + s] = w[s];
      a.table[k + i][k + j] = v;
      a.table[k + j][k + i] = -v;
    }

  return a;
}

/// Jacobi identity over all basis triples, exactly.
inline CheckResult check_jacobi(const LieAlgebraStructure& a) {
  const std::size_t d = a.dim();
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = x + 1; y < d; ++y)
      for (std::size_t z = y + 1; z < d; ++z) {
        Vector s = a.bracket_of(a.bracket(x, y), Vector::unit(d, z));
        s += a.bracket_of(a.bracket(y, z), Vector::unit(d, x));
        s += a.bracket_of(a.bracket(z, x), Vector::unit(d, y));
        if (!s.is_zero())
          return CheckResult::fail(Witness{}
                                       .at("x", static_cast<std::int64_t>(x))
                                       .at("y", static_cast<std::int64_t>(y))
                                       .at("z", static_cast<std::int64_t>(z))
                                       .describe("Jacobi identity fails on this triple")
                                       .with(std::move(s)));
      }
  return CheckResult::ok();
}

/// Killing form B(x,y) = tr(ad_x ad_y) from the structure constants.
inline Matrix killing_form(const LieAlgebraStructure& a) {
  const std::size_t d = a.dim();
  std::vector<Matrix> ads;
  ads.reserve(d);
  for (std::size_t i = 0; i < d; ++i) ads.push_back(a.ad(i));
  Matrix b(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Rational tr;
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) tr += ads[i](p, q) * ads[j](q, p);
      b(i, j) = tr;
      b(j, i) = std::move(tr);
    }
  return b;
}

inline Inertia killing_inertia(const LieAlgebraStructure& a) {
  return symmetric_inertia(killing_form(a));
}

/// Dimensions of the derived series a', a'', ... until it stabilizes.
inline std::vector<std::size_t> derived_series_dims(const LieAlgebraStructure& a) {
  const std::size_t d = a.dim();
  std::vector<Vector> current;
  current.reserve(d);
  for (std::size_t i = 0; i < d; ++i) current.push_back(Vector::unit(d, i));

  std::vector<std::size_t> dims;
  std::size_t prev = d;
  for (;;) {
    SpanBuilder span(d);
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j)
        span.insert(a.bracket_of(current[i], current[j]));
    const std::size_t dim = span.dim();
    dims.push_back(dim);
    if (dim == 0 || dim == prev) break;
    prev = dim;
    current = span.rows();
  }
  return dims;
}

/// A linear map m -> h, stored as h-basis coefficients of delta(e_i).
struct LiftShift {
  std::vector<std::vector<Rational>> coeffs;  // coeffs[i] has h.dim() entries

  Lifting apply_to(const LieSubalgebra& h, const Lifting& lam, int direction) const {
    Lifting out(lam.n());
    for (std::size_t i = 0; i < lam.n(); ++i) {
      Matrix d(lam.n(), lam.n());
      for (std::size_t a = 0; a < h.dim(); ++a) d += coeffs[i][a] * h[a];
      out.set(i, direction >= 0 ? lam[i] + d : lam[i] - d);
    }
    return out;
  }
};

/// The change-of-lifting isomorphism phi = [[Id_h, delta], [0, Id_m]]:
/// checks phi([x,y]_lam) = [phi x, phi y]_(lam - delta) on all basis pairs.
inline CheckResult lifting_shift_isomorphism(const LieSubalgebra& h,
                                             const CurvatureTensor& r,
                                             const Lifting& lam,
                                             const LiftShift& delta) {
  const std::size_t k = h.dim(), n = r.n();
  const Lifting shifted = delta.apply_to(h, lam, -1);
  const LieAlgebraStructure a = build_bracket(h, r, lam);
  const LieAlgebraStructure a2 = build_bracket(h, r, shifted);

  const auto phi = [&](const Vector& x) {
    Vector out = x;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t s = 0; s < k; ++s) out[s] += delta.coeffs[i][s] * x[k + i];
    return out;
  };

  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = p + 1; q < a.dim(); ++q) {
      const Vector lhs = phi(a.bracket(p, q));
      const Vector rhs =
          a2.bracket_of(phi(Vector::unit(a.dim(), p)), phi(Vector::unit(a.dim(), q)));
      if (lhs != rhs)
        return CheckResult::fail(Witness{}
                                     .at("a", static_cast<std::int64_t>(p))
                                     .at("b", static_cast<std::int64_t>(q))
                                     .describe("phi does not intertwine the brackets")
                                     .with(lhs - rhs));
    }
  return CheckResult::ok();
}

/// lambda-bar on a: the lifting on m, the matrix action on m for elements of
/// h.  Verifies [lambda_bar(L), lambda_bar(X)] = lambda_bar([L, X]) exactly
/// for L over the h-basis and X over the full basis of a.
inline CheckResult lambda_bar_equivariance(const LieSubalgebra& h, const Lifting& lam,
                                           const LieAlgebraStructure& a) {
  const std::size_t k = a.h_dim, n = a.m_dim;
  const auto lambda_bar = [&](const Vector& x) {
    Matrix out(n, n);
    for (std::size_t s = 0; s < k; ++s)
      if (x[s] != 0) out += x[s] * h[s];
    Vector m_part(n);
    for (std::size_t i = 0; i < n; ++i) m_part[i] = x[k + i];
    out += lam.eval(m_part);
    return out;
  };

  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t b = 0; b < a.dim(); ++b) {
      const Matrix lhs =
          mat_bracket(lambda_bar(Vector::unit(a.dim(), l)), lambda_bar(Vector::unit(a.dim(), b)));
      const Matrix rhs = lambda_bar(a.bracket(l, b));
      if (lhs != rhs)
        return CheckResult::fail(Witness{}
                                     .at("L", static_cast<std::int64_t>(l))
                                     .at("X", static_cast<std::int64_t>(b))
                                     .describe("lambda-bar is not equivariant on this pair")
                                     .with(lhs - rhs));
    }
  return CheckResult::ok();
}

}  // namespace infhom
