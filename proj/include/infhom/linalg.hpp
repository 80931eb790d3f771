#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "infhom/rational.hpp"

namespace infhom {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a family that must be linearly independent is not; `index` is
/// the first element that lies in the span of its predecessors.
struct DependentBasisError : std::invalid_argument {
  DependentBasisError(std::size_t index_, const std::string& what_)
      : std::invalid_argument(what_), index(index_) {}
  std::size_t index;
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : entries_(n) {}
  Vector(std::initializer_list<Rational> xs) : entries_(xs) {}

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return entries_.size(); }
  Rational& operator[](std::size_t i) { return entries_[i]; }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }

  bool is_zero() const {
    for (const auto& x : entries_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Vector&, const Vector&) = default;

  Vector& operator+=(const Vector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < size(); ++i) entries_[i] += o[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < size(); ++i) entries_[i] -= o[i];
    return *this;
  }
  Vector& operator*=(const Rational& c) {
    for (auto& x : entries_) x *= c;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Rational& c, Vector v) { return v *= c; }
  friend Vector operator-(Vector v) {
    for (auto& x : v.entries_) x = -x;
    return v;
  }

 private:
  void check_same_size(const Vector& o) const {
    if (o.size() != size()) throw DimensionError("vector size mismatch");
  }
  std::vector<Rational> entries_;
};

/// Dense rational matrix, row-major.  Square matrices double as elements of
/// gl(n); rectangular shapes appear only in linear-system plumbing.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vector row(std::size_t i) const {
    Vector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const Rational& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Rational& c, Matrix m) { return m *= c; }
  friend Matrix operator-(Matrix m) {
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
    Vector w(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) w[i] += a(i, j) * v[j];
    return w;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Rational trace() const {
    if (!is_square()) throw DimensionError("trace of a non-square matrix");
    Rational t;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw DimensionError("matrix shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Commutator AB - BA on gl(n).
inline Matrix mat_bracket(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw DimensionError("mat_bracket needs square matrices of equal dimension");
  return a * b - b * a;
}

/// Row-major flattening, so matrices can enter vector-space computations.
inline Vector vec(const Matrix& m) {
  Vector v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

namespace detail {
// Pivot preference: among exact nonzero candidates pick the one whose
// numerator and denominator are smallest, which keeps intermediate
// rationals from growing more than necessary.
inline std::size_t rational_size(const Rational& q) {
  return msb(abs(numerator(q)) + 1) + msb(denominator(q));
}
}  // namespace detail

struct LinearSystemSolution {
  std::optional<Vector> solution;  // one solution of A x = b, if consistent
  std::vector<Vector> kernel;      // basis of { x : A x = 0 }
  bool consistent() const { return solution.has_value(); }
};

/// Exact Gauss-Jordan elimination with full pivoting over the rationals.
inline LinearSystemSolution solve_linear(const Matrix& a, const Vector& b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw DimensionError("solve_linear: rhs length mismatch");

  Matrix work = a;
  Vector rhs = b;
  std::vector<std::size_t> col_of(n);  // current position -> original column
  for (std::size_t j = 0; j < n; ++j) col_of[j] = j;

  std::size_t rank = 0;
  for (; rank < std::min(m, n); ++rank) {
    std::size_t pr = m, pc = n;
    std::size_t best = 0;
    for (std::size_t i = rank; i < m; ++i)
      for (std::size_t j = rank; j < n; ++j) {
        if (work(i, j) == 0) continue;
        const std::size_t sz = detail::rational_size(work(i, j));
        if (pr == m || sz < best) {
          pr = i;
          pc = j;
          best = sz;
        }
      }
    if (pr == m) break;  // remaining block is zero

    if (pr != rank) {
      for (std::size_t j = 0; j < n; ++j) std::swap(work(pr, j), work(rank, j));
      std::swap(rhs[pr], rhs[rank]);
    }
    if (pc != rank) {
      for (std::size_t i = 0; i < m; ++i) std::swap(work(i, pc), work(i, rank));
      std::swap(col_of[pc], col_of[rank]);
    }

    const Rational piv = work(rank, rank);
    for (std::size_t j = rank; j < n; ++j) work(rank, j) /= piv;
    rhs[rank] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || work(i, rank) == 0) continue;
      const Rational f = work(i, rank);
      for (std::size_t j = rank; j < n; ++j) work(i, j) -= f * work(rank, j);
      rhs[i] -= f * rhs[rank];
    }
  }

  LinearSystemSolution out;
  bool consistent = true;
  for (std::size_t i = rank; i < m; ++i)
    if (rhs[i] != 0) consistent = false;

  if (consistent) {
    Vector x(n);
    for (std::size_t i = 0; i < rank; ++i) x[col_of[i]] = rhs[i];
    out.solution = std::move(x);
  }

  out.kernel.reserve(n - rank);
  for (std::size_t f = rank; f < n; ++f) {
    Vector k(n);
    k[col_of[f]] = 1;
    for (std::size_t i = 0; i < rank; ++i) k[col_of[i]] = -work(i, f);
    out.kernel.push_back(std::move(k));
  }
  return out;
}

/// Exact inverse; std::nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto sol = solve_linear(a, Vector::unit(n, j));
    if (!sol.consistent() || !sol.kernel.empty()) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*sol.solution)[i];
  }
  return inv;
}

/// A fixed spanning family prepared for repeated membership queries.
/// Construction fails with DependentBasisError if the columns are dependent;
/// coefficients() answers "is `target` in the span, and with what exact
/// coefficients" in one elimination-free pass.
class PreparedSpan {
 public:
  PreparedSpan() = default;
  explicit PreparedSpan(std::vector<Vector> columns) : k_(columns.size()) {
    ambient_ = columns.empty() ? 0 : columns[0].size();
    for (std::size_t idx = 0; idx < columns.size(); ++idx) {
      Vector v = columns[idx];
      if (v.size() != ambient_)
        throw DimensionError("PreparedSpan: inconsistent column lengths");
      Vector c(columns.size());
      c[idx] = 1;
      reduce(v, c);
      std::size_t p = first_nonzero(v);
      if (p == v.size())
        throw DependentBasisError(
            idx, "element " + std::to_string(idx) +
                     " depends linearly on the previous ones");
      const Rational piv = v[p];
      v *= Rational(1) / piv;
      c *= Rational(1) / piv;
      // keep earlier rows reduced against the new pivot
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = rows_[r][p];
        if (f == 0) continue;
        rows_[r] -= f * v;
        coeff_rows_[r] -= f * c;
      }
      pivots_.push_back(p);
      rows_.push_back(std::move(v));
      coeff_rows_.push_back(std::move(c));
    }
  }

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }

  std::optional<std::vector<Rational>> coefficients(const Vector& target) const {
    if (target.size() != ambient_)
      throw DimensionError("PreparedSpan: target length mismatch");
    Vector v = target;
    Vector c(k_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f == 0) continue;
      v -= f * rows_[r];
      c += f * coeff_rows_[r];
    }
    if (!v.is_zero()) return std::nullopt;
    std::vector<Rational> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
    return out;
  }

  bool contains(const Vector& target) const { return coefficients(target).has_value(); }

 private:
  void reduce(Vector& v, Vector& c) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f == 0) continue;
      v -= f * rows_[r];
      c -= f * coeff_rows_[r];
    }
  }
  static std::size_t first_nonzero(const Vector& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return i;
    return v.size();
  }

  std::size_t k_ = 0;  // number of columns the span was built from
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> rows_;        // reduced echelon representatives
  std::vector<Vector> coeff_rows_;  // rows_[r] = sum_j coeff_rows_[r][j] * column_j
};

/// Membership-with-coefficients in the span of a matrix family.
/// Returns the (unique) coefficients when `candidate` lies in the span,
/// std::nullopt otherwise.  Throws DependentBasisError if the family is not
/// linearly independent.
inline std::optional<std::vector<Rational>> span_membership(
    std::span<const Matrix> basis, const Matrix& candidate) {
  std::vector<Vector> cols;
  cols.reserve(basis.size());
  for (const Matrix& m : basis) {
    if (m.rows() != candidate.rows() || m.cols() != candidate.cols())
      throw DimensionError("span_membership: shape mismatch");
    cols.push_back(vec(m));
  }
  if (basis.empty() && candidate.is_zero()) return std::vector<Rational>{};
  if (basis.empty()) return std::nullopt;
  return PreparedSpan(std::move(cols)).coefficients(vec(candidate));
}

/// Incremental span dimension tracker (no coefficient bookkeeping).
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t ambient) : ambient_(ambient) {}

  /// Inserts v; returns true iff the span grew.
  bool insert(Vector v) {
    if (v.size() != ambient_) throw DimensionError("SpanBuilder: length mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f != 0) v -= f * rows_[r];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    v *= Rational(1) / v[p];
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
  }

  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }

 private:
  std::size_t ambient_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> rows_;
};

struct Inertia {
  std::size_t positive = 0, negative = 0, zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Exact inertia (n+, n-, n0) of a symmetric rational matrix, by congruence
/// diagonalization.  When the remaining diagonal is all zero but some
/// off-diagonal entry a = S(i,j) survives, the congruence v_i <- v_i + v_j
/// makes the (i,i) entry 2a != 0, which is valid in characteristic zero.
inline Inertia symmetric_inertia(const Matrix& s) {
  if (!s.is_square()) throw DimensionError("symmetric_inertia: matrix not square");
  if (!s.is_symmetric())
    throw std::invalid_argument("symmetric_inertia: matrix not symmetric");

  const std::size_t n = s.rows();
  Matrix w = s;
  Inertia out;

  const auto add_row_col = [&](std::size_t dst, std::size_t src) {
    for (std::size_t j = 0; j < n; ++j) w(dst, j) += w(src, j);
    for (std::size_t i = 0; i < n; ++i) w(i, dst) += w(i, src);
  };
  const auto swap_row_col = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(w(a, j), w(b, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(w(i, a), w(i, b));
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t d = n;
      for (std::size_t i = k + 1; i < n && d == n; ++i)
        if (w(i, i) != 0) d = i;
      if (d < n) {
        swap_row_col(k, d);
      } else {
        std::size_t pi = n, pj = n;
        for (std::size_t i = k; i < n && pi == n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (w(i, j) != 0) {
              pi = i;
              pj = j;
              break;
            }
        if (pi == n) {
          out.zero += n - k;
          return out;
        }
        add_row_col(pi, pj);
        swap_row_col(k, pi);
      }
    }
    const Rational piv = w(k, k);
    (piv > 0 ? out.positive : out.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w(i, k) == 0) continue;
      const Rational f = w(i, k) / piv;
      for (std::size_t j = 0; j < n; ++j) w(i, j) -= f * w(k, j);
      for (std::size_t j = 0; j < n; ++j) w(j, i) -= f * w(j, k);
    }
  }
  return out;
}

}  // namespace infhom
