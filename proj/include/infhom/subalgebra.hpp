#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "infhom/check.hpp"
#include "infhom/linalg.hpp"
#include "infhom/tensors.hpp"

namespace infhom {

/// A Lie subalgebra h of gl(n), given by a linearly independent basis of
/// matrices.  The empty basis (h = 0, the {e}-structure case) is a first
/// class citizen: membership then means exact equality to zero.
///
/// Closure under the commutator is a separate check (check_closure), not a
/// construction invariant, so that ill-formed candidate inputs can still be
/// loaded and reported on.
class LieSubalgebra {
 public:
  LieSubalgebra() = default;
  LieSubalgebra(std::size_t n, std::vector<Matrix> basis)
      : n_(n), basis_(std::move(basis)) {
    for (const auto& m : basis_)
      if (!m.is_square() || m.rows() != n_)
        throw DimensionError("subalgebra basis matrix has wrong shape");
    if (!basis_.empty()) {
      std::vector<Vector> cols;
      cols.reserve(basis_.size());
      for (const auto& m : basis_) cols.push_back(vec(m));
      span_ = PreparedSpan(std::move(cols));
    }
  }

  static LieSubalgebra trivial(std::size_t n) { return LieSubalgebra(n, {}); }

  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const Matrix& operator[](std::size_t i) const { return basis_[i]; }

  /// Exact membership with coefficients: m = sum c_i basis_i, if it exists.
  std::optional<std::vector<Rational>> membership(const Matrix& m) const {
    if (!m.is_square() || m.rows() != n_)
      throw DimensionError("membership: matrix dimension mismatch");
    if (basis_.empty()) {
      if (m.is_zero()) return std::vector<Rational>{};
      return std::nullopt;
    }
    return span_.coefficients(vec(m));
  }

  bool contains(const Matrix& m) const { return membership(m).has_value(); }

  friend bool operator==(const LieSubalgebra& a, const LieSubalgebra& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Matrix> basis_;
  PreparedSpan span_;
};

inline std::optional<std::vector<Rational>> in_h(const LieSubalgebra& h,
                                                 const Matrix& m) {
  return h.membership(m);
}

/// Passes iff [b_i, b_j] lies in the span of the basis for every i < j.
inline CheckResult check_closure(const LieSubalgebra& h) {
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = i + 1; j < h.dim(); ++j) {
      Matrix br = mat_bracket(h[i], h[j]);
      if (!h.contains(br))
        return CheckResult::fail(
            Witness{}
                .at("i", static_cast<std::int64_t>(i))
                .at("j", static_cast<std::int64_t>(j))
                .describe("[basis_i, basis_j] is not in the span of the basis")
                .with(std::move(br)));
    }
  return CheckResult::ok();
}

/// A finite sample of the structural group, for the group-level invariance
/// conditions.  Invertibility of every generator is the caller's burden
/// (the instance loader enforces it).
struct GroupGenerators {
  std::vector<Matrix> generators;
};

/// Group-level invariance of (R0, T0, lambda mod h) under each generator g:
///   R0(u,v) = Ad_g R0(g^-1 u, g^-1 v)
///   T0(u,v) = g T0(g^-1 u, g^-1 v)
///   Ad_g(lambda(g^-1 u)) - lambda(u) in h
/// checked exactly on basis pairs; reports the first violation.
inline CheckResult check_group_invariance(const GroupGenerators& gens,
                                          const LieSubalgebra& h,
                                          const CharTriple& t) {
  const std::size_t n = t.n();
  for (std::size_t g = 0; g < gens.generators.size(); ++g) {
    const Matrix& mat = gens.generators[g];
    if (!mat.is_square() || mat.rows() != n)
      throw DimensionError("group generator has wrong dimension");
    const auto inv = inverse(mat);
    if (!inv)
      throw std::invalid_argument("group generator " + std::to_string(g) +
                                  " is singular");
    const Matrix& gi = *inv;

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Matrix lhs_r = t.R.component(i, j);
        Matrix rhs_r = mat * t.R.eval(gi.col(i), gi.col(j)) * gi;
        if (lhs_r != rhs_r)
          return CheckResult::fail(
              Witness{}
                  .at("generator", static_cast<std::int64_t>(g))
                  .at("i", static_cast<std::int64_t>(i))
                  .at("j", static_cast<std::int64_t>(j))
                  .describe("R0(u,v) != Ad_g R0(g^-1 u, g^-1 v)")
                  .with(lhs_r - rhs_r));
        Vector lhs_t = t.T.component(i, j);
        Vector rhs_t = mat * t.T.eval(gi.col(i), gi.col(j));
        if (lhs_t != rhs_t)
          return CheckResult::fail(
              Witness{}
                  .at("generator", static_cast<std::int64_t>(g))
                  .at("i", static_cast<std::int64_t>(i))
                  .at("j", static_cast<std::int64_t>(j))
                  .describe("T0(u,v) != g T0(g^-1 u, g^-1 v)")
                  .with(lhs_t - rhs_t));
      }

    for (std::size_t i = 0; i < n; ++i) {
      Matrix residual = mat * t.lam.eval(gi.col(i)) * gi - t.lam[i];
      if (!h.contains(residual))
        return CheckResult::fail(
            Witness{}
                .at("generator", static_cast<std::int64_t>(g))
                .at("u", static_cast<std::int64_t>(i))
                .describe("Ad_g(lambda(g^-1 u)) - lambda(u) is not in h")
                .with(std::move(residual)));
    }
  }
  return CheckResult::ok();
}

}  // namespace infhom
