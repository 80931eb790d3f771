#pragma once

#include <span>
#include <utility>

#include "infhom/check.hpp"
#include "infhom/tensors.hpp"

namespace infhom {

/// Precondition failure of the torsion transforms, with the exact witness.
struct TorsionPreconditionError : std::invalid_argument {
  TorsionPreconditionError(const std::string& what_, Witness w)
      : std::invalid_argument(what_), witness(std::move(w)) {}
  Witness witness;
};

/// The Christoffel perturbation of the prescribed torsion: s0(X) = T(X, .)/2
/// as an element of gl(n).  Column j of s0(e_i) is T(e_i, e_j)/2.
inline Matrix torsion_half_contraction(const TorsionTensor& tor, std::size_t i) {
  const std::size_t n = tor.n();
  Matrix s(n, n);
  const Rational half(1, 2);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const Vector w = i < j ? tor.component(i, j) : -tor.component(j, i);
    for (std::size_t r = 0; r < n; ++r) s(r, j) = half * w[r];
  }
  return s;
}

/// Invariance of a torsion-type tensor under every basis element of h:
/// L T(u,v) - T(Lu,v) - T(u,Lv) = 0 exactly.
inline CheckResult check_torsion_invariance(std::span<const Matrix> h_basis,
                                            const TorsionTensor& tor) {
  const std::size_t n = tor.n();
  for (std::size_t l = 0; l < h_basis.size(); ++l) {
    const TorsionTensor d = derivation_action_on_T(h_basis[l], tor);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!d.component(i, j).is_zero())
          return CheckResult::fail(Witness{}
                                       .at("L", static_cast<std::int64_t>(l))
                                       .at("i", static_cast<std::int64_t>(i))
                                       .at("j", static_cast<std::int64_t>(j))
                                       .describe("torsion is not h-invariant")
                                       .with(d.component(i, j)));
  }
  return CheckResult::ok();
}

namespace detail {
// (D_L s0)(Y) = [L, s0(Y)] - s0(L Y), evaluated on basis vector e_j with
// L = lam(e_i); s0(L Y) extends s0 linearly in Y.
inline Matrix dlam_s0(const Lifting& lam, const TorsionTensor& tor, std::size_t i,
                      std::size_t j) {
  const std::size_t n = tor.n();
  const Matrix li = lam[i];
  Matrix out = mat_bracket(li, torsion_half_contraction(tor, j));
  const Vector ly = li.col(j);
  for (std::size_t k = 0; k < n; ++k)
    if (ly[k] != 0) out -= ly[k] * torsion_half_contraction(tor, k);
  return out;
}

inline CurvatureTensor torsion_curvature_correction(const Lifting& lam,
                                                    const TorsionTensor& tor) {
  const std::size_t n = tor.n();
  CurvatureTensor corr(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix m = dlam_s0(lam, tor, i, j) - dlam_s0(lam, tor, j, i);
      m += mat_bracket(torsion_half_contraction(tor, i),
                       torsion_half_contraction(tor, j));
      corr.set_component(i, j, std::move(m));
    }
  return corr;
}
}  // namespace detail

/// Equips a torsion-free triple with the prescribed torsion `tor`, at the
/// constant-tensor level:
///   T' = tor,  lam' = lam + s0,  R' = R + Alt(D_{lam(.)} s0) + [s0, s0],
/// with s0 = tor/2.  Requires t.T = 0 and h-invariant tor.
inline CharTriple add_torsion(std::span<const Matrix> h_basis, const CharTriple& t,
                              const TorsionTensor& tor) {
  const std::size_t n = t.n();
  if (tor.n() != n) throw DimensionError("add_torsion: dimension mismatch");
  if (!t.T.is_zero())
    throw TorsionPreconditionError(
        "add_torsion requires a torsion-free input triple",
        Witness{}.describe("input T0 is nonzero"));
  if (const auto inv = check_torsion_invariance(h_basis, tor); !inv)
    throw TorsionPreconditionError("add_torsion: prescribed torsion is not h-invariant",
                                   *inv.witness);

  CharTriple out;
  out.T = tor;
  Lifting lam2(n);
  for (std::size_t i = 0; i < n; ++i)
    lam2.set(i, t.lam[i] + torsion_half_contraction(tor, i));
  out.lam = std::move(lam2);

  const CurvatureTensor corr = detail::torsion_curvature_correction(t.lam, tor);
  CurvatureTensor r2(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      r2.set_component(i, j, t.R.component(i, j) + corr.component(i, j));
  out.R = std::move(r2);
  return out;
}

/// Inverse transform: strips t.T off the triple.  The curvature is recovered
/// by subtracting the same correction terms evaluated with the reduced
/// lifting, which makes remove_torsion(add_torsion(x, tor)) = x structural.
inline CharTriple remove_torsion(std::span<const Matrix> h_basis, const CharTriple& t) {
  const std::size_t n = t.n();
  if (t.T.is_zero()) return t;
  if (const auto inv = check_torsion_invariance(h_basis, t.T); !inv)
    throw TorsionPreconditionError("remove_torsion: torsion is not h-invariant",
                                   *inv.witness);

  CharTriple out;
  out.T = TorsionTensor(n);
  Lifting lam0(n);
  for (std::size_t i = 0; i < n; ++i)
    lam0.set(i, t.lam[i] - torsion_half_contraction(t.T, i));
  out.lam = std::move(lam0);

  const CurvatureTensor corr = detail::torsion_curvature_correction(out.lam, t.T);
  CurvatureTensor r0(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      r0.set_component(i, j, t.R.component(i, j) - corr.component(i, j));
  out.R = std::move(r0);
  return out;
}

}  // namespace infhom
