#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace infhom;
using testsupport::RationalGen;

namespace {

/// Structural invariants every build must satisfy: antisymmetry, the h x h
/// block reproducing the matrix bracket, and the m-part of [L, X] equal to
/// the matrix action L X.
void check_build_structure(const LieSubalgebra& h, const LieAlgebraStructure& a) {
  const std::size_t k = a.h_dim, n = a.m_dim, d = a.dim();
  for (std::size_t p = 0; p < d; ++p) {
    CHECK(a.bracket(p, p).is_zero());
    for (std::size_t q = 0; q < d; ++q) CHECK(a.bracket(p, q) == -a.bracket(q, p));
  }
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p + 1; q < k; ++q) {
      Matrix combo(n, n);
      for (std::size_t s = 0; s < k; ++s) combo += a.bracket(p, q)[s] * h[s];
      CHECK(combo == mat_bracket(h[p], h[q]));
      for (std::size_t s = 0; s < n; ++s) CHECK(a.bracket(p, q)[k + s] == 0);
    }
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t i = 0; i < n; ++i) {
      const Vector lx = h[p].col(i);
      for (std::size_t s = 0; s < n; ++s) CHECK(a.bracket(p, k + i)[k + s] == lx[s]);
    }
}

LieAlgebraStructure build_instance(const std::string& name) {
  const auto inst = parse_instance(testsupport::instance_path(name));
  const LieSubalgebra h = inst.subalgebra();
  CharTriple t = inst.triple();
  if (!t.T.is_zero()) t = remove_torsion(h.basis(), t);
  auto a = build_bracket(h, t.R, t.lam);
  check_build_structure(h, a);
  return a;
}

}  // namespace

TEST_CASE("flat instance builds the Euclidean algebra e(2)") {
  const auto a = build_instance("flat_e2");
  REQUIRE(a.dim() == 3);
  // basis (J, e1, e2): [J,e1] = e2, [J,e2] = -e1, [e1,e2] = 0
  CHECK(a.bracket(0, 1) == Vector{0, 0, 1});
  CHECK(a.bracket(0, 2) == Vector{0, -1, 0});
  CHECK(a.bracket(1, 2) == Vector{0, 0, 0});
  CHECK(check_jacobi(a).pass);
  CHECK(killing_inertia(a) == Inertia{0, 1, 2});
  CHECK(derived_series_dims(a) == std::vector<std::size_t>{2, 0});
}

TEST_CASE("sphere instance builds so(3)") {
  const auto a = build_instance("sphere_s2");
  REQUIRE(a.dim() == 3);
  CHECK(a.bracket(0, 1) == Vector{0, 0, 1});
  CHECK(a.bracket(0, 2) == Vector{0, -1, 0});
  CHECK(a.bracket(1, 2) == Vector{1, 0, 0});
  CHECK(check_jacobi(a).pass);

  // Killing form of so(3) in this basis is -2 I, negative definite.
  CHECK(killing_form(a) == Rational(-2) * Matrix::identity(3));
  CHECK(killing_inertia(a) == Inertia{0, 3, 0});
  CHECK(derived_series_dims(a) == std::vector<std::size_t>{3});
}

TEST_CASE("hyperbolic instance builds sl(2,R)") {
  const auto a = build_instance("hyperbolic_h2");
  CHECK(a.bracket(1, 2) == Vector{-1, 0, 0});
  CHECK(check_jacobi(a).pass);
  CHECK(killing_form(a) == Matrix{{-2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(killing_inertia(a) == Inertia{2, 1, 0});

  // brute-force cross-check on the classical sl(2,R) basis (h, e, f):
  // [h,e] = 2e, [h,f] = -2f, [e,f] = h gives B = diag-block [[8],[0,4],[4,0]].
  LieAlgebraStructure sl2;
  sl2.h_dim = 0;
  sl2.m_dim = 3;
  sl2.table.assign(3, std::vector<Vector>(3, Vector(3)));
  sl2.table[0][1] = Vector{0, 2, 0};
  sl2.table[1][0] = Vector{0, -2, 0};
  sl2.table[0][2] = Vector{0, 0, -2};
  sl2.table[2][0] = Vector{0, 0, 2};
  sl2.table[1][2] = Vector{1, 0, 0};
  sl2.table[2][1] = Vector{-1, 0, 0};
  REQUIRE(check_jacobi(sl2).pass);
  CHECK(killing_form(sl2) == Matrix{{8, 0, 0}, {0, 0, 4}, {0, 4, 0}});
  CHECK(killing_inertia(sl2) == Inertia{2, 1, 0});
}

TEST_CASE("sphere_s3 builds so(4)") {
  const auto a = build_instance("sphere_s3");
  REQUIRE(a.dim() == 6);
  CHECK(check_jacobi(a).pass);
  CHECK(killing_inertia(a) == Inertia{0, 6, 0});
  CHECK(derived_series_dims(a) == std::vector<std::size_t>{6});
}

TEST_CASE("constant curvature at n = 4 lands on so(5) and so(4,1)") {
  for (const int c : {1, -1}) {
    const LieSubalgebra h(4, testsupport::so_basis(4));
    const CharTriple t{testsupport::constant_curvature(4, Rational(c)),
                       TorsionTensor(4), Lifting(4)};
    REQUIRE(run_certificate(h, t).pass());
    const auto a = build_bracket(h, t.R, t.lam);
    REQUIRE(a.dim() == 10);
    CHECK(check_jacobi(a).pass);
    CHECK(killing_inertia(a) == (c > 0 ? Inertia{0, 10, 0} : Inertia{4, 6, 0}));
  }
}

TEST_CASE("reduced Lie-group instance rebuilds so(3) with cross-product constants") {
  const auto a = build_instance("liegroup_so3_minus_connection");
  REQUIRE(a.dim() == 3);
  CHECK(a.bracket(0, 1) == Vector{0, 0, 1});   // e1 x e2 = e3
  CHECK(a.bracket(0, 2) == Vector{0, -1, 0});  // e1 x e3 = -e2
  CHECK(a.bracket(1, 2) == Vector{1, 0, 0});   // e2 x e3 = e1
  CHECK(check_jacobi(a).pass);
  CHECK(killing_inertia(a) == Inertia{0, 3, 0});
}

TEST_CASE("solvable instance builds aff(1) + R") {
  const auto a = build_instance("solvable_aff1");
  REQUIRE(a.dim() == 3);
  CHECK(a.bracket(0, 1) == Vector{1, 0, 0});
  CHECK(a.bracket(0, 2).is_zero());
  CHECK(a.bracket(1, 2).is_zero());
  CHECK(check_jacobi(a).pass);
  CHECK(killing_inertia(a) == Inertia{1, 0, 2});
  CHECK(derived_series_dims(a) == std::vector<std::size_t>{1, 0});
}

TEST_CASE("similarity instance builds the centerless sim(2)") {
  const auto a = build_instance("sim2_plane");
  REQUIRE(a.dim() == 4);
  // (h, e1, e2, e3): rotation on the plane, e3 scales it
  CHECK(a.bracket(0, 1) == Vector{0, 0, 1, 0});
  CHECK(a.bracket(0, 2) == Vector{0, -1, 0, 0});
  CHECK(a.bracket(0, 3).is_zero());
  CHECK(a.bracket(1, 3) == Vector{0, -1, 0, 0});
  CHECK(a.bracket(2, 3) == Vector{0, 0, -1, 0});
  CHECK(a.bracket(1, 2).is_zero());
  CHECK(check_jacobi(a).pass);
  CHECK(killing_inertia(a) == Inertia{1, 1, 2});
  CHECK(derived_series_dims(a) == std::vector<std::size_t>{2, 0});
  CHECK(adjoint_realization(a).supported);
}

TEST_CASE("jacobi check catches corrupted constants") {
  LieAlgebraStructure abelian;
  abelian.h_dim = 0;
  abelian.m_dim = 3;
  abelian.table.assign(3, std::vector<Vector>(3, Vector(3)));
  CHECK(check_jacobi(abelian).pass);
  CHECK(killing_inertia(abelian) == Inertia{0, 0, 3});
  CHECK(derived_series_dims(abelian) == std::vector<std::size_t>{0});

  auto corrupted = build_instance("flat_e2");
  corrupted.table[1][2] = Vector{0, 1, 0};  // [e1,e2] := e1
  corrupted.table[2][1] = -corrupted.table[1][2];
  const auto res = check_jacobi(corrupted);
  REQUIRE_FALSE(res.pass);
  CHECK(res.witness->indices ==
        std::vector<std::pair<std::string, std::int64_t>>{{"x", 0}, {"y", 1}, {"z", 2}});
}

TEST_CASE("build errors identify the condition to re-check") {
  CurvatureTensor bad_r(2);
  bad_r.set_component(0, 1, Matrix{{1, 0}, {0, 0}});
  try {
    build_bracket(LieSubalgebra::trivial(2), bad_r, Lifting(2));
    FAIL("expected BuildError");
  } catch (const BuildError& e) {
    CHECK(e.recheck == "curvature_relation");
  }

  Lifting bad_lam(2);
  bad_lam.set(0, Matrix{{1, 0}, {0, 0}});
  try {
    build_bracket(LieSubalgebra(2, {testsupport::rot2()}), CurvatureTensor(2), bad_lam);
    FAIL("expected BuildError");
  } catch (const BuildError& e) {
    CHECK(e.recheck == "inf_invariance_lambda");
  }
}

TEST_CASE("conditions imply Jacobi across the constant-curvature family") {
  RationalGen gen(73);
  int done = 0;
  while (done < 50) {
    const std::size_t n = 2 + done % 2;
    const Rational c = gen.next();
    const LieSubalgebra h(n, testsupport::so_basis(n));
    const CharTriple t{testsupport::constant_curvature(n, c), TorsionTensor(n),
                       Lifting(n)};
    REQUIRE(run_certificate(h, t).pass());
    const auto a = build_bracket(h, t.R, t.lam);
    CHECK(check_jacobi(a).pass);
    ++done;
  }
}

TEST_CASE("lifting shifts are Lie algebra isomorphisms") {
  SECTION("zero shift is trivially one") {
    const auto inst = parse_instance(testsupport::instance_path("sphere_s2"));
    LiftShift zero;
    zero.coeffs.assign(2, std::vector<Rational>(1, Rational(0)));
    CHECK(lifting_shift_isomorphism(inst.subalgebra(), inst.R0, inst.lambda, zero).pass);
  }
  SECTION("sphere shift delta(e1) = J") {
    const auto inst = parse_instance(testsupport::instance_path("sphere_s2"));
    LiftShift delta;
    delta.coeffs = {{Rational(1)}, {Rational(0)}};
    CHECK(lifting_shift_isomorphism(inst.subalgebra(), inst.R0, inst.lambda, delta).pass);
  }
  SECTION("random shifts on every certified corpus instance") {
    RationalGen gen(79);
    for (const auto& [name, inst] :
         testsupport::load_corpus(testsupport::passing_corpus_names())) {
      INFO(name);
      const LieSubalgebra h = inst.subalgebra();
      CharTriple t = inst.triple();
      if (!t.T.is_zero()) t = remove_torsion(h.basis(), t);
      const Inertia base_inertia = killing_inertia(build_bracket(h, t.R, t.lam));
      const int reps = h.dim() == 0 ? 1 : 25;
      for (int rep = 0; rep < reps; ++rep) {
        const LiftShift delta = gen.lift_shift(inst.dimension, h.dim());
        CHECK(lifting_shift_isomorphism(h, t.R, t.lam, delta).pass);
        // the isomorphism preserves the Killing inertia
        const auto shifted = build_bracket(h, t.R, delta.apply_to(h, t.lam, +1));
        CHECK(killing_inertia(shifted) == base_inertia);
      }
    }
  }
}

// Exploratory: whether Jacobi conversely certifies the conditions is open;
// nothing here asserts it either way.  These are candidates where the
// bracket can be formed although a condition fails; at desk scale each one
// also fails Jacobi, so no separating example is known to this suite.
TEST_CASE("converse candidates: condition violations that still build") {
  for (const std::string name : {"corrupted_sphere_s3", "corrupted_star_r4"}) {
    INFO(name);
    const auto inst = parse_instance(testsupport::instance_path(name));
    REQUIRE_FALSE(run_certificate(inst.subalgebra(), inst.triple()).pass());
    const auto a = build_bracket(inst.subalgebra(), inst.R0, inst.lambda);
    CHECK_FALSE(check_jacobi(a).pass);
  }
}

TEST_CASE("lambda-bar equivariance") {
  SECTION("vacuous for h = 0") {
    const auto inst = parse_instance(testsupport::instance_path("abelian_r2"));
    const auto h = inst.subalgebra();
    const auto a = build_bracket(h, inst.R0, inst.lambda);
    CHECK(lambda_bar_equivariance(h, inst.lambda, a).pass);
  }
  SECTION("instances with nontrivial h, including a nonzero lifting") {
    for (const std::string name : {"flat_e2", "sphere_s2", "sphere_s3", "sim2_plane"}) {
      INFO(name);
      const auto inst = parse_instance(testsupport::instance_path(name));
      const auto h = inst.subalgebra();
      const auto a = build_bracket(h, inst.R0, inst.lambda);
      CHECK(lambda_bar_equivariance(h, inst.lambda, a).pass);
    }
  }
}
