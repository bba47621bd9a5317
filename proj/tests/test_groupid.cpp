#include <doctest.h>

#include "isom4d/catalog.hpp"
#include "isom4d/groupid.hpp"
#include "isom4d/linalg.hpp"
#include "isom4d/metrics.hpp"
#include "isom4d/rng.hpp"
#include "isom4d/stabilizer.hpp"

using namespace isom4d;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

Mat diag4(long long a, long long b, long long c, long long d) {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = q(a);
  m(1, 1) = q(b);
  m(2, 2) = q(c);
  m(3, 3) = q(d);
  return m;
}

FiniteMatrixGroup stabilizer_group(GroupName g, int case_id) {
  const LieAlgebra alg = catalog_algebra(g);
  const Mat metric = metric_matrix(MetricSpec{g, case_id, default_metric_params(g, case_id)});
  FiniteMatrixGroup out;
  out.elements = discrete_stabilizer(alg, aut_family(g), metric);
  return out;
}

}  // namespace

TEST_CASE("closure of the identity and of involutions") {
  CHECK(closure({identity(4)}).order() == 1);
  CHECK(closure({diag4(-1, -1, -1, 1)}).order() == 2);
  CHECK_THROWS_AS(closure({Mat::Zero(4, 4)}), std::invalid_argument);
}

TEST_CASE("closure guards against infinite input") {
  const Mat shear = mat_from_rows({{q(1), q(1)}, {q(0), q(1)}});
  CHECK_THROWS_AS(closure({shear}, 64), ClosureCapExceeded);
}

TEST_CASE("closure output satisfies the group axioms by membership") {
  const FiniteMatrixGroup g = closure({diag4(1, -1, 1, -1), diag4(-1, -1, -1, 1)});
  CHECK(g.contains(identity(4)));
  for (const Mat& a : g.elements) {
    CHECK(g.contains(inverse(a)));
    for (const Mat& b : g.elements) CHECK(g.contains(a * b));
  }
}

TEST_CASE("the two displayed generators build the eight-element dihedral group") {
  const Mat s = diag4(-1, 1, -1, 1);
  const Mat r = mat_from_rows({{q(1), q(0), q(0), q(0)},
                               {q(0), q(0), q(-1), q(0)},
                               {q(0), q(1), q(0), q(0)},
                               {q(0), q(0), q(0), q(-1)}});
  const FiniteMatrixGroup g = closure({s, r});
  CHECK(g.order() == 8);
  CHECK(identify(g).kind == GroupTypeKind::D4);
  // the generated group is exactly the first sol14 stabilizer
  const FiniteMatrixGroup stab = stabilizer_group(GroupName::Sol14, 1);
  REQUIRE(stab.order() == 8);
  for (const Mat& e : stab.elements) CHECK(g.contains(e));
}

TEST_CASE("element orders by repeated multiplication") {
  CHECK(element_order(identity(4)) == 1);
  CHECK(element_order(diag4(-1, 1, 1, 1)) == 2);
  const Mat quarter = mat_from_rows({{q(0), q(-1)}, {q(1), q(0)}});
  CHECK(element_order(quarter) == 4);
  const Mat shear = mat_from_rows({{q(1), q(1)}, {q(0), q(1)}});
  CHECK_THROWS_AS(element_order(shear, 16), ClosureCapExceeded);
}

TEST_CASE("order profiles of the catalog stabilizers") {
  const FiniteMatrixGroup trivial = stabilizer_group(GroupName::Sol14, 3);
  CHECK(order_profile(trivial) == std::map<int, int>{{1, 1}});

  const FiniteMatrixGroup sol3 = stabilizer_group(GroupName::Sol3xR, 1);
  REQUIRE(sol3.order() == 16);
  CHECK(order_profile(sol3) == std::map<int, int>{{1, 1}, {2, 11}, {4, 4}});

  const FiniteMatrixGroup signs = stabilizer_group(GroupName::SolMN4, 1);
  CHECK(order_profile(signs) == std::map<int, int>{{1, 1}, {2, 7}});
}

TEST_CASE("identification of the catalog stabilizer types") {
  CHECK(identify(stabilizer_group(GroupName::Nil4, 1)).kind == GroupTypeKind::Z2xZ2);
  CHECK(identify(stabilizer_group(GroupName::Nil4, 2)).kind == GroupTypeKind::Z2);
  CHECK(identify(stabilizer_group(GroupName::SolMN4, 1)).kind == GroupTypeKind::Z2xZ2xZ2);
  CHECK(identify(stabilizer_group(GroupName::Sol3xR, 1)).kind == GroupTypeKind::D4xZ2);
  CHECK(identify(stabilizer_group(GroupName::Sol14, 1)).kind == GroupTypeKind::D4);
  CHECK(identify(stabilizer_group(GroupName::Sol14, 3)).kind == GroupTypeKind::Trivial);
}

TEST_CASE("identification covers the cyclic four group and flags strangers") {
  const Mat quarter = mat_from_rows({{q(0), q(-1)}, {q(1), q(0)}});
  CHECK(identify(closure({quarter})).kind == GroupTypeKind::Z4);

  // a three-element rotation group is outside the scoped list
  const Mat third = mat_from_rows({{q(0), q(-1)}, {q(1), q(-1)}});
  const GroupType t = identify(closure({third}));
  CHECK(t.kind == GroupTypeKind::Unidentified);
  CHECK(t.invariants.order == 3);
  CHECK(t.name().find("order 3") != std::string::npos);
}

TEST_CASE("identification is invariant under conjugation") {
  SplitMix64 rng(61);
  const FiniteMatrixGroup base = stabilizer_group(GroupName::Sol14, 1);
  for (int it = 0; it < 5; ++it) {
    Mat p(4, 4);
    do {
      for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) p(i, j) = random_rational(rng);
    } while (determinant(p).is_zero());
    const Mat pinv = inverse(p);
    FiniteMatrixGroup conj;
    for (const Mat& e : base.elements) conj.elements.push_back(pinv * e * p);
    CHECK(identify(conj).kind == GroupTypeKind::D4);
  }
}

TEST_CASE("the dihedral presentation is found inside the eight-element stabilizer") {
  const FiniteMatrixGroup g = stabilizer_group(GroupName::Sol14, 1);
  bool found = false;
  for (const Mat& r : g.elements) {
    if (element_order(r) != 4) continue;
    for (const Mat& s : g.elements) {
      if (element_order(s) != 2) continue;
      if (exactly_equal(s * r * s, inverse(r))) found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("an explicit direct-product model matches the sixteen-element invariants") {
  // dihedral group of the square as 2x2 sign-permutation matrices, times {1, -1}
  const Mat rot = mat_from_rows({{q(0), q(-1)}, {q(1), q(0)}});
  const Mat refl = mat_from_rows({{q(1), q(0)}, {q(0), q(-1)}});
  std::vector<Mat> gens;
  for (const Mat& two : {rot, refl})
    for (long long s : {1, -1}) {
      Mat m = Mat::Zero(3, 3);
      m.topLeftCorner(2, 2) = two;
      m(2, 2) = q(s);
      gens.push_back(m);
    }
  const FiniteMatrixGroup model = closure(gens, 32);
  const GroupInvariants inv = group_invariants(model);
  CHECK(inv.order == 16);
  CHECK(!inv.abelian);
  CHECK(inv.profile == std::map<int, int>{{1, 1}, {2, 11}, {4, 4}});
  CHECK(inv.center_order == 4);
  CHECK(identify(model).kind == GroupTypeKind::D4xZ2);
}

TEST_CASE("descriptors assemble the semidirect structure strings") {
  const LieAlgebra nil4 = catalog_algebra(GroupName::Nil4);
  const AutFamily fam4 = aut_family(GroupName::Nil4);
  const Mat m2 = metric_matrix(MetricSpec{GroupName::Nil4, 2, default_metric_params(GroupName::Nil4, 2)});
  const auto st = stabilizer(nil4, fam4, m2);
  const IsometryDescriptor d = isom_descriptor(GroupName::Nil4, 2, st, nil4);
  CHECK(d.structure == "Nil⁴ ⋊ Z₂");
  CHECK(d.stabilizer_order == 2);

  const LieAlgebra sol04 = catalog_algebra(GroupName::Sol04);
  const Mat m1 = metric_matrix(MetricSpec{GroupName::Sol04, 1, default_metric_params(GroupName::Sol04, 1)});
  const auto st04 = stabilizer(sol04, aut_family(GroupName::Sol04), m1);
  const IsometryDescriptor d04 = isom_descriptor(GroupName::Sol04, 1, st04, sol04);
  CHECK(d04.structure.find("O(2)×Z₂") != std::string::npos);
  CHECK(d04.structure.find("dim 1") != std::string::npos);
  CHECK(d04.structure.find("4 components") != std::string::npos);

  const LieAlgebra sol14 = catalog_algebra(GroupName::Sol14);
  const Mat m3 = metric_matrix(MetricSpec{GroupName::Sol14, 3, default_metric_params(GroupName::Sol14, 3)});
  const auto st14 = stabilizer(sol14, aut_family(GroupName::Sol14), m3);
  const IsometryDescriptor d14 = isom_descriptor(GroupName::Sol14, 3, st14, sol14);
  CHECK(d14.structure == "Sol₁⁴");

  // the assembly guard rejects algebras outside the covered families
  Vec e1 = Vec::Zero(2);
  e1(1) = q(1);
  const LieAlgebra affine = LieAlgebra::from_brackets(2, {{0, 1, e1}});
  CHECK_THROWS_AS(isom_descriptor(GroupName::Nil4, 1, st, affine), std::invalid_argument);
}
