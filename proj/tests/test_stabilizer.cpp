#include <doctest.h>

#include <algorithm>

#include "isom4d/catalog.hpp"
#include "isom4d/linalg.hpp"
#include "isom4d/metrics.hpp"
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

struct Setup {
  LieAlgebra alg;
  AutFamily fam;
  Mat metric;
};

Setup setup(GroupName g, int case_id, std::map<std::string, Rational> overrides = {}) {
  auto params = default_metric_params(g, case_id);
  for (const auto& [k, v] : overrides) params[k] = v;
  return {catalog_algebra(g), aut_family(g), metric_matrix(MetricSpec{g, case_id, params})};
}

bool contains(const std::vector<Mat>& set, const Mat& m) {
  return std::any_of(set.begin(), set.end(), [&](const Mat& e) { return exactly_equal(e, m); });
}

bool preserves(const Mat& a, const Mat& metric) {
  return exactly_equal(a.transpose() * metric * a, metric);
}

}  // namespace

TEST_CASE("isotropy algebra dimensions and rotation planes") {
  const Setup nil3 = setup(GroupName::Nil3xR, 1, {{"alpha", q(2)}});
  const auto iso3 = isotropy_algebra(nil3.alg, nil3.metric);
  REQUIRE(iso3.size() == 1);
  // generator rotates the (e3, e4) plane
  CHECK(!iso3[0](2, 3).is_zero());
  CHECK(iso3[0](2, 3) == -iso3[0](3, 2));
  CHECK(iso3[0](0, 0).is_zero());

  const Setup nil4 = setup(GroupName::Nil4, 1);
  CHECK(isotropy_algebra(nil4.alg, nil4.metric).empty());

  const Setup sol04 = setup(GroupName::Sol04, 1);
  const auto iso04 = isotropy_algebra(sol04.alg, sol04.metric);
  REQUIRE(iso04.size() == 1);
  CHECK(!iso04[0](0, 1).is_zero());
  CHECK(iso04[0](0, 1) == -iso04[0](1, 0));
}

TEST_CASE("isotropy basis elements are metric-skew derivations") {
  for (GroupName g : kAllGroups) {
    const Setup s = setup(g, 1);
    for (const Mat& d : isotropy_algebra(s.alg, s.metric)) {
      CHECK(is_zero_matrix(d.transpose() * s.metric + s.metric * d));
      // derivation identity on basis pairs
      for (Index i = 0; i < 4; ++i)
        for (Index j = i + 1; j < 4; ++j) {
          Vec ei = Vec::Zero(4), ej = Vec::Zero(4);
          ei(i) = q(1);
          ej(j) = q(1);
          const Vec lhs = d * s.alg.basis_bracket(i, j);
          const Vec rhs = s.alg.bracket(d.col(i), ej) + s.alg.bracket(ei, d.col(j));
          CHECK(exactly_equal(Mat(lhs), Mat(rhs)));
        }
    }
  }
}

TEST_CASE("discrete stabilizer reproduces the four sign matrices of nil4") {
  const Setup s = setup(GroupName::Nil4, 1);
  const auto elems = discrete_stabilizer(s.alg, s.fam, s.metric);
  REQUIRE(elems.size() == 4);
  CHECK(contains(elems, identity(4)));
  CHECK(contains(elems, diag4(1, -1, 1, -1)));
  CHECK(contains(elems, diag4(-1, -1, -1, 1)));
  CHECK(contains(elems, diag4(-1, 1, -1, -1)));
}

TEST_CASE("discrete stabilizer of the diagonal solmn4 metric is the sign group") {
  const Setup s = setup(GroupName::SolMN4, 1);
  const auto elems = discrete_stabilizer(s.alg, s.fam, s.metric);
  REQUIRE(elems.size() == 8);
  for (long long a : {-1, 1})
    for (long long b : {-1, 1})
      for (long long c : {-1, 1}) CHECK(contains(elems, diag4(a, b, c, 1)));
}

TEST_CASE("discrete stabilizer singles out the identity for the third sol14 metric") {
  const Setup s = setup(GroupName::Sol14, 3);
  const auto elems = discrete_stabilizer(s.alg, s.fam, s.metric);
  REQUIRE(elems.size() == 1);
  CHECK(exactly_equal(elems[0], identity(4)));
}

TEST_CASE("finite stabilizers match their expected element lists") {
  auto expect_set = [](GroupName g, int c, const std::vector<Mat>& expected) {
    const Setup s = setup(g, c);
    const auto elems = discrete_stabilizer(s.alg, s.fam, s.metric);
    REQUIRE(elems.size() == expected.size());
    for (const Mat& e : expected) CHECK(contains(elems, e));
  };

  expect_set(GroupName::Nil4, 2, {identity(4), diag4(-1, -1, -1, 1)});
  expect_set(GroupName::SolMN4, 2,
             {identity(4), diag4(1, 1, -1, 1), diag4(-1, -1, 1, 1), diag4(-1, -1, -1, 1)});
  expect_set(GroupName::SolMN4, 3, {identity(4), diag4(-1, -1, -1, 1)});
  expect_set(GroupName::Sol04, 2,
             {identity(4), diag4(1, -1, 1, 1), diag4(-1, 1, -1, 1), diag4(-1, -1, -1, 1)});
  expect_set(GroupName::Sol0p4, 1,
             {identity(4), diag4(1, 1, -1, 1), diag4(-1, -1, 1, 1), diag4(-1, -1, -1, 1)});
  expect_set(GroupName::Sol0p4, 2, {identity(4), diag4(-1, -1, -1, 1)});
  expect_set(GroupName::Sol14, 2, {identity(4), diag4(-1, -1, 1, 1)});

  // the sixteen elements of the first sol3xr stabilizer: all signed diagonals
  // fixing e4 and all signed middle swaps reversing it
  std::vector<Mat> sol3xr;
  for (long long a : {-1, 1})
    for (long long b : {-1, 1})
      for (long long c : {-1, 1}) {
        sol3xr.push_back(diag4(a, b, c, 1));
        Mat swap = Mat::Zero(4, 4);
        swap(0, 0) = q(a);
        swap(1, 2) = q(b);
        swap(2, 1) = q(c);
        swap(3, 3) = q(-1);
        sol3xr.push_back(swap);
      }
  expect_set(GroupName::Sol3xR, 1, sol3xr);
}

TEST_CASE("every stabilizer element is a certified isometric automorphism") {
  for (GroupName g : kAllGroups)
    for (int c = 1; c <= metric_case_count(g); ++c) {
      const Setup s = setup(g, c);
      const auto elems = discrete_stabilizer(s.alg, s.fam, s.metric);
      CHECK(!elems.empty());
      for (const Mat& e : elems) {
        CHECK(s.alg.is_automorphism(e));
        CHECK(preserves(e, s.metric));
      }
      // closure under product and inverse within the certified set
      for (const Mat& a : elems)
        for (const Mat& b : elems) CHECK(contains(elems, a * b));
      for (const Mat& a : elems) CHECK(contains(elems, inverse(a)));
    }
}

TEST_CASE("stabilizer orders match the expected table") {
  CHECK(*stabilizer(setup(GroupName::Sol3xR, 1).alg, aut_family(GroupName::Sol3xR),
                    setup(GroupName::Sol3xR, 1).metric)
             .finite_order == 16);
  const Setup s2 = setup(GroupName::Sol0p4, 2);
  CHECK(*stabilizer(s2.alg, s2.fam, s2.metric).finite_order == 2);
  const Setup s3 = setup(GroupName::Nil4, 2);
  const auto st3 = stabilizer(s3.alg, s3.fam, s3.metric);
  REQUIRE(st3.finite_order.has_value());
  CHECK(*st3.finite_order == 2);
  CHECK(contains(st3.elements, diag4(-1, -1, -1, 1)));
}

TEST_CASE("continuous stabilizers report dimension one and four components") {
  const Setup nil3 = setup(GroupName::Nil3xR, 1, {{"alpha", q(2)}});
  const auto st = stabilizer(nil3.alg, nil3.fam, nil3.metric);
  CHECK(st.identity_component_dim == 1);
  CHECK(!st.finite_order.has_value());
  CHECK(st.elements.size() == 16);
  CHECK(st.component_count() == 4);
  REQUIRE(st.continuous_block.has_value());
  CHECK(st.continuous_block->i == 2);
  CHECK(st.continuous_block->j == 3);
  CHECK(contains(st.component_reps, identity(4)));
  // representatives live in pairwise distinct components
  for (std::size_t i = 0; i < st.component_reps.size(); ++i)
    for (std::size_t j = i + 1; j < st.component_reps.size(); ++j)
      CHECK(!same_rotation_component(st.component_reps[i], st.component_reps[j],
                                     *st.continuous_block));

  const Setup sol = setup(GroupName::Sol04, 1);
  const auto st2 = stabilizer(sol.alg, sol.fam, sol.metric);
  CHECK(st2.identity_component_dim == 1);
  CHECK(st2.component_count() == 4);
  REQUIRE(st2.continuous_block.has_value());
  CHECK(st2.continuous_block->i == 0);
  CHECK(st2.continuous_block->j == 1);
}

TEST_CASE("rational rotations satisfy the tangent addition rule") {
  SplitMix64 rng(17);
  const RotationBlock block{2, 3};
  for (int it = 0; it < 30; ++it) {
    const Rational t1 = random_rational(rng), t2 = random_rational(rng);
    const Mat r1 = circle_rotation(t1, block, 4), r2 = circle_rotation(t2, block, 4);
    const Rational c = r1(2, 2), s = r1(3, 2);
    CHECK((c * c + s * s).is_one());
    const Rational den = q(1) - t1 * t2;
    if (!den.is_zero())
      CHECK(exactly_equal(r1 * r2, circle_rotation((t1 + t2) / den, block, 4)));
  }
  // the half turn closes the missing parameter point
  CHECK(exactly_equal(half_turn(block, 4) * half_turn(block, 4), identity(4)));
}

TEST_CASE("rotations preserve bracket and metric in the continuous cases") {
  SplitMix64 rng(23);
  for (auto [g, c] : {std::pair{GroupName::Nil3xR, 1}, std::pair{GroupName::Sol04, 1}}) {
    const Setup s = setup(g, c);
    const auto st = stabilizer(s.alg, s.fam, s.metric);
    REQUIRE(st.continuous_block.has_value());
    for (int it = 0; it < 20; ++it) {
      const Mat r = circle_rotation(random_rational(rng), *st.continuous_block, 4);
      CHECK(s.alg.is_automorphism(r));
      CHECK(preserves(r, s.metric));
    }
  }
}

TEST_CASE("stabilizer element sets are invariant under metric scaling") {
  SplitMix64 rng(29);
  for (auto [g, c] : {std::pair{GroupName::Nil4, 2}, std::pair{GroupName::Sol14, 1},
                      std::pair{GroupName::SolMN4, 2}}) {
    const Setup s = setup(g, c);
    const auto base = discrete_stabilizer(s.alg, s.fam, s.metric);
    for (int it = 0; it < 5; ++it) {
      const Rational scale = abs(random_nonzero_rational(rng));
      const auto scaled = discrete_stabilizer(s.alg, s.fam, scale * s.metric);
      REQUIRE(scaled.size() == base.size());
      for (std::size_t k = 0; k < base.size(); ++k) CHECK(exactly_equal(scaled[k], base[k]));
    }
  }
}

TEST_CASE("stabilizers transport along pullbacks by conjugation") {
  SplitMix64 rng(31);
  for (auto [g, c] : {std::pair{GroupName::Nil4, 1}, std::pair{GroupName::Sol3xR, 1},
                      std::pair{GroupName::Sol14, 2}}) {
    const Setup s = setup(g, c);
    const auto base = discrete_stabilizer(s.alg, s.fam, s.metric);
    for (int it = 0; it < 5; ++it) {
      const Mat theta = s.fam.branches[0].instantiate(sample_branch_params(s.fam.branches[0], rng));
      const Mat pulled = pullback_metric(theta, s.metric);
      std::vector<Mat> conjugates;
      for (const Mat& e : base) conjugates.push_back(theta * e * inverse(theta));
      for (const Mat& e : conjugates) {
        CHECK(s.alg.is_automorphism(e));
        CHECK(preserves(e, pulled));
      }
      // conjugation is injective, so the transported set has the same size
      std::sort(conjugates.begin(), conjugates.end(), lex_less);
      CHECK(std::adjacent_find(conjugates.begin(), conjugates.end(),
                               [](const Mat& a, const Mat& b) { return exactly_equal(a, b); }) ==
            conjugates.end());
    }
  }
}

TEST_CASE("completeness search finds nothing unlisted on the catalog") {
  const Setup s = setup(GroupName::Nil4, 2);
  const auto elems = discrete_stabilizer(s.alg, s.fam, s.metric);
  const auto ev = randomized_completeness_check(s.alg, s.fam, s.metric, elems, 500, 424242);
  CHECK(ev.trials == 500);
  CHECK(ev.violations == 0);
  CHECK(ev.certified_hits > 0);

  const auto empty_run = randomized_completeness_check(s.alg, s.fam, s.metric, elems, 0, 1);
  CHECK(empty_run.trials == 0);
  CHECK(empty_run.certified_hits == 0);
  CHECK(empty_run.violations == 0);
}

TEST_CASE("completeness search rediscovers a removed element") {
  const Setup s = setup(GroupName::Sol3xR, 1);
  auto elems = discrete_stabilizer(s.alg, s.fam, s.metric);
  REQUIRE(elems.size() == 16);
  const Mat removed = elems.back();
  elems.pop_back();
  const auto ev = randomized_completeness_check(s.alg, s.fam, s.metric, elems, 4000, 77);
  CHECK(ev.violations > 0);
  REQUIRE(!ev.violation_witnesses.empty());
  for (const Mat& w : ev.violation_witnesses) CHECK(exactly_equal(w, removed));
}

TEST_CASE("shear forcing matrix has the closed-form determinant") {
  SplitMix64 rng(37);
  const AutFamily fam_branch = aut_family(GroupName::Nil4);
  const FamilyBranch& branch = fam_branch.branches.front();
  for (int it = 0; it < 20; ++it) {
    const Rational a = random_nonzero_rational(rng), d = random_nonzero_rational(rng);
    const Rational alpha = abs(random_nonzero_rational(rng)), gamma = abs(random_nonzero_rational(rng));
    const Rational beta = abs(random_nonzero_rational(rng));
    const Rational e = random_rational(rng);
    const Mat metric = metric_matrix(
        MetricSpec{GroupName::Nil4, 2, {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}});
    const Expr::Env fixed = {{"a", a}, {"d", d}, {"b", q(0)}, {"y", q(0)}, {"z", q(0)}};
    const Expr::Env point = {{"x", q(0)}, {"e", e}};
    const Mat rows = forcing_system_matrix(branch, metric, fixed, {"x", "e"}, point,
                                           {{0, 2}, {1, 2}});
    const Rational expected = a * a * d * d * d / (alpha * alpha * gamma * gamma);
    CHECK(determinant(rows) == expected);
  }
}
