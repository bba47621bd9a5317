#include <doctest.h>

#include <set>

#include "isom4d/cholesky.hpp"
#include "isom4d/linalg.hpp"
#include "isom4d/polynomial.hpp"
#include "isom4d/rng.hpp"
#include "isom4d/types.hpp"

using namespace isom4d;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

// Characteristic polynomial by cofactor expansion of x*I - m over the
// polynomial ring; independent of the trace-recurrence route.
Polynomial poly_det(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial acc;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][k] * poly_det(std::move(minor));
    if (k % 2 == 1) term = -term;
    acc = acc + term;
  }
  return acc;
}

Polynomial char_poly_by_minors(const Mat& m) {
  const Index n = m.rows();
  std::vector<std::vector<Polynomial>> entries(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Polynomial e = Polynomial::constant(-m(i, j));
      if (i == j) e = e + Polynomial::monomial(Rational(1), 1);
      entries[static_cast<std::size_t>(i)].push_back(std::move(e));
    }
  return poly_det(std::move(entries));
}

Mat random_int_matrix(SplitMix64& rng, Index n, int lo = -3, int hi = 3) {
  Mat m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Rational(rng.int_in(lo, hi));
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK((q(1, 2) + q(1, 3)).str() == "5/6");
  CHECK((q(1, 2) * q(2, 3)).str() == "1/3");
  CHECK((q(1, 2) / q(3, 4)).str() == "2/3");
  CHECK((q(3) - q(3)).is_zero());
  CHECK(q(7, 3).denominator().str() == "3");
  CHECK_THROWS_AS(q(1) / q(0), std::invalid_argument);
}

TEST_CASE("rational string round trip") {
  for (const char* s : {"0", "5", "-5", "1/2", "-22/7", "123456789123456789/2"})
    CHECK(Rational::from_string(s).str() == s);
  CHECK(Rational::from_string("4/6").str() == "2/3");
  CHECK(Rational::from_string(" 3 / 4 ").str() == "3/4");
  CHECK_THROWS_AS(Rational::from_string("a"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
}

TEST_CASE("exact square root of perfect squares only") {
  CHECK(sqrt_exact(q(9, 4)).value() == q(3, 2));
  CHECK(sqrt_exact(q(0)).value() == q(0));
  CHECK(!sqrt_exact(q(2)).has_value());
  CHECK(!sqrt_exact(q(-4)).has_value());
  CHECK(!sqrt_exact(q(1, 3)).has_value());
}

TEST_CASE("matmul handles identity and inverse pairs") {
  const Mat i4 = identity(4);
  CHECK(exactly_equal(matmul(i4, i4), i4));

  const Mat d = mat_from_rows({{q(2), q(0)}, {q(0), q(3)}});
  const Mat dinv = mat_from_rows({{q(1, 2), q(0)}, {q(0), q(1, 3)}});
  CHECK(exactly_equal(matmul(d, dinv), identity(2)));

  // metric transport by the identity automorphism leaves the matrix alone
  const Mat g = mat_from_rows({{q(1), q(-1), q(0), q(0)},
                               {q(-1), q(2), q(0), q(0)},
                               {q(0), q(0), q(1), q(0)},
                               {q(0), q(0), q(0), q(1)}});
  CHECK(exactly_equal(matmul(matmul(i4.transpose(), g), i4), g));

  CHECK_THROWS_AS(matmul(Mat::Zero(2, 3), Mat::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("nullspace of zero and identity matrices") {
  CHECK(rref_nullspace(Mat::Zero(3, 3)).size() == 3);
  CHECK(rref_nullspace(identity(4)).empty());
}

TEST_CASE("nullspace vectors are exact kernel elements") {
  SplitMix64 rng(31);
  for (int it = 0; it < 25; ++it) {
    Mat m = random_int_matrix(rng, 4);
    m.row(3) = m.row(0) + m.row(1);  // force rank deficiency
    const auto basis = rref_nullspace(m);
    CHECK(static_cast<Index>(basis.size()) == 4 - rank(m));
    for (const Vec& v : basis) {
      const Vec image = m * v;
      for (Index i = 0; i < image.size(); ++i) CHECK(image(i).is_zero());
    }
  }
}

TEST_CASE("inverse of diagonal and triangular matrices") {
  CHECK(exactly_equal(inverse(identity(4)), identity(4)));

  Mat d = identity(4);
  d(0, 0) = q(2);
  Mat dinv = identity(4);
  dinv(0, 0) = q(1, 2);
  CHECK(exactly_equal(inverse(d), dinv));

  const Mat m = mat_from_rows({{q(1), q(1), q(0), q(0)},
                               {q(0), q(1), q(0), q(0)},
                               {q(0), q(0), q(1), q(0)},
                               {q(0), q(0), q(0), q(1)}});
  CHECK(exactly_equal(matmul(m, inverse(m)), identity(4)));

  CHECK_THROWS_AS(inverse(Mat::Zero(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(inverse(Mat::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("inverse round trip on random nonsingular matrices") {
  SplitMix64 rng(77);
  int done = 0;
  while (done < 25) {
    const Mat m = random_int_matrix(rng, 4);
    if (determinant(m).is_zero()) continue;
    CHECK(exactly_equal(matmul(m, inverse(m)), identity(4)));
    ++done;
  }
}

TEST_CASE("characteristic polynomial of simple matrices") {
  CHECK(char_poly(identity(2)) == Polynomial({q(1), q(-2), q(1)}));  // (x-1)^2

  const Mat d = mat_from_rows({{q(1), q(0), q(0)}, {q(0), q(2), q(0)}, {q(0), q(0), q(-3)}});
  // (x-1)(x-2)(x+3) = x^3 - 7x + 6
  CHECK(char_poly(d) == Polynomial({q(6), q(-7), q(0), q(1)}));
}

TEST_CASE("characteristic polynomial matches cofactor expansion") {
  SplitMix64 rng(123);
  for (int it = 0; it < 20; ++it) {
    const Mat m = random_int_matrix(rng, 4);
    CHECK(char_poly(m) == char_poly_by_minors(m));
  }
  for (int it = 0; it < 10; ++it) {
    const Mat m = random_int_matrix(rng, 3);
    CHECK(char_poly(m) == char_poly_by_minors(m));
  }
}

TEST_CASE("Cayley-Hamilton holds for the computed characteristic polynomial") {
  SplitMix64 rng(456);
  for (int it = 0; it < 10; ++it) {
    const Mat m = random_int_matrix(rng, 4);
    const Polynomial p = char_poly(m);
    Mat acc = Mat::Zero(4, 4);
    Mat power = identity(4);
    for (int k = 0; k <= p.degree(); ++k) {
      acc += p.coeff(k) * power;
      power = power * m;
    }
    CHECK(is_zero_matrix(acc));
  }
}

TEST_CASE("real root counting by sturm sequences") {
  // x^2 + 1: no real roots
  const Polynomial no_real({q(1), q(0), q(1)});
  CHECK(count_real_roots(no_real) == 0);
  CHECK(!is_real_rooted(no_real));

  // x^3 - x = x(x-1)(x+1)
  const Polynomial cubic({q(0), q(-1), q(0), q(1)});
  CHECK(count_real_roots(cubic) == 3);
  CHECK(is_real_rooted(cubic));

  // x^4 - x^2 = x^2 (x-1)(x+1): double root at zero
  const Polynomial quartic({q(0), q(0), q(-1), q(0), q(1)});
  CHECK(count_real_roots(quartic) == 3);
  CHECK(is_real_rooted(quartic));

  // (x-1)^2 (x^2+1): the real root is repeated, the quadratic factor is not real
  const Polynomial mixed = Polynomial({q(1), q(-1)}) * Polynomial({q(1), q(-1)}) *
                           Polynomial({q(1), q(0), q(1)});
  CHECK(count_real_roots(mixed) == 1);
  CHECK(!is_real_rooted(mixed));

  CHECK_THROWS_AS(count_real_roots(Polynomial()), std::invalid_argument);
}

TEST_CASE("sturm counts agree with explicit factorizations") {
  SplitMix64 rng(789);
  for (int it = 0; it < 200; ++it) {
    const int factors = 1 + static_cast<int>(rng.below(4));
    Polynomial p = Polynomial::constant(q(1));
    std::set<std::string> distinct_roots;
    int quadratics = 0;
    for (int f = 0; f < factors; ++f) {
      if (rng.below(3) == 0) {
        // irreducible quadratic x^2 + bx + c with b^2 - 4c < 0
        for (;;) {
          const Rational b = random_rational(rng), c = random_rational(rng);
          if ((b * b - q(4) * c).sign() < 0) {
            p = p * Polynomial({c, b, q(1)});
            ++quadratics;
            break;
          }
        }
      } else {
        const Rational r = random_rational(rng);
        distinct_roots.insert(r.str());
        p = p * Polynomial({-r, q(1)});
      }
    }
    CHECK(count_real_roots(p) == static_cast<int>(distinct_roots.size()));
    CHECK(is_real_rooted(p) == (quadratics == 0));
  }
}

TEST_CASE("exact upper cholesky factor") {
  CHECK(exactly_equal(cholesky_upper(identity(4)).factor, identity(4)));

  Mat s = identity(4);
  s(0, 0) = q(1, 4);
  const auto out = cholesky_upper(s);
  REQUIRE(out.ok());
  Mat expected = identity(4);
  expected(0, 0) = q(1, 2);
  CHECK(exactly_equal(out.factor, expected));

  const Mat t = mat_from_rows({{q(1), q(-1)}, {q(-1), q(2)}});
  const auto tri = cholesky_upper(t);
  REQUIRE(tri.ok());
  CHECK(exactly_equal(tri.factor, mat_from_rows({{q(1), q(-1)}, {q(0), q(1)}})));
  CHECK(exactly_equal(tri.factor.transpose() * tri.factor, t));
}

TEST_CASE("cholesky failure modes carry certificates") {
  const Mat asym = mat_from_rows({{q(1), q(2)}, {q(3), q(4)}});
  CHECK(cholesky_upper(asym).status == CholeskyOutcome::Status::NotSymmetric);
  CHECK_THROWS_AS(is_positive_definite(asym), std::invalid_argument);

  const Mat indef = mat_from_rows({{q(1), q(2)}, {q(2), q(1)}});
  const auto bad = cholesky_upper(indef);
  CHECK(bad.status == CholeskyOutcome::Status::NotPositiveDefinite);
  CHECK(bad.failing_minor == 2);
  CHECK(bad.leading_minors[1] == q(-3));
  CHECK(!is_positive_definite(indef));

  const Mat irr = mat_from_rows({{q(2), q(0)}, {q(0), q(1)}});
  const auto ir = cholesky_upper(irr);
  CHECK(ir.status == CholeskyOutcome::Status::IrrationalFactor);
  REQUIRE(ir.leading_minors.size() == 2);
  CHECK(ir.leading_minors[0] == q(2));  // positive minors certify definiteness
  CHECK(ir.leading_minors[1] == q(2));
  CHECK(is_positive_definite(irr));
}

TEST_CASE("minor test matches cholesky outcome on gram matrices") {
  SplitMix64 rng(1001);
  for (int it = 0; it < 40; ++it) {
    const Mat a = random_int_matrix(rng, 3);
    const Mat s = a.transpose() * a;
    const bool pd = !determinant(a).is_zero();
    CHECK(is_positive_definite(s) == pd);
    const auto out = cholesky_upper(s);
    CHECK((out.status != CholeskyOutcome::Status::NotPositiveDefinite) == pd);
  }
  // upper triangular with positive diagonal: the factor is recovered exactly
  for (int it = 0; it < 40; ++it) {
    Mat b(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j)
        b(i, j) = i < j ? random_rational(rng) : (i == j ? abs(random_nonzero_rational(rng)) : q(0));
    const auto out = cholesky_upper(b.transpose() * b);
    REQUIRE(out.ok());
    CHECK(exactly_equal(out.factor, b));
  }
}

TEST_CASE("splitmix sampling is deterministic and on the grid") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational r = random_rational(rng);
    const Rational num = r.numerator(), den = r.denominator();
    CHECK(abs(num) <= q(9));
    CHECK(den <= q(3));
  }
}
