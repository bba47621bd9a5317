#pragma once

#include <string>
#include <vector>

#include "isom4d/rational.hpp"

namespace isom4d {

struct PolyDivMod;

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending degree. The zero polynomial has an empty coefficient list;
/// otherwise the leading coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending_coeffs);
  static Polynomial constant(const Rational& c);
  /// c * x^k
  static Polynomial monomial(const Rational& c, int k);

  bool is_zero() const { return c_.empty(); }
  /// Degree of the polynomial; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  Rational leading() const;

  Rational eval(const Rational& x) const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  /// Euclidean division; requires a nonzero divisor.
  PolyDivMod divmod(const Polynomial& divisor) const;

  /// Leading coefficient scaled to 1 (zero polynomial unchanged).
  Polynomial monic() const;

  std::string str(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<Rational> c_;
};

struct PolyDivMod {
  Polynomial quotient;
  Polynomial remainder;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// p divided by gcd(p, p'): same roots, all simple.
Polynomial square_free_part(const Polynomial& p);

/// Record of one real-root count: the sign-variation bookkeeping of the
/// remainder chain together with the square-free reduction.
struct SturmCertificate {
  std::string poly;
  int degree = 0;
  int squarefree_degree = 0;
  std::vector<int> chain_degrees;
  int variations_at_minus_inf = 0;
  int variations_at_plus_inf = 0;
  int distinct_real_roots = 0;
  bool real_rooted = false;  // every root real, multiplicity included
};

SturmCertificate sturm_certificate(const Polynomial& p);

/// Number of distinct real roots over the whole line. Requires p != 0.
int count_real_roots(const Polynomial& p);

/// True when every complex root of p is real (counted with multiplicity).
bool is_real_rooted(const Polynomial& p);

}  // namespace isom4d
