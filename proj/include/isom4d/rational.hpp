#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace isom4d {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Values are always kept in lowest terms with a positive denominator; zero
/// is represented as 0/1. All arithmetic is eager (no expression templates
/// leak out of the GMP backend), so a Rational can be used as a scalar type
/// inside Eigen matrices.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(static_cast<long int>(n)) {}  // NOLINT
  Rational(long long n) { v_ = make_mpz(n); }         // NOLINT

  Rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(make_mpz(num), make_mpz(den));
    v_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  /// Parses "p", "-p", "p/q" or "-p/q" in base 10.
  static Rational from_string(std::string_view s);

  /// Renders as "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  const mpq_class& raw() const { return v_; }
  Rational numerator() const { return Rational(mpz_class(v_.get_num())); }
  Rational denominator() const { return Rational(mpz_class(v_.get_den())); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static mpz_class make_mpz(long long n) {
    if (n >= 0) return mpz_class(static_cast<unsigned long>(n));
    mpz_class m(static_cast<unsigned long>(-(n + 1)));
    m += 1;
    return -m;
  }

  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, int e) {
  if (e < 0) {
    if (base.is_zero()) throw std::invalid_argument("Rational: 0 to a negative power");
    return Rational(1) / pow(base, -e);
  }
  Rational acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

/// Exact square root, or nullopt when the value is not a perfect square of a
/// rational (negative inputs included).
inline std::optional<Rational> sqrt_exact(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  mpz_class num = r.raw().get_num(), den = r.raw().get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(sn, sd));
}

inline Rational Rational::from_string(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  const auto slash = s.find('/');
  std::string num(trim(slash == std::string_view::npos ? s : s.substr(0, slash)));
  std::string den(slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1)));
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(s) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

inline std::string Rational::str() const {
  std::string out = v_.get_num().get_str();
  if (v_.get_den() != 1) {
    out += '/';
    out += v_.get_den().get_str();
  }
  return out;
}

}  // namespace isom4d
