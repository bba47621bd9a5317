#include "isom4d/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace isom4d {

Polynomial::Polynomial(std::vector<Rational> ascending_coeffs) : c_(std::move(ascending_coeffs)) {
  normalize();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, int k) {
  if (k < 0) throw std::invalid_argument("Polynomial: negative exponent");
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational Polynomial::leading() const {
  if (is_zero()) throw std::invalid_argument("Polynomial: zero polynomial has no leading coefficient");
  return c_.back();
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) v[k] += o.c_[k];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  std::vector<Rational> v(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] = -c_[k];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Rational& s) const {
  std::vector<Rational> v(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k] * s;
  return Polynomial(std::move(v));
}

PolyDivMod Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("Polynomial: division by zero polynomial");
  Polynomial rem = *this;
  std::vector<Rational> q;
  const int dd = divisor.degree();
  if (rem.degree() >= dd) q.assign(static_cast<std::size_t>(rem.degree() - dd) + 1, Rational(0));
  while (!rem.is_zero() && rem.degree() >= dd) {
    const int shift = rem.degree() - dd;
    const Rational f = rem.leading() / divisor.leading();
    q[static_cast<std::size_t>(shift)] = f;
    rem = rem - Polynomial::monomial(f, shift) * divisor;
  }
  return {Polynomial(std::move(q)), rem};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[static_cast<std::size_t>(k)];
    if (a.is_zero()) continue;
    if (!first) os << (a.sign() > 0 ? " + " : " - ");
    else if (a.sign() < 0) os << "-";
    first = false;
    const Rational mag = abs(a);
    if (k == 0 || !mag.is_one()) os << mag.str();
    if (k > 0) {
      if (!mag.is_one()) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x.divmod(y).remainder;
    x = y;
    y = std::move(r);
  }
  return x.monic();
}

Polynomial square_free_part(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("square_free_part: zero polynomial");
  if (p.degree() == 0) return p.monic();
  const Polynomial g = gcd(p, p.derivative());
  return p.divmod(g).quotient.monic();
}

namespace {

// Signed remainder chain of the square-free part; each element is scaled by a
// positive constant so coefficients stay small without touching signs.
std::vector<Polynomial> sturm_chain(const Polynomial& squarefree) {
  std::vector<Polynomial> chain{squarefree};
  if (squarefree.degree() >= 1) {
    chain.push_back(squarefree.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
      const Polynomial& p0 = chain[chain.size() - 2];
      const Polynomial& p1 = chain.back();
      Polynomial r = -(p0.divmod(p1).remainder);
      if (r.is_zero()) break;
      r = r * (Rational(1) / abs(r.leading()));
      chain.push_back(std::move(r));
      if (chain.back().degree() == 0) break;
    }
  }
  return chain;
}

int sign_at_infinity(const Polynomial& p, bool plus) {
  int s = p.leading().sign();
  if (!plus && (p.degree() % 2 != 0)) s = -s;
  return s;
}

int variations(const std::vector<Polynomial>& chain, bool plus) {
  int count = 0;
  int prev = 0;
  for (const auto& p : chain) {
    const int s = sign_at_infinity(p, plus);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

SturmCertificate sturm_certificate(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("sturm_certificate: zero polynomial");
  SturmCertificate cert;
  cert.poly = p.str();
  cert.degree = p.degree();
  const Polynomial sf = square_free_part(p);
  cert.squarefree_degree = sf.degree();
  const auto chain = sturm_chain(sf);
  for (const auto& q : chain) cert.chain_degrees.push_back(q.degree());
  cert.variations_at_minus_inf = variations(chain, false);
  cert.variations_at_plus_inf = variations(chain, true);
  cert.distinct_real_roots = cert.variations_at_minus_inf - cert.variations_at_plus_inf;
  cert.real_rooted = (cert.distinct_real_roots == cert.squarefree_degree);
  return cert;
}

int count_real_roots(const Polynomial& p) { return sturm_certificate(p).distinct_real_roots; }

bool is_real_rooted(const Polynomial& p) { return sturm_certificate(p).real_rooted; }

}  // namespace isom4d
