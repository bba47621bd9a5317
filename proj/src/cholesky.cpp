#include "isom4d/cholesky.hpp"

#include <stdexcept>

#include "isom4d/linalg.hpp"

namespace isom4d {

std::vector<Rational> leading_principal_minors(const Mat& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("leading_principal_minors: matrix not square");
  std::vector<Rational> minors;
  for (Index k = 1; k <= s.rows(); ++k) minors.push_back(determinant(s.topLeftCorner(k, k)));
  return minors;
}

bool is_positive_definite(const Mat& s) {
  if (!is_symmetric(s)) throw std::invalid_argument("is_positive_definite: matrix not symmetric");
  for (const Rational& m : leading_principal_minors(s))
    if (m.sign() <= 0) return false;
  return true;
}

CholeskyOutcome cholesky_upper(const Mat& s) {
  CholeskyOutcome out;
  if (!is_symmetric(s)) {
    out.status = CholeskyOutcome::Status::NotSymmetric;
    return out;
  }
  out.leading_minors = leading_principal_minors(s);
  for (std::size_t k = 0; k < out.leading_minors.size(); ++k) {
    if (out.leading_minors[k].sign() <= 0) {
      out.status = CholeskyOutcome::Status::NotPositiveDefinite;
      out.failing_minor = static_cast<int>(k) + 1;
      return out;
    }
  }

  const Index n = s.rows();
  Mat c = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) {
      Rational acc = s(i, j);
      for (Index k = 0; k < i; ++k) acc -= c(k, i) * c(k, j);
      c(i, j) = acc / c(i, i);
    }
    Rational d = s(j, j);
    for (Index k = 0; k < j; ++k) d -= c(k, j) * c(k, j);
    const auto root = sqrt_exact(d);
    if (!root) {
      out.status = CholeskyOutcome::Status::IrrationalFactor;
      return out;
    }
    c(j, j) = *root;
  }
  out.status = CholeskyOutcome::Status::Ok;
  out.factor = std::move(c);
  return out;
}

}  // namespace isom4d
