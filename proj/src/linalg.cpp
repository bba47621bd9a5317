#include "isom4d/linalg.hpp"

#include <stdexcept>

namespace isom4d {

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  return a * b;
}

std::vector<Index> rref_in_place(Mat& m) {
  std::vector<Index> pivots;
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Rational inv = Rational(1) / m(r, c);
    for (Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Index rank(const Mat& m) {
  Mat w = m;
  return static_cast<Index>(rref_in_place(w).size());
}

std::vector<Vec> rref_nullspace(const Mat& m) {
  Mat w = m;
  const auto pivots = rref_in_place(w);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vec> basis;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vec v = Vec::Zero(cols);
    v(free) = Rational(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v(pivots[k]) = -w(static_cast<Index>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const Index n = m.rows();
  Mat aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat::Identity(n, n);
  const auto pivots = rref_in_place(aug);
  // a nonsingular input puts the pivots exactly in the left block
  if (static_cast<Index>(pivots.size()) < n || pivots.back() >= n)
    throw std::invalid_argument("inverse: singular matrix");
  return aug.rightCols(n);
}

Rational determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  Mat w = m;
  const Index n = w.rows();
  Rational det(1);
  for (Index c = 0; c < n; ++c) {
    Index p = -1;
    for (Index i = c; i < n; ++i)
      if (!w(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != c) {
      w.row(p).swap(w.row(c));
      det = -det;
    }
    det *= w(c, c);
    const Rational inv = Rational(1) / w(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (w(i, c).is_zero()) continue;
      const Rational f = w(i, c) * inv;
      for (Index j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return det;
}

bool is_symmetric(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

Polynomial char_poly(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: matrix not square");
  const Index n = m.rows();
  std::vector<Rational> coeff(static_cast<std::size_t>(n) + 1, Rational(0));
  coeff[static_cast<std::size_t>(n)] = Rational(1);
  Mat mk = Mat::Identity(n, n);
  for (Index k = 1; k <= n; ++k) {
    if (k > 1) {
      Mat next = m * mk;
      const Rational& c = coeff[static_cast<std::size_t>(n - k + 1)];
      for (Index i = 0; i < n; ++i) next(i, i) += c;
      mk = std::move(next);
    }
    const Mat am = m * mk;
    Rational tr(0);
    for (Index i = 0; i < n; ++i) tr += am(i, i);
    coeff[static_cast<std::size_t>(n - k)] = -tr / Rational(static_cast<long long>(k));
  }
  return Polynomial(std::move(coeff));
}

}  // namespace isom4d
