#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "isom4d/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<isom4d::Rational> : GenericNumTraits<isom4d::Rational> {
  typedef isom4d::Rational Real;
  typedef isom4d::Rational NonInteger;
  typedef isom4d::Rational Nested;
  typedef isom4d::Rational Literal;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace isom4d {

using Index = Eigen::Index;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline Mat mat_from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  Mat m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c)
      throw std::invalid_argument("mat_from_rows: ragged rows");
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline Vec vec_from(std::initializer_list<Rational> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline Mat identity(Index n) { return Mat::Identity(n, n); }
inline Mat zeros(Index r, Index c) { return Mat::Zero(r, c); }

inline bool exactly_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

inline bool is_zero_matrix(const Mat& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

/// Row-major lexicographic order, used wherever element lists need a
/// deterministic arrangement.
inline bool lex_less(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j)) return true;
      if (b(i, j) < a(i, j)) return false;
    }
  return false;
}

}  // namespace isom4d
