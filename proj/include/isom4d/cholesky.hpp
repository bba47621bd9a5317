#pragma once

#include <vector>

#include "isom4d/types.hpp"

namespace isom4d {

std::vector<Rational> leading_principal_minors(const Mat& s);

/// Sylvester test: all leading principal minors strictly positive.
/// Requires a symmetric input.
bool is_positive_definite(const Mat& s);

/// Outcome of the exact upper factorization s = C^T C with C upper
/// triangular and positive diagonal.
///
/// When some diagonal entry of C would be irrational the factorization is
/// refused rather than approximated; positive definiteness is then certified
/// separately through the leading minors.
struct CholeskyOutcome {
  enum class Status { Ok, NotSymmetric, NotPositiveDefinite, IrrationalFactor };
  Status status = Status::NotSymmetric;
  Mat factor;                             // valid only when status == Ok
  std::vector<Rational> leading_minors;   // filled for every status except NotSymmetric
  int failing_minor = 0;                  // 1-based index, NotPositiveDefinite only

  bool ok() const { return status == Status::Ok; }
};

CholeskyOutcome cholesky_upper(const Mat& s);

}  // namespace isom4d
