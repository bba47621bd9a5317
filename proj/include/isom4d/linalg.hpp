#pragma once

#include <vector>

#include "isom4d/polynomial.hpp"
#include "isom4d/types.hpp"

namespace isom4d {

/// Exact product with an explicit shape check (Eigen only asserts in debug).
Mat matmul(const Mat& a, const Mat& b);

/// In-place reduced row echelon form. Returns the pivot columns.
std::vector<Index> rref_in_place(Mat& m);

Index rank(const Mat& m);

/// Basis of the exact kernel of m, one column vector per basis element;
/// empty exactly when the kernel is trivial.
std::vector<Vec> rref_nullspace(const Mat& m);

/// Exact inverse of a nonsingular square matrix; throws std::invalid_argument
/// on shape mismatch or a singular input.
Mat inverse(const Mat& m);

Rational determinant(const Mat& m);

bool is_symmetric(const Mat& m);

/// Characteristic polynomial det(x*I - m), monic of degree n, computed by the
/// trace recurrence (one exact division per step). The cofactor expansion
/// route lives in the tests as an independent cross-check.
Polynomial char_poly(const Mat& m);

}  // namespace isom4d
