#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isom4d/polynomial.hpp"
#include "isom4d/types.hpp"

namespace isom4d {

/// Finite-dimensional Lie algebra over the rationals, given by its structure
/// constants in a distinguished basis e_1..e_n. Only pairs i < j are stored;
/// antisymmetry fills in the rest. Construction does not enforce the Jacobi
/// identity, so deliberately broken tables can be built and tested.
class LieAlgebra {
 public:
  /// brackets: list of (i, j, value-of-[e_i,e_j]) with 0-based i < j.
  static LieAlgebra from_brackets(Index dim, const std::vector<std::tuple<Index, Index, Vec>>& brackets);

  Index dim() const { return dim_; }

  /// [e_i, e_j] for any i, j (antisymmetric, zero on the diagonal).
  Vec basis_bracket(Index i, Index j) const;

  Vec bracket(const Vec& x, const Vec& y) const;

  /// Matrix of y -> [x, y] in the distinguished basis.
  Mat ad(const Vec& x) const;
  Mat ad_basis(Index i) const;

  bool check_jacobi() const;
  bool is_unimodular() const;

  /// Dimensions of g, [g,g], [g,[g,g]], ... until stabilization.
  std::vector<Index> lower_central_series_dims() const;
  /// Dimensions of g, [g,g], [[g,g],[g,g]], ... until stabilization.
  std::vector<Index> derived_series_dims() const;
  bool is_nilpotent() const { return lower_central_series_dims().back() == 0; }
  bool is_solvable() const { return derived_series_dims().back() == 0; }

  /// Exact basis of the derivation algebra: all D with
  /// D[x,y] = [Dx,y] + [x,Dy].
  std::vector<Mat> derivations() const;

  /// True when a preserves every basis bracket exactly. Throws on a singular
  /// or wrongly shaped input.
  bool is_automorphism(const Mat& a) const;

 private:
  LieAlgebra(Index dim, std::vector<Vec> table) : dim_(dim), table_(std::move(table)) {}
  std::size_t pair_index(Index i, Index j) const;  // requires i < j

  Index dim_ = 0;
  std::vector<Vec> table_;
};

/// Rows of the linear system cutting out Der(g) inside gl(n); the unknown D
/// is flattened row-major with D(i,j) at index i*n + j.
Mat derivation_system(const LieAlgebra& g);

struct TypeRSample {
  Vec x;
  SturmCertificate certificate;
};

/// Result of randomized real-eigenvalue sampling: for each sampled x the
/// characteristic polynomial of ad x is certified real-rooted or a witness
/// of failure is returned.
struct TypeRReport {
  bool all_real_rooted = false;
  int samples = 0;
  std::uint64_t seed = 0;
  std::optional<TypeRSample> witness;       // first failing sample, if any
  std::vector<TypeRSample> certificates;    // per-sample certificates
};

TypeRReport is_type_r_sampled(const LieAlgebra& g, int n_samples, std::uint64_t seed,
                              bool keep_certificates = false);

}  // namespace isom4d
