#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isom4d/catalog.hpp"
#include "isom4d/types.hpp"

namespace isom4d {

/// Matrix family that is affine in its remaining parameters:
/// A(t) = a0 + sum_k t_k * directions[k].
struct AffinePencil {
  Mat a0;
  std::vector<Mat> directions;
  std::vector<std::string> vars;

  Mat at(const Vec& t) const;
};

/// Branch with the given parameters substituted by constants; every other
/// parameter must enter the entries affinely, otherwise throws.
AffinePencil branch_pencil(const FamilyBranch& branch, const Expr::Env& fixed);

/// One entry of A(t)^T M A(t) - M as an exact quadratic form
/// c + l.t + t^T q t with q symmetric.
struct QuadraticEquation {
  Rational c;
  Vec l;
  Mat q;
};

std::vector<QuadraticEquation> stabilizer_equations(const AffinePencil& pencil, const Mat& metric);

/// Raised when, after fixing the scale parameters, the remaining equations do
/// not pin the shear parameters by linear elimination alone. Reported rather
/// than solved heuristically; does not occur on the catalog.
class UnresolvedBranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ForcingOutcome {
  bool solved = false;  // false: the equations are inconsistent
  Vec solution;
};

/// Iterated linear elimination: repeatedly solve the currently affine subset
/// of the equations and substitute, until the variables are pinned or an
/// inconsistency closes the branch. Throws UnresolvedBranchError when stuck.
ForcingOutcome solve_by_affine_forcing(std::vector<QuadraticEquation> eqs);

/// The row matrix (one row per requested entry of A^T M A - M) whose product
/// with the unknown vector reproduces the equation values at `point`:
/// row = l + q * point. Used to certify shear-parameter elimination through
/// its determinant.
Mat forcing_system_matrix(const FamilyBranch& branch, const Mat& metric, const Expr::Env& fixed,
                          const std::vector<std::string>& unknowns, const Expr::Env& point,
                          const std::vector<std::pair<Index, Index>>& entries);

/// Exact basis of {D in Der(g) : D^T M + M D = 0}; its size is the dimension
/// of the identity component of the metric stabilizer.
std::vector<Mat> isotropy_algebra(const LieAlgebra& g, const Mat& metric);

/// Coordinate plane of the one-parameter rotation subgroup.
struct RotationBlock {
  Index i = 0, j = 0;
};

/// Rational rotation ((1-t^2)/(1+t^2), 2t/(1+t^2)) embedded in the block.
Mat circle_rotation(const Rational& t, const RotationBlock& block, Index n);

/// Rotation by pi, the single point the t-parameterization misses.
Mat half_turn(const RotationBlock& block, Index n);

/// True when a^{-1} b is an embedded rational rotation of the block, i.e. a
/// and b lie in the same connected component of the stabilizer.
bool same_rotation_component(const Mat& a, const Mat& b, const RotationBlock& block);

/// Certified stabilizer elements obtained by enumerating scale-parameter
/// sign patterns in {-1, 0, 1}, linearly forcing the shear parameters and
/// verifying every candidate exactly (bracket preservation and
/// A^T M A = M). Sorted, duplicates removed.
std::vector<Mat> discrete_stabilizer(const LieAlgebra& g, const AutFamily& family,
                                     const Mat& metric);

struct CompletenessEvidence {
  std::uint64_t seed = 0;
  int trials = 0;
  int certified_hits = 0;
  int violations = 0;
  std::vector<Mat> violation_witnesses;
};

/// Randomized search for stabilizer elements the enumeration might have
/// missed: scale parameters are drawn from a rational grid inside the entry
/// bound |A_ij|^2 <= M_jj (M^{-1})_ii, shear parameters are projected by the
/// linear solve, and every exactly certified element must already be listed
/// in `found` (up to the rotation component when one exists).
CompletenessEvidence randomized_completeness_check(const LieAlgebra& g, const AutFamily& family,
                                                   const Mat& metric, const std::vector<Mat>& found,
                                                   int trials, std::uint64_t seed,
                                                   const std::optional<RotationBlock>& block = {});

struct StabilizerOptions {
  int trials = 200;
  std::uint64_t seed = kDefaultSeed;
};

struct StabilizerResult {
  int identity_component_dim = 0;
  std::vector<Mat> elements;        // all certified sign-pattern elements
  std::vector<Mat> component_reps;  // one per connected component
  std::optional<int> finite_order;  // empty when a rotation subgroup exists
  std::optional<RotationBlock> continuous_block;
  CompletenessEvidence evidence;

  int component_count() const { return static_cast<int>(component_reps.size()); }
};

/// Full stabilizer of the metric inside the automorphism family: identity
/// component via the isotropy algebra, component representatives via exact
/// enumeration, completeness evidence via randomized search. For a
/// one-dimensional identity component the rotation parameterization is
/// verified to preserve bracket and metric at 20 sampled rational angles.
StabilizerResult stabilizer(const LieAlgebra& g, const AutFamily& family, const Mat& metric,
                            const StabilizerOptions& options = {});

}  // namespace isom4d
