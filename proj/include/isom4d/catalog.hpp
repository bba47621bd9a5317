#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isom4d/expr.hpp"
#include "isom4d/lie_algebra.hpp"
#include "isom4d/rng.hpp"
#include "isom4d/types.hpp"

namespace isom4d {

/// The seven simply connected unimodular 4-dimensional Lie groups covered by
/// the library: two nilpotent, five solvable.
enum class GroupName { Nil3xR, Nil4, SolMN4, Sol3xR, Sol04, Sol0p4, Sol14 };

inline constexpr std::array<GroupName, 7> kAllGroups = {
    GroupName::Nil3xR, GroupName::Nil4,  GroupName::SolMN4, GroupName::Sol3xR,
    GroupName::Sol04,  GroupName::Sol0p4, GroupName::Sol14};

std::string_view ascii_name(GroupName g);    // e.g. "nil3xr" (CLI spelling)
std::string_view display_name(GroupName g);  // e.g. "Nil³×ℝ"
std::optional<GroupName> parse_group(std::string_view s);

/// Diagonal action weights of Sol4_{m,n}: three distinct rationals summing
/// to zero.
struct SolWeights {
  Rational w1, w2, w3;
  void validate() const;
  static SolWeights defaults() { return {Rational(1), Rational(2), Rational(-3)}; }
};

enum class ParamDomain { Nonzero, Free };

struct FamilyParam {
  std::string name;
  ParamDomain domain;
};

/// One parameterized 4x4 matrix family: entries are expressions in the
/// parameters. Admissible assignments respect the per-parameter domains and
/// make the matrix nonsingular.
struct FamilyBranch {
  std::vector<FamilyParam> params;
  std::array<Expr, 16> entries;  // row-major
  std::array<int, 4> block_of;   // diagonal-block id of each basis index

  /// Parameters that occur inside a diagonal block (scale type, enumerated
  /// over small sign values by the stabilizer search) and the remaining ones
  /// (shear type, entering every matrix entry affinely).
  std::vector<std::string> scale_params;
  std::vector<std::string> shear_params;

  Mat instantiate(const Expr::Env& env) const;
  const FamilyParam* find_param(std::string_view name) const;
};

struct AutFamily {
  GroupName group;
  std::vector<FamilyBranch> branches;
};

/// The catalog Lie algebra of a group; weights are required exactly for
/// SolMN4 and rejected elsewhere.
LieAlgebra catalog_algebra(GroupName g, const std::optional<SolWeights>& weights = std::nullopt);

/// The full automorphism group of the catalog algebra as one or two
/// parameterized branches.
AutFamily aut_family(GroupName g);

/// Number of parameters of branch 1, which is the dimension of the
/// automorphism group.
int aut_family_param_count(GroupName g);

/// Random admissible parameter assignment (nonsingular instance guaranteed).
Expr::Env sample_branch_params(const FamilyBranch& branch, SplitMix64& rng);

struct FamilyVerification {
  bool ok = false;
  int samples_per_branch = 0;
  int checked = 0;
  std::optional<Expr::Env> failing_params;
  int failing_branch = -1;
};

/// Consistency check tying structure constants to the matrix families: every
/// sampled admissible family member must preserve the bracket exactly.
FamilyVerification verify_family_against(const LieAlgebra& g, const AutFamily& family,
                                         int n_samples, std::uint64_t seed);

bool verify_aut_family(GroupName g, int n_samples, std::uint64_t seed,
                       const std::optional<SolWeights>& weights = std::nullopt);

}  // namespace isom4d
