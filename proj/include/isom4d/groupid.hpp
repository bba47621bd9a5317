#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isom4d/catalog.hpp"
#include "isom4d/stabilizer.hpp"
#include "isom4d/types.hpp"

namespace isom4d {

class ClosureCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite group of exact matrices: contains the identity, closed under
/// product and inverse, elements pairwise distinct and lexicographically
/// sorted.
struct FiniteMatrixGroup {
  std::vector<Mat> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(const Mat& a) const;
};

/// Product saturation of the generators; throws ClosureCapExceeded when the
/// element count passes `cap` (a guard against accidentally infinite input).
FiniteMatrixGroup closure(const std::vector<Mat>& generators, int cap = 64);

/// Order of one element under repeated multiplication.
int element_order(const Mat& a, int cap = 64);

/// Multiset of element orders, as order -> count.
std::map<int, int> order_profile(const FiniteMatrixGroup& g);

struct GroupInvariants {
  int order = 0;
  bool abelian = true;
  std::map<int, int> profile;
  int center_order = 0;
};

GroupInvariants group_invariants(const FiniteMatrixGroup& g);

enum class GroupTypeKind {
  Trivial,
  Z2,
  Z2xZ2,
  Z4,
  Z2xZ2xZ2,
  D4,
  D4xZ2,
  O2Extension,
  Unidentified
};

struct GroupType {
  GroupTypeKind kind = GroupTypeKind::Unidentified;
  int components = 0;  // O2Extension only: number of connected components
  GroupInvariants invariants;

  std::string name() const;  // e.g. "(Z₂)²", "D(4)×Z₂", "O(2)×Z₂ [4 components]"
  std::string ascii_token() const;  // e.g. "Z2xZ2", "D4", "O2_extension"
};

/// Names the isomorphism type of a finite matrix group from its invariant
/// tuple (order, abelian, order profile, center order). Types outside the
/// scoped list come back as Unidentified carrying the tuple.
GroupType identify(const FiniteMatrixGroup& g);

/// Isometry-group descriptor: the group acting by left translations extended
/// by the metric-preserving automorphisms.
struct IsometryDescriptor {
  GroupName group;
  int case_id = 0;
  GroupType stabilizer_type;
  std::optional<int> stabilizer_order;  // empty for a continuous stabilizer
  int identity_component_dim = 0;
  int components = 0;
  std::string structure;  // e.g. "Nil⁴ ⋊ (Z₂)²"
};

/// Assemble the descriptor. The algebra must be nilpotent, or solvable and
/// unimodular with real ad-eigenvalues (checked by exact sampling); otherwise
/// throws.
IsometryDescriptor isom_descriptor(GroupName name, int case_id, const StabilizerResult& st,
                                   const LieAlgebra& algebra);

}  // namespace isom4d
