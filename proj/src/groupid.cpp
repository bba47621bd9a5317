#include "isom4d/groupid.hpp"

#include <algorithm>
#include <set>

#include "isom4d/linalg.hpp"

namespace isom4d {

namespace {

struct LexLess {
  bool operator()(const Mat& a, const Mat& b) const { return lex_less(a, b); }
};

}  // namespace

bool FiniteMatrixGroup::contains(const Mat& a) const {
  for (const Mat& e : elements)
    if (exactly_equal(e, a)) return true;
  return false;
}

FiniteMatrixGroup closure(const std::vector<Mat>& generators, int cap) {
  if (cap < 1) throw std::invalid_argument("closure: cap must be positive");
  if (generators.empty()) throw std::invalid_argument("closure: need at least one generator");
  const Index n = generators.front().rows();
  for (const Mat& g : generators) {
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("closure: mixed shapes");
    if (determinant(g).is_zero()) throw std::invalid_argument("closure: singular generator");
  }

  std::set<Mat, LexLess> seen;
  std::vector<Mat> queue;
  auto push = [&](const Mat& m) {
    if (seen.insert(m).second) {
      if (static_cast<int>(seen.size()) > cap)
        throw ClosureCapExceeded("closure: exceeded cap of " + std::to_string(cap) + " elements");
      queue.push_back(m);
    }
  };
  push(Mat::Identity(n, n));
  for (const Mat& g : generators) push(g);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mat current = queue[head];
    for (const Mat& g : generators) {
      push(current * g);
      push(g * current);
    }
  }
  FiniteMatrixGroup out;
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

int element_order(const Mat& a, int cap) {
  const Mat id = Mat::Identity(a.rows(), a.cols());
  Mat acc = a;
  for (int k = 1; k <= cap; ++k) {
    if (exactly_equal(acc, id)) return k;
    acc = acc * a;
  }
  throw ClosureCapExceeded("element_order: order exceeds cap of " + std::to_string(cap));
}

std::map<int, int> order_profile(const FiniteMatrixGroup& g) {
  std::map<int, int> profile;
  for (const Mat& e : g.elements) ++profile[element_order(e)];
  return profile;
}

GroupInvariants group_invariants(const FiniteMatrixGroup& g) {
  GroupInvariants inv;
  inv.order = g.order();
  inv.profile = order_profile(g);
  inv.abelian = true;
  for (std::size_t i = 0; i < g.elements.size() && inv.abelian; ++i)
    for (std::size_t j = i + 1; j < g.elements.size(); ++j)
      if (!exactly_equal(g.elements[i] * g.elements[j], g.elements[j] * g.elements[i])) {
        inv.abelian = false;
        break;
      }
  for (const Mat& e : g.elements) {
    bool central = true;
    for (const Mat& f : g.elements)
      if (!exactly_equal(e * f, f * e)) {
        central = false;
        break;
      }
    if (central) ++inv.center_order;
  }
  return inv;
}

namespace {

bool profile_is(const std::map<int, int>& profile, std::initializer_list<std::pair<int, int>> want) {
  std::map<int, int> w;
  for (const auto& [k, v] : want) w[k] = v;
  return profile == w;
}

}  // namespace

GroupType identify(const FiniteMatrixGroup& g) {
  GroupType t;
  t.invariants = group_invariants(g);
  const auto& inv = t.invariants;
  if (inv.order == 1) {
    t.kind = GroupTypeKind::Trivial;
  } else if (inv.order == 2) {
    t.kind = GroupTypeKind::Z2;
  } else if (inv.order == 4 && inv.abelian && profile_is(inv.profile, {{1, 1}, {2, 3}})) {
    t.kind = GroupTypeKind::Z2xZ2;
  } else if (inv.order == 4 && inv.profile.count(4)) {
    t.kind = GroupTypeKind::Z4;
  } else if (inv.order == 8 && inv.abelian && profile_is(inv.profile, {{1, 1}, {2, 7}})) {
    t.kind = GroupTypeKind::Z2xZ2xZ2;
  } else if (inv.order == 8 && !inv.abelian && profile_is(inv.profile, {{1, 1}, {2, 5}, {4, 2}})) {
    t.kind = GroupTypeKind::D4;
  } else if (inv.order == 16 && !inv.abelian &&
             profile_is(inv.profile, {{1, 1}, {2, 11}, {4, 4}}) && inv.center_order == 4) {
    t.kind = GroupTypeKind::D4xZ2;
  } else {
    t.kind = GroupTypeKind::Unidentified;
  }
  return t;
}

std::string GroupType::name() const {
  switch (kind) {
    case GroupTypeKind::Trivial: return "trivial";
    case GroupTypeKind::Z2: return "Z₂";
    case GroupTypeKind::Z2xZ2: return "(Z₂)²";
    case GroupTypeKind::Z4: return "Z₄";
    case GroupTypeKind::Z2xZ2xZ2: return "(Z₂)³";
    case GroupTypeKind::D4: return "D(4)";
    case GroupTypeKind::D4xZ2: return "D(4)×Z₂";
    case GroupTypeKind::O2Extension:
      if (components == 2) return "O(2)";
      if (components == 4) return "O(2)×Z₂";
      return "O(2) extension [" + std::to_string(components) + " components]";
    case GroupTypeKind::Unidentified: {
      std::string s = "unidentified(order " + std::to_string(invariants.order) +
                      (invariants.abelian ? ", abelian" : ", nonabelian") + ", profile {";
      bool first = true;
      for (const auto& [o, c] : invariants.profile) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(o) + ":" + std::to_string(c);
      }
      s += "}, center " + std::to_string(invariants.center_order) + ")";
      return s;
    }
  }
  return "";
}

std::string GroupType::ascii_token() const {
  switch (kind) {
    case GroupTypeKind::Trivial: return "trivial";
    case GroupTypeKind::Z2: return "Z2";
    case GroupTypeKind::Z2xZ2: return "Z2xZ2";
    case GroupTypeKind::Z4: return "Z4";
    case GroupTypeKind::Z2xZ2xZ2: return "Z2xZ2xZ2";
    case GroupTypeKind::D4: return "D4";
    case GroupTypeKind::D4xZ2: return "D4xZ2";
    case GroupTypeKind::O2Extension: return "O2_extension";
    case GroupTypeKind::Unidentified: return "unidentified";
  }
  return "";
}

IsometryDescriptor isom_descriptor(GroupName name, int case_id, const StabilizerResult& st,
                                   const LieAlgebra& algebra) {
  const bool nilpotent = algebra.is_nilpotent();
  if (!nilpotent) {
    if (!algebra.is_solvable() || !algebra.is_unimodular())
      throw std::invalid_argument(
          "isom_descriptor: algebra is neither nilpotent nor solvable unimodular");
    if (!is_type_r_sampled(algebra, 50, kDefaultSeed).all_real_rooted)
      throw std::invalid_argument("isom_descriptor: sampled ad eigenvalues are not all real");
  }

  IsometryDescriptor d;
  d.group = name;
  d.case_id = case_id;
  d.identity_component_dim = st.identity_component_dim;
  d.components = st.component_count();
  if (st.finite_order) {
    FiniteMatrixGroup fin;
    fin.elements = st.elements;
    d.stabilizer_type = identify(fin);
    d.stabilizer_order = st.finite_order;
  } else {
    d.stabilizer_type.kind = GroupTypeKind::O2Extension;
    d.stabilizer_type.components = st.component_count();
  }

  const std::string g_name(display_name(name));
  if (d.stabilizer_type.kind == GroupTypeKind::Trivial) {
    d.structure = g_name;
  } else if (d.stabilizer_type.kind == GroupTypeKind::O2Extension) {
    d.structure = g_name + " ⋊ (" + d.stabilizer_type.name() + ") [dim " +
                  std::to_string(st.identity_component_dim) + ", " +
                  std::to_string(d.components) + " components]";
  } else {
    d.structure = g_name + " ⋊ " + d.stabilizer_type.name();
  }
  return d;
}

}  // namespace isom4d
