#include "isom4d/catalog.hpp"

#include <cctype>
#include <set>
#include <stdexcept>

#include "isom4d/linalg.hpp"

namespace isom4d {

std::string_view ascii_name(GroupName g) {
  switch (g) {
    case GroupName::Nil3xR: return "nil3xr";
    case GroupName::Nil4: return "nil4";
    case GroupName::SolMN4: return "solmn4";
    case GroupName::Sol3xR: return "sol3xr";
    case GroupName::Sol04: return "sol04";
    case GroupName::Sol0p4: return "sol0p4";
    case GroupName::Sol14: return "sol14";
  }
  return "";
}

std::string_view display_name(GroupName g) {
  switch (g) {
    case GroupName::Nil3xR: return "Nil³×ℝ";
    case GroupName::Nil4: return "Nil⁴";
    case GroupName::SolMN4: return "Sol⁴_{m,n}";
    case GroupName::Sol3xR: return "Sol³×ℝ";
    case GroupName::Sol04: return "Sol₀⁴";
    case GroupName::Sol0p4: return "Sol₀'⁴";
    case GroupName::Sol14: return "Sol₁⁴";
  }
  return "";
}

std::optional<GroupName> parse_group(std::string_view s) {
  std::string lowered(s);
  for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (GroupName g : kAllGroups)
    if (lowered == ascii_name(g)) return g;
  return std::nullopt;
}

void SolWeights::validate() const {
  if (!(w1 + w2 + w3).is_zero())
    throw std::invalid_argument("SolWeights: weights must sum to zero");
  if (w1 == w2 || w1 == w3 || w2 == w3)
    throw std::invalid_argument("SolWeights: weights must be pairwise distinct");
}

namespace {

Vec basis_vec(Index n, Index i, const Rational& c = Rational(1)) {
  Vec v = Vec::Zero(n);
  v(i) = c;
  return v;
}

}  // namespace

LieAlgebra catalog_algebra(GroupName g, const std::optional<SolWeights>& weights) {
  if (g == GroupName::SolMN4) {
    const SolWeights w = weights.value_or(SolWeights::defaults());
    w.validate();
    return LieAlgebra::from_brackets(4, {
                                            {0, 3, basis_vec(4, 0, -w.w1)},
                                            {1, 3, basis_vec(4, 1, -w.w2)},
                                            {2, 3, basis_vec(4, 2, -w.w3)},
                                        });
  }
  if (weights) throw std::invalid_argument("catalog_algebra: weights only apply to solmn4");
  switch (g) {
    case GroupName::Nil3xR:
      return LieAlgebra::from_brackets(4, {{2, 3, basis_vec(4, 0)}});
    case GroupName::Nil4:
      return LieAlgebra::from_brackets(4, {{1, 3, basis_vec(4, 0)}, {2, 3, basis_vec(4, 1)}});
    case GroupName::Sol3xR:
      return LieAlgebra::from_brackets(4, {{1, 3, basis_vec(4, 1, Rational(-1))},
                                           {2, 3, basis_vec(4, 2)}});
    case GroupName::Sol04:
      return LieAlgebra::from_brackets(4, {{0, 3, basis_vec(4, 0, Rational(-1))},
                                           {1, 3, basis_vec(4, 1, Rational(-1))},
                                           {2, 3, basis_vec(4, 2, Rational(2))}});
    case GroupName::Sol0p4: {
      Vec v = basis_vec(4, 0, Rational(-1));
      v(1) = Rational(-1);
      return LieAlgebra::from_brackets(4, {{0, 3, basis_vec(4, 0, Rational(-1))},
                                           {1, 3, v},
                                           {2, 3, basis_vec(4, 2, Rational(2))}});
    }
    case GroupName::Sol14:
      return LieAlgebra::from_brackets(4, {{1, 2, basis_vec(4, 0)},
                                           {1, 3, basis_vec(4, 1, Rational(-1))},
                                           {2, 3, basis_vec(4, 2)}});
    default:
      throw std::logic_error("catalog_algebra: unreachable");
  }
}

namespace {

FamilyBranch make_branch(const std::vector<FamilyParam>& params,
                         const std::array<const char*, 16>& entries,
                         const std::array<int, 4>& blocks) {
  FamilyBranch b;
  b.params = params;
  b.block_of = blocks;
  for (std::size_t k = 0; k < 16; ++k) b.entries[k] = Expr::parse(entries[k]);

  // A parameter is scale type when it occurs in some entry whose row and
  // column indices lie in the same diagonal block.
  std::set<std::string> scale;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      if (blocks[static_cast<std::size_t>(i)] != blocks[static_cast<std::size_t>(j)]) continue;
      std::set<std::string> here;
      b.entries[static_cast<std::size_t>(i * 4 + j)].collect_params(here);
      scale.insert(here.begin(), here.end());
    }
  for (const auto& p : b.params) {
    if (scale.count(p.name))
      b.scale_params.push_back(p.name);
    else
      b.shear_params.push_back(p.name);
  }
  return b;
}

constexpr ParamDomain kNonzero = ParamDomain::Nonzero;
constexpr ParamDomain kFree = ParamDomain::Free;

}  // namespace

AutFamily aut_family(GroupName g) {
  AutFamily fam;
  fam.group = g;
  switch (g) {
    case GroupName::Nil3xR:
      fam.branches.push_back(make_branch(
          {{"a", kFree}, {"b", kFree}, {"c", kFree}, {"d", kFree}, {"e", kNonzero},
           {"x", kFree}, {"y", kFree}, {"z", kFree}, {"u", kFree}, {"v", kFree}},
          {"a*d - b*c", "x", "y", "u",
           "0", "e", "z", "v",
           "0", "0", "a", "b",
           "0", "0", "c", "d"},
          {0, 1, 2, 2}));
      break;
    case GroupName::Nil4:
      fam.branches.push_back(make_branch(
          {{"a", kNonzero}, {"d", kNonzero}, {"b", kFree}, {"e", kFree},
           {"x", kFree}, {"y", kFree}, {"z", kFree}},
          {"a*d*d", "e*d", "x", "y",
           "0", "a*d", "e", "z",
           "0", "0", "a", "b",
           "0", "0", "0", "d"},
          {0, 1, 2, 3}));
      break;
    case GroupName::SolMN4:
      fam.branches.push_back(make_branch(
          {{"a", kNonzero}, {"b", kNonzero}, {"c", kNonzero},
           {"x", kFree}, {"y", kFree}, {"z", kFree}},
          {"a", "0", "0", "x",
           "0", "b", "0", "y",
           "0", "0", "c", "z",
           "0", "0", "0", "1"},
          {0, 1, 2, 3}));
      break;
    case GroupName::Sol3xR:
      fam.branches.push_back(make_branch(
          {{"e", kNonzero}, {"a", kNonzero}, {"d", kNonzero},
           {"x", kFree}, {"y", kFree}, {"z", kFree}},
          {"e", "0", "0", "x",
           "0", "a", "0", "y",
           "0", "0", "d", "z",
           "0", "0", "0", "1"},
          {0, 1, 2, 3}));
      fam.branches.push_back(make_branch(
          {{"e", kNonzero}, {"b", kNonzero}, {"c", kNonzero},
           {"x", kFree}, {"y", kFree}, {"z", kFree}},
          {"e", "0", "0", "x",
           "0", "0", "b", "y",
           "0", "c", "0", "z",
           "0", "0", "0", "-1"},
          {0, 1, 1, 2}));
      break;
    case GroupName::Sol04:
      fam.branches.push_back(make_branch(
          {{"a", kFree}, {"b", kFree}, {"c", kFree}, {"d", kFree}, {"e", kNonzero},
           {"x", kFree}, {"y", kFree}, {"z", kFree}},
          {"a", "b", "0", "x",
           "c", "d", "0", "y",
           "0", "0", "e", "z",
           "0", "0", "0", "1"},
          {0, 0, 1, 2}));
      break;
    case GroupName::Sol0p4:
      fam.branches.push_back(make_branch(
          {{"a", kNonzero}, {"b", kFree}, {"e", kNonzero},
           {"x", kFree}, {"y", kFree}, {"z", kFree}},
          {"a", "b", "0", "x",
           "0", "a", "0", "y",
           "0", "0", "e", "z",
           "0", "0", "0", "1"},
          {0, 1, 2, 3}));
      break;
    case GroupName::Sol14:
      fam.branches.push_back(make_branch(
          {{"a", kNonzero}, {"d", kNonzero}, {"p", kFree}, {"q", kFree}, {"x", kFree}},
          {"a*d", "-a*q", "-d*p", "x",
           "0", "a", "0", "p",
           "0", "0", "d", "q",
           "0", "0", "0", "1"},
          {0, 1, 2, 3}));
      fam.branches.push_back(make_branch(
          {{"b", kNonzero}, {"c", kNonzero}, {"p", kFree}, {"q", kFree}, {"x", kFree}},
          {"-b*c", "c*p", "b*q", "x",
           "0", "0", "b", "p",
           "0", "c", "0", "q",
           "0", "0", "0", "-1"},
          {0, 1, 1, 2}));
      break;
  }
  return fam;
}

int aut_family_param_count(GroupName g) {
  return static_cast<int>(aut_family(g).branches.front().params.size());
}

Mat FamilyBranch::instantiate(const Expr::Env& env) const {
  Mat m(4, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) m(i, j) = entries[static_cast<std::size_t>(i * 4 + j)].eval(env);
  return m;
}

const FamilyParam* FamilyBranch::find_param(std::string_view name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

Expr::Env sample_branch_params(const FamilyBranch& branch, SplitMix64& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Expr::Env env;
    for (const auto& p : branch.params)
      env[p.name] = p.domain == ParamDomain::Nonzero ? random_nonzero_rational(rng)
                                                     : random_rational(rng);
    if (!determinant(branch.instantiate(env)).is_zero()) return env;
  }
  throw std::runtime_error("sample_branch_params: could not draw a nonsingular instance");
}

FamilyVerification verify_family_against(const LieAlgebra& g, const AutFamily& family,
                                         int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("verify_family_against: need at least one sample");
  FamilyVerification out;
  out.samples_per_branch = n_samples;
  SplitMix64 rng(seed);
  for (std::size_t b = 0; b < family.branches.size(); ++b) {
    for (int s = 0; s < n_samples; ++s) {
      const Expr::Env env = sample_branch_params(family.branches[b], rng);
      const Mat a = family.branches[b].instantiate(env);
      ++out.checked;
      if (!g.is_automorphism(a)) {
        out.failing_params = env;
        out.failing_branch = static_cast<int>(b);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

bool verify_aut_family(GroupName g, int n_samples, std::uint64_t seed,
                       const std::optional<SolWeights>& weights) {
  return verify_family_against(catalog_algebra(g, g == GroupName::SolMN4
                                                       ? std::optional<SolWeights>(
                                                             weights.value_or(SolWeights::defaults()))
                                                       : std::nullopt),
                               aut_family(g), n_samples, seed)
      .ok;
}

}  // namespace isom4d
