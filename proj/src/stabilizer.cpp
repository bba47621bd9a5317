#include "isom4d/stabilizer.hpp"

#include <algorithm>

#include "isom4d/linalg.hpp"

namespace isom4d {

namespace {

Rational eq_value(const QuadraticEquation& e, const Vec& t) {
  Rational v = e.c;
  const Index m = t.size();
  for (Index k = 0; k < m; ++k) {
    if (t(k).is_zero()) continue;
    v += e.l(k) * t(k);
    for (Index k2 = 0; k2 < m; ++k2) {
      if (t(k2).is_zero() || e.q(k, k2).is_zero()) continue;
      v += e.q(k, k2) * t(k) * t(k2);
    }
  }
  return v;
}

bool preserves_metric(const Mat& a, const Mat& metric) {
  return exactly_equal(a.transpose() * metric * a, metric);
}

}  // namespace

Mat AffinePencil::at(const Vec& t) const {
  if (t.size() != static_cast<Index>(directions.size()))
    throw std::invalid_argument("AffinePencil: wrong number of parameter values");
  Mat m = a0;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    if (t(static_cast<Index>(k)).is_zero()) continue;
    m += t(static_cast<Index>(k)) * directions[k];
  }
  return m;
}

AffinePencil branch_pencil(const FamilyBranch& branch, const Expr::Env& fixed) {
  AffinePencil pencil;
  for (const auto& p : branch.params)
    if (!fixed.count(p.name)) pencil.vars.push_back(p.name);
  std::map<std::string, std::size_t> var_index;
  for (std::size_t k = 0; k < pencil.vars.size(); ++k) var_index[pencil.vars[k]] = k;

  pencil.a0 = Mat::Zero(4, 4);
  pencil.directions.assign(pencil.vars.size(), Mat::Zero(4, 4));
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      const Expr& entry = branch.entries[static_cast<std::size_t>(i * 4 + j)];
      for (const auto& [vars, coeff] : entry.expand()) {
        Rational value = coeff;
        std::vector<std::string> remaining;
        for (const auto& name : vars) {
          const auto it = fixed.find(name);
          if (it != fixed.end())
            value *= it->second;
          else
            remaining.push_back(name);
        }
        if (value.is_zero()) continue;
        if (remaining.empty()) {
          pencil.a0(i, j) += value;
        } else if (remaining.size() == 1) {
          pencil.directions[var_index.at(remaining.front())](i, j) += value;
        } else {
          throw UnresolvedBranchError(
              "branch entry is not affine in the remaining parameters after substitution");
        }
      }
    }
  return pencil;
}

std::vector<QuadraticEquation> stabilizer_equations(const AffinePencil& pencil, const Mat& metric) {
  const Index m = static_cast<Index>(pencil.directions.size());
  const Mat base = pencil.a0.transpose() * metric * pencil.a0 - metric;
  std::vector<Mat> lin(pencil.directions.size());
  for (std::size_t k = 0; k < pencil.directions.size(); ++k)
    lin[k] = pencil.a0.transpose() * metric * pencil.directions[k] +
             pencil.directions[k].transpose() * metric * pencil.a0;
  // symmetric pairs of directions
  std::vector<std::vector<Mat>> quad(pencil.directions.size());
  for (std::size_t k1 = 0; k1 < pencil.directions.size(); ++k1) {
    quad[k1].resize(k1 + 1);
    for (std::size_t k2 = 0; k2 <= k1; ++k2)
      quad[k1][k2] = pencil.directions[k1].transpose() * metric * pencil.directions[k2] +
                     pencil.directions[k2].transpose() * metric * pencil.directions[k1];
  }

  std::vector<QuadraticEquation> eqs;
  for (Index i = 0; i < 4; ++i)
    for (Index j = i; j < 4; ++j) {
      QuadraticEquation e;
      e.c = base(i, j);
      e.l = Vec::Zero(m);
      e.q = Mat::Zero(m, m);
      for (Index k = 0; k < m; ++k) e.l(k) = lin[static_cast<std::size_t>(k)](i, j);
      for (Index k1 = 0; k1 < m; ++k1)
        for (Index k2 = 0; k2 <= k1; ++k2) {
          const Rational half = quad[static_cast<std::size_t>(k1)][static_cast<std::size_t>(k2)](i, j) / Rational(2);
          e.q(k1, k2) = half;
          e.q(k2, k1) = half;
        }
      eqs.push_back(std::move(e));
    }
  return eqs;
}

ForcingOutcome solve_by_affine_forcing(std::vector<QuadraticEquation> eqs) {
  if (eqs.empty()) return {true, Vec()};
  const Index total = eqs.front().l.size();
  Vec t0 = Vec::Zero(total);
  Mat basis = Mat::Identity(total, total);  // current parameterization t = t0 + basis * s

  for (;;) {
    const Index m = basis.cols();
    if (m == 0) {
      for (const auto& e : eqs)
        if (!eq_value(e, t0).is_zero()) return {false, Vec()};
      return {true, t0};
    }

    // Transform every equation into the free coordinates s.
    struct Reduced {
      Rational c;
      Vec l;
      Mat q;
      bool affine;
    };
    std::vector<Reduced> reduced;
    reduced.reserve(eqs.size());
    bool any_nonzero = false;
    for (const auto& e : eqs) {
      Reduced r;
      r.c = eq_value(e, t0);
      Vec shifted = e.l;
      for (Index k = 0; k < total; ++k) {
        Rational acc = e.l(k);
        for (Index k2 = 0; k2 < total; ++k2) acc += Rational(2) * e.q(k, k2) * t0(k2);
        shifted(k) = acc;
      }
      r.l = basis.transpose() * shifted;
      r.q = basis.transpose() * e.q * basis;
      r.affine = is_zero_matrix(r.q);
      if (!r.c.is_zero() || !is_zero_matrix(r.l) || !r.affine) any_nonzero = true;
      reduced.push_back(std::move(r));
    }
    if (!any_nonzero)
      throw UnresolvedBranchError("equations vanish identically with free parameters remaining");

    std::vector<const Reduced*> affine_rows;
    for (const auto& r : reduced)
      if (r.affine && !(r.c.is_zero() && is_zero_matrix(r.l))) affine_rows.push_back(&r);
    if (affine_rows.empty())
      throw UnresolvedBranchError("no affine equations left while parameters remain undetermined");

    Mat sys(static_cast<Index>(affine_rows.size()), m + 1);
    for (std::size_t r = 0; r < affine_rows.size(); ++r) {
      for (Index k = 0; k < m; ++k) sys(static_cast<Index>(r), k) = affine_rows[r]->l(k);
      sys(static_cast<Index>(r), m) = -affine_rows[r]->c;
    }
    const auto pivots = rref_in_place(sys);
    for (Index p : pivots)
      if (p == m) return {false, Vec()};  // 0 = nonzero: branch closed
    if (pivots.empty())
      throw UnresolvedBranchError("affine subsystem has rank zero with parameters remaining");

    Vec s0 = Vec::Zero(m);
    for (std::size_t r = 0; r < pivots.size(); ++r) s0(pivots[r]) = sys(static_cast<Index>(r), m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m), false);
    for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Mat kernel(m, m - static_cast<Index>(pivots.size()));
    Index col = 0;
    for (Index f = 0; f < m; ++f) {
      if (is_pivot[static_cast<std::size_t>(f)]) continue;
      Vec k = Vec::Zero(m);
      k(f) = Rational(1);
      for (std::size_t r = 0; r < pivots.size(); ++r) k(pivots[r]) = -sys(static_cast<Index>(r), f);
      kernel.col(col++) = k;
    }

    t0 = t0 + basis * s0;
    basis = basis * kernel;
  }
}

Mat forcing_system_matrix(const FamilyBranch& branch, const Mat& metric, const Expr::Env& fixed,
                          const std::vector<std::string>& unknowns, const Expr::Env& point,
                          const std::vector<std::pair<Index, Index>>& entries) {
  const AffinePencil pencil = branch_pencil(branch, fixed);
  if (pencil.vars.size() != unknowns.size())
    throw std::invalid_argument("forcing_system_matrix: fixed plus unknowns must cover the branch");
  std::vector<Index> order;
  for (const auto& u : unknowns) {
    const auto it = std::find(pencil.vars.begin(), pencil.vars.end(), u);
    if (it == pencil.vars.end())
      throw std::invalid_argument("forcing_system_matrix: '" + u + "' is not an unknown");
    order.push_back(static_cast<Index>(it - pencil.vars.begin()));
  }
  Vec v0 = Vec::Zero(static_cast<Index>(pencil.vars.size()));
  for (std::size_t k = 0; k < pencil.vars.size(); ++k)
    v0(static_cast<Index>(k)) = point.at(pencil.vars[k]);

  // Equation (i, j) of A^T M A = M reads (column i)^T M (column j). The
  // associated matrix treats column j as the unknown side: the row for entry
  // (i, j) is (column i at `point`)^T M (d column j / d unknown), so that
  // row * point recovers the equation value.
  const Mat at_point = pencil.at(v0);
  Mat rows(static_cast<Index>(entries.size()), static_cast<Index>(unknowns.size()));
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const auto [i, j] = entries[r];
    if (i < 0 || j < 0 || i >= 4 || j >= 4)
      throw std::invalid_argument("forcing_system_matrix: entry out of range");
    const Vec lhs = metric.transpose() * at_point.col(i);
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
      const Mat& dir = pencil.directions[static_cast<std::size_t>(order[k])];
      Rational acc(0);
      for (Index t = 0; t < 4; ++t) acc += lhs(t) * dir(t, j);
      rows(static_cast<Index>(r), static_cast<Index>(k)) = acc;
    }
  }
  return rows;
}

std::vector<Mat> isotropy_algebra(const LieAlgebra& g, const Mat& metric) {
  const Index n = g.dim();
  if (metric.rows() != n || metric.cols() != n || !is_symmetric(metric))
    throw std::invalid_argument("isotropy_algebra: metric must be a symmetric n x n matrix");
  const Mat der = derivation_system(g);
  // D^T M + M D = 0, entry (i, j) for i <= j:
  //   sum_k M(k, j) D(k, i) + sum_k M(i, k) D(k, j) = 0
  const Index extra = n * (n + 1) / 2;
  Mat system = Mat::Zero(der.rows() + extra, n * n);
  system.topRows(der.rows()) = der;
  Index r = der.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        system(r, k * n + i) += metric(k, j);
        system(r, k * n + j) += metric(i, k);
      }
      ++r;
    }
  std::vector<Mat> basis;
  for (const Vec& v : rref_nullspace(system)) {
    Mat d(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) d(i, j) = v(i * n + j);
    basis.push_back(std::move(d));
  }
  return basis;
}

Mat circle_rotation(const Rational& t, const RotationBlock& block, Index n) {
  const Rational den = Rational(1) + t * t;
  const Rational c = (Rational(1) - t * t) / den;
  const Rational s = (Rational(2) * t) / den;
  Mat m = Mat::Identity(n, n);
  m(block.i, block.i) = c;
  m(block.i, block.j) = -s;
  m(block.j, block.i) = s;
  m(block.j, block.j) = c;
  return m;
}

Mat half_turn(const RotationBlock& block, Index n) {
  Mat m = Mat::Identity(n, n);
  m(block.i, block.i) = Rational(-1);
  m(block.j, block.j) = Rational(-1);
  return m;
}

bool same_rotation_component(const Mat& a, const Mat& b, const RotationBlock& block) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const Mat c = inverse(a) * b;
  const Index n = c.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const bool in_block = (i == block.i || i == block.j) && (j == block.i || j == block.j);
      if (in_block) continue;
      const Rational expected = i == j ? Rational(1) : Rational(0);
      if (!(c(i, j) == expected)) return false;
    }
  const Rational co = c(block.i, block.i), si = c(block.j, block.i);
  if (!(c(block.j, block.j) == co) || !(c(block.i, block.j) == -si)) return false;
  return (co * co + si * si).is_one();
}

namespace {

// Odometer over {-1, 0, 1}^k.
bool advance_pattern(std::vector<int>& digits) {
  for (auto& d : digits) {
    if (d < 1) {
      ++d;
      return true;
    }
    d = -1;
  }
  return false;
}

std::vector<Mat> certified_candidates(const LieAlgebra& g, const FamilyBranch& branch,
                                      const Mat& metric) {
  std::vector<Mat> out;
  std::vector<int> digits(branch.scale_params.size(), -1);
  bool more = true;
  while (more) {
    Expr::Env fixed;
    for (std::size_t k = 0; k < branch.scale_params.size(); ++k)
      fixed[branch.scale_params[k]] = Rational(digits[k]);
    const AffinePencil pencil = branch_pencil(branch, fixed);
    const ForcingOutcome forced = solve_by_affine_forcing(stabilizer_equations(pencil, metric));
    if (forced.solved) {
      const Mat a = pencil.at(forced.solution);
      if (!determinant(a).is_zero() && g.is_automorphism(a) && preserves_metric(a, metric))
        out.push_back(a);
    }
    more = advance_pattern(digits);
  }
  return out;
}

}  // namespace

std::vector<Mat> discrete_stabilizer(const LieAlgebra& g, const AutFamily& family,
                                     const Mat& metric) {
  std::vector<Mat> all;
  for (const auto& branch : family.branches) {
    auto found = certified_candidates(g, branch, metric);
    all.insert(all.end(), found.begin(), found.end());
  }
  std::sort(all.begin(), all.end(), lex_less);
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Mat& a, const Mat& b) { return exactly_equal(a, b); }),
            all.end());
  return all;
}

namespace {

RotationBlock rotation_block_from_generator(const Mat& d) {
  std::vector<std::pair<Index, Index>> support;
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j)
      if (!d(i, j).is_zero()) support.push_back({i, j});
  if (support.size() == 2 && support[0].first == support[1].second &&
      support[0].second == support[1].first &&
      d(support[0].first, support[0].second) == -d(support[1].first, support[1].second)) {
    const Index i = std::min(support[0].first, support[0].second);
    const Index j = std::max(support[0].first, support[0].second);
    return {i, j};
  }
  throw std::runtime_error("stabilizer: isotropy generator is not a plane rotation generator");
}

struct ParamBound {
  bool bounded = false;
  Rational square_bound;  // admissible values satisfy v^2 <= square_bound
};

std::map<std::string, ParamBound> entry_bounds(const FamilyBranch& branch, const Mat& metric) {
  const Mat minv = inverse(metric);
  std::map<std::string, ParamBound> bounds;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      const auto monomials = branch.entries[static_cast<std::size_t>(i * 4 + j)].expand();
      for (const auto& [vars, coeff] : monomials) {
        if (vars.size() != 1 || monomials.size() != 1) continue;
        // the entry is exactly coeff * param: |A_ij|^2 <= M_jj (M^{-1})_ii
        const Rational cap = metric(j, j) * minv(i, i) / (coeff * coeff);
        auto& b = bounds[vars.front()];
        if (!b.bounded || cap < b.square_bound) {
          b.bounded = true;
          b.square_bound = cap;
        }
      }
    }
  return bounds;
}

Rational draw_scale_value(SplitMix64& rng, const ParamBound& bound) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rational v;
    if (rng.below(2) == 0)
      v = Rational(static_cast<long long>(rng.int_in(-1, 1)));
    else
      v = Rational(rng.int_in(-4, 4), rng.int_in(1, 2));
    if (!bound.bounded || !(bound.square_bound < v * v)) return v;
  }
  return Rational(0);
}

}  // namespace

CompletenessEvidence randomized_completeness_check(const LieAlgebra& g, const AutFamily& family,
                                                   const Mat& metric, const std::vector<Mat>& found,
                                                   int trials, std::uint64_t seed,
                                                   const std::optional<RotationBlock>& block) {
  if (trials < 0) throw std::invalid_argument("randomized_completeness_check: negative trials");
  CompletenessEvidence ev;
  ev.seed = seed;
  ev.trials = trials;
  SplitMix64 rng(seed);

  auto listed = [&](const Mat& a) {
    for (const Mat& f : found) {
      if (exactly_equal(f, a)) return true;
      if (block && same_rotation_component(f, a, *block)) return true;
    }
    return false;
  };

  std::vector<std::map<std::string, ParamBound>> bounds;
  for (const auto& branch : family.branches) bounds.push_back(entry_bounds(branch, metric));

  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t b = family.branches.size() > 1
                              ? static_cast<std::size_t>(trial) % family.branches.size()
                              : 0;
    const FamilyBranch& branch = family.branches[b];
    Expr::Env fixed;
    for (const auto& name : branch.scale_params) {
      const auto it = bounds[b].find(name);
      fixed[name] = draw_scale_value(rng, it == bounds[b].end() ? ParamBound{} : it->second);
    }
    const AffinePencil pencil = branch_pencil(branch, fixed);
    ForcingOutcome forced;
    try {
      forced = solve_by_affine_forcing(stabilizer_equations(pencil, metric));
    } catch (const UnresolvedBranchError&) {
      continue;
    }
    if (!forced.solved) continue;
    const Mat a = pencil.at(forced.solution);
    if (determinant(a).is_zero()) continue;
    if (!g.is_automorphism(a) || !preserves_metric(a, metric)) continue;
    ++ev.certified_hits;
    if (!listed(a)) {
      ++ev.violations;
      if (ev.violation_witnesses.size() < 8) ev.violation_witnesses.push_back(a);
    }
  }
  return ev;
}

namespace {

// Canonical representative of a connected component: prefer members whose
// rotation-block part is diagonal, lexicographically greatest among those.
// The identity then represents its own component and a reflection component
// is represented with block diag(1, -1).
Mat canonical_component_rep(const std::vector<Mat>& members, const RotationBlock& block) {
  const Mat* best = nullptr;
  bool best_diag = false;
  for (const Mat& m : members) {
    const bool diag = m(block.i, block.j).is_zero() && m(block.j, block.i).is_zero();
    if (best == nullptr || (diag && !best_diag) || (diag == best_diag && lex_less(*best, m))) {
      best = &m;
      best_diag = diag;
    }
  }
  return *best;
}

}  // namespace

StabilizerResult stabilizer(const LieAlgebra& g, const AutFamily& family, const Mat& metric,
                            const StabilizerOptions& options) {
  StabilizerResult result;
  const auto iso = isotropy_algebra(g, metric);
  result.identity_component_dim = static_cast<int>(iso.size());
  result.elements = discrete_stabilizer(g, family, metric);

  if (iso.empty()) {
    result.component_reps = result.elements;
    result.finite_order = static_cast<int>(result.elements.size());
  } else if (iso.size() == 1) {
    const RotationBlock block = rotation_block_from_generator(iso.front());
    result.continuous_block = block;

    SplitMix64 rng(options.seed ^ 0xA5A5A5A55A5A5A5AULL);
    for (int k = 0; k < 20; ++k) {
      const Mat r = circle_rotation(random_rational(rng), block, g.dim());
      if (!g.is_automorphism(r) || !preserves_metric(r, metric))
        throw std::runtime_error("stabilizer: rotation parameterization fails exact verification");
    }
    {
      const Mat r = half_turn(block, g.dim());
      if (!g.is_automorphism(r) || !preserves_metric(r, metric))
        throw std::runtime_error("stabilizer: half turn fails exact verification");
    }

    std::vector<std::vector<Mat>> classes;
    for (const Mat& e : result.elements) {
      bool placed = false;
      for (auto& cls : classes)
        if (same_rotation_component(cls.front(), e, block)) {
          cls.push_back(e);
          placed = true;
          break;
        }
      if (!placed) classes.push_back({e});
    }
    for (const auto& cls : classes)
      result.component_reps.push_back(canonical_component_rep(cls, block));
    std::sort(result.component_reps.begin(), result.component_reps.end(), lex_less);
  } else {
    throw std::runtime_error("stabilizer: identity component dimension " +
                             std::to_string(iso.size()) + " is outside the supported range");
  }

  result.evidence = randomized_completeness_check(g, family, metric, result.elements,
                                                  options.trials, options.seed,
                                                  result.continuous_block);
  if (result.evidence.violations > 0)
    throw std::runtime_error("stabilizer: completeness search found an unlisted element");
  return result;
}

}  // namespace isom4d
