#include "isom4d/lie_algebra.hpp"

#include <stdexcept>

#include "isom4d/linalg.hpp"
#include "isom4d/rng.hpp"

namespace isom4d {

std::size_t LieAlgebra::pair_index(Index i, Index j) const {
  // position of (i, j), i < j, in row-by-row order over the strict upper triangle
  return static_cast<std::size_t>(i * (2 * dim_ - i - 1) / 2 + (j - i - 1));
}

LieAlgebra LieAlgebra::from_brackets(Index dim,
                                     const std::vector<std::tuple<Index, Index, Vec>>& brackets) {
  if (dim <= 0) throw std::invalid_argument("LieAlgebra: dimension must be positive");
  std::vector<Vec> table(static_cast<std::size_t>(dim * (dim - 1) / 2), Vec::Zero(dim));
  LieAlgebra g(dim, std::move(table));
  for (const auto& [i, j, v] : brackets) {
    if (i < 0 || j < 0 || i >= dim || j >= dim || i >= j)
      throw std::invalid_argument("LieAlgebra: bracket indices must satisfy 0 <= i < j < dim");
    if (v.size() != dim) throw std::invalid_argument("LieAlgebra: bracket value has wrong dimension");
    g.table_[g.pair_index(i, j)] = v;
  }
  return g;
}

Vec LieAlgebra::basis_bracket(Index i, Index j) const {
  if (i == j) return Vec::Zero(dim_);
  if (i < j) return table_[pair_index(i, j)];
  return -table_[pair_index(j, i)];
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw std::invalid_argument("bracket: dimension mismatch");
  Vec out = Vec::Zero(dim_);
  for (Index i = 0; i < dim_; ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < dim_; ++j) {
      if (i == j || y(j).is_zero()) continue;
      out += (x(i) * y(j)) * basis_bracket(i, j);
    }
  }
  return out;
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("ad: dimension mismatch");
  Mat m(dim_, dim_);
  for (Index j = 0; j < dim_; ++j) {
    Vec col = Vec::Zero(dim_);
    for (Index i = 0; i < dim_; ++i) {
      if (x(i).is_zero() || i == j) continue;
      col += x(i) * basis_bracket(i, j);
    }
    m.col(j) = col;
  }
  return m;
}

Mat LieAlgebra::ad_basis(Index i) const {
  Vec e = Vec::Zero(dim_);
  e(i) = Rational(1);
  return ad(e);
}

bool LieAlgebra::check_jacobi() const {
  for (Index i = 0; i < dim_; ++i)
    for (Index j = i + 1; j < dim_; ++j)
      for (Index k = j + 1; k < dim_; ++k) {
        Vec ei = Vec::Zero(dim_), ej = Vec::Zero(dim_), ek = Vec::Zero(dim_);
        ei(i) = Rational(1);
        ej(j) = Rational(1);
        ek(k) = Rational(1);
        const Vec sum = bracket(basis_bracket(i, j), ek) + bracket(basis_bracket(j, k), ei) +
                        bracket(basis_bracket(k, i), ej);
        for (Index t = 0; t < dim_; ++t)
          if (!sum(t).is_zero()) return false;
      }
  return true;
}

bool LieAlgebra::is_unimodular() const {
  for (Index i = 0; i < dim_; ++i) {
    const Mat a = ad_basis(i);
    Rational tr(0);
    for (Index t = 0; t < dim_; ++t) tr += a(t, t);
    if (!tr.is_zero()) return false;
  }
  return true;
}

namespace {

// Canonical spanning set of a list of vectors: rref rows of the stacked
// matrix, zero rows dropped.
std::vector<Vec> reduce_span(const std::vector<Vec>& vectors, Index dim) {
  if (vectors.empty()) return {};
  Mat rows(static_cast<Index>(vectors.size()), dim);
  for (std::size_t r = 0; r < vectors.size(); ++r) rows.row(static_cast<Index>(r)) = vectors[r].transpose();
  const auto pivots = rref_in_place(rows);
  std::vector<Vec> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(rows.row(static_cast<Index>(r)).transpose());
  return out;
}

}  // namespace

std::vector<Index> LieAlgebra::lower_central_series_dims() const {
  std::vector<Index> dims{dim_};
  std::vector<Vec> current;
  for (Index i = 0; i < dim_; ++i) {
    Vec e = Vec::Zero(dim_);
    e(i) = Rational(1);
    current.push_back(e);
  }
  for (;;) {
    std::vector<Vec> next;
    for (Index i = 0; i < dim_; ++i) {
      Vec e = Vec::Zero(dim_);
      e(i) = Rational(1);
      for (const Vec& v : current) next.push_back(bracket(e, v));
    }
    next = reduce_span(next, dim_);
    const Index d = static_cast<Index>(next.size());
    if (d == dims.back()) break;
    dims.push_back(d);
    current = std::move(next);
    if (d == 0) break;
  }
  return dims;
}

std::vector<Index> LieAlgebra::derived_series_dims() const {
  std::vector<Index> dims{dim_};
  std::vector<Vec> current;
  for (Index i = 0; i < dim_; ++i) {
    Vec e = Vec::Zero(dim_);
    e(i) = Rational(1);
    current.push_back(e);
  }
  for (;;) {
    std::vector<Vec> next;
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b)
        next.push_back(bracket(current[a], current[b]));
    next = reduce_span(next, dim_);
    const Index d = static_cast<Index>(next.size());
    if (d == dims.back()) break;
    dims.push_back(d);
    current = std::move(next);
    if (d == 0) break;
  }
  return dims;
}

Mat derivation_system(const LieAlgebra& g) {
  const Index n = g.dim();
  const Index unknowns = n * n;
  std::vector<Vec> rows;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const Vec w = g.basis_bracket(a, b);
      for (Index k = 0; k < n; ++k) {
        Vec row = Vec::Zero(unknowns);
        // component k of D[e_a, e_b]
        for (Index j = 0; j < n; ++j)
          if (!w(j).is_zero()) row(k * n + j) += w(j);
        // minus component k of [D e_a, e_b] = sum_i D(i,a) [e_i, e_b]
        for (Index i = 0; i < n; ++i) {
          const Vec br = g.basis_bracket(i, b);
          if (!br(k).is_zero()) row(i * n + a) -= br(k);
        }
        // minus component k of [e_a, D e_b] = sum_j D(j,b) [e_a, e_j]
        for (Index j = 0; j < n; ++j) {
          const Vec br = g.basis_bracket(a, j);
          if (!br(k).is_zero()) row(j * n + b) -= br(k);
        }
        rows.push_back(std::move(row));
      }
    }
  Mat system = Mat::Zero(static_cast<Index>(rows.size()), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r) system.row(static_cast<Index>(r)) = rows[r].transpose();
  return system;
}

std::vector<Mat> LieAlgebra::derivations() const {
  const Index n = dim_;
  std::vector<Mat> basis;
  for (const Vec& v : rref_nullspace(derivation_system(*this))) {
    Mat d(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) d(i, j) = v(i * n + j);
    basis.push_back(std::move(d));
  }
  return basis;
}

bool LieAlgebra::is_automorphism(const Mat& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw std::invalid_argument("is_automorphism: wrong shape");
  if (determinant(a).is_zero()) throw std::invalid_argument("is_automorphism: singular matrix");
  for (Index i = 0; i < dim_; ++i)
    for (Index j = i + 1; j < dim_; ++j) {
      const Vec lhs = a * basis_bracket(i, j);
      const Vec rhs = bracket(a.col(i), a.col(j));
      for (Index t = 0; t < dim_; ++t)
        if (!(lhs(t) == rhs(t))) return false;
    }
  return true;
}

TypeRReport is_type_r_sampled(const LieAlgebra& g, int n_samples, std::uint64_t seed,
                              bool keep_certificates) {
  if (n_samples < 1) throw std::invalid_argument("is_type_r_sampled: need at least one sample");
  TypeRReport report;
  report.samples = n_samples;
  report.seed = seed;
  report.all_real_rooted = true;
  SplitMix64 rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    const Vec x = random_vector(rng, g.dim());
    const SturmCertificate cert = sturm_certificate(char_poly(g.ad(x)));
    if (!cert.real_rooted) {
      report.all_real_rooted = false;
      report.witness = TypeRSample{x, cert};
      return report;
    }
    if (keep_certificates) report.certificates.push_back(TypeRSample{x, cert});
  }
  return report;
}

}  // namespace isom4d
