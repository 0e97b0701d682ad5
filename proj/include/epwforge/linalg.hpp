#pragma once

// Exact linear algebra over a field: reduced row-echelon form, kernels and
// subspaces kept in canonical (RREF) form so equality is matrix identity.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "epwforge/errors.hpp"
#include "epwforge/exterior.hpp"
#include "epwforge/scalar.hpp"

namespace epwforge {

/// Brings m to reduced row-echelon form in place, drops zero rows and returns pivot columns.
template <typename S>
std::vector<int> rref_in_place(MatX<S>& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!(m(r, col) == S(0))) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const S inv = m(row, col).inverse();
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == S(0)) continue;
      const S f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        if (!(m(row, c) == S(0))) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.conservativeResize(row, m.cols());
  return pivots;
}

template <typename S>
int rank_of(MatX<S> m) {
  return static_cast<int>(rref_in_place(m).size());
}

/// Linear subspace of S^n stored as the RREF of any spanning set.
template <typename S>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}
  /// Span of the rows of `rows`.
  Subspace(int ambient, MatX<S> rows) : ambient_(ambient), basis_(std::move(rows)) {
    if (basis_.cols() != ambient) throw ContractViolation("spanning rows do not match ambient dimension");
    pivots_ = rref_in_place(basis_);
  }

  static Subspace span(const std::vector<VecX<S>>& vectors, int ambient) {
    MatX<S> rows(static_cast<Eigen::Index>(vectors.size()), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient) throw ContractViolation("vector length does not match ambient dimension");
      rows.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
    }
    return Subspace(ambient, std::move(rows));
  }

  static Subspace span(const std::vector<KVector<S>>& vectors) {
    if (vectors.empty()) throw ContractViolation("span of an empty list needs an ambient dimension");
    std::vector<VecX<S>> v;
    for (const auto& k : vectors) v.push_back(k.coeffs());
    return span(v, vectors.front().size());
  }

  static Subspace whole(int ambient, const Field& f) {
    MatX<S> id(ambient, ambient);
    for (int i = 0; i < ambient; ++i)
      for (int j = 0; j < ambient; ++j) id(i, j) = scalar<S>(i == j ? 1 : 0, f);
    return Subspace(ambient, std::move(id));
  }

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.rows()); }
  const MatX<S>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  VecX<S> vector(int i) const { return basis_.row(i).transpose(); }

  /// Residue of v after reduction against the echelon basis; zero iff v is in the span.
  VecX<S> reduce(VecX<S> v) const {
    for (int r = 0; r < dim(); ++r) {
      const S f = v(pivots_[r]);
      if (f == S(0)) continue;
      v -= f * basis_.row(r).transpose();
    }
    return v;
  }

  bool contains(const VecX<S>& v) const {
    const VecX<S> res = reduce(v);
    for (Eigen::Index i = 0; i < res.size(); ++i)
      if (!(res(i) == S(0))) return false;
    return true;
  }
  bool contains(const KVector<S>& k) const { return contains(k.coeffs()); }
  bool contains(const Subspace& o) const {
    for (int r = 0; r < o.dim(); ++r)
      if (!contains(o.vector(r))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

 private:
  int ambient_ = 0;
  MatX<S> basis_;
  std::vector<int> pivots_;
};

template <typename S>
Subspace<S> operator+(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient()) throw ContractViolation("sum of subspaces in different spaces");
  MatX<S> rows(a.dim() + b.dim(), a.ambient());
  if (a.dim() > 0) rows.topRows(a.dim()) = a.basis();
  if (b.dim() > 0) rows.bottomRows(b.dim()) = b.basis();
  return Subspace<S>(a.ambient(), std::move(rows));
}

/// Null space {x : m x = 0} as a subspace of S^{m.cols()}.
template <typename S>
Subspace<S> kernel(MatX<S> m, const Field& f) {
  const auto n = static_cast<int>(m.cols());
  const std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<VecX<S>> gens;
  for (int freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    VecX<S> x = VecX<S>::Constant(n, scalar<S>(0, f));
    x(freec) = scalar<S>(1, f);
    for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = -m(static_cast<Eigen::Index>(r), freec);
    gens.push_back(std::move(x));
  }
  if (gens.empty()) return Subspace<S>(n);
  return Subspace<S>::span(gens, n);
}

template <typename S>
int intersection_dim(const Subspace<S>& a, const Subspace<S>& b) {
  return a.dim() + b.dim() - (a + b).dim();
}

template <typename S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b, const Field& f) {
  if (a.ambient() != b.ambient()) throw ContractViolation("intersection of subspaces in different spaces");
  if (a.dim() == 0 || b.dim() == 0) return Subspace<S>(a.ambient());
  // columns: a's basis then -b's basis; kernel vectors (x, y) give x * A = y * B.
  MatX<S> m(a.ambient(), a.dim() + b.dim());
  m.leftCols(a.dim()) = a.basis().transpose();
  m.rightCols(b.dim()) = -b.basis().transpose();
  const Subspace<S> ker = kernel<S>(m, f);
  std::vector<VecX<S>> gens;
  for (int r = 0; r < ker.dim(); ++r) {
    const VecX<S> coeff = ker.vector(r).head(a.dim());
    gens.push_back(a.basis().transpose() * coeff);
  }
  if (gens.empty()) return Subspace<S>(a.ambient());
  return Subspace<S>::span(gens, a.ambient());
}

}  // namespace epwforge
