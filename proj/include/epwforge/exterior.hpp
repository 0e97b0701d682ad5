#pragma once

// Exterior algebra of a fixed 6-dimensional space W.
//
// Basis k-vectors e_I are indexed by strictly increasing index sets I, kept
// internally as 6-bit masks (bit i <-> e_{i+1}), and stored in lexicographic
// slot order: wedge^3 W has 20 slots, wedge^2 W has 15, W has 6.  Every sign in
// the library comes from counting inversions of a merge of two index sets.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "epwforge/errors.hpp"
#include "epwforge/scalar.hpp"

namespace epwforge {

inline constexpr int kDim = 6;

template <typename S>
using Vec6 = Eigen::Matrix<S, kDim, 1>;

template <typename S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

struct BladeTables {
  std::array<std::vector<std::uint8_t>, kDim + 1> masks;  // slot -> mask, per grade
  std::array<int, 64> slot{};                             // mask -> slot within its grade

  BladeTables() {
    for (int k = 0; k <= kDim; ++k) {
      std::vector<std::uint8_t> grade;
      for (unsigned m = 0; m < 64; ++m)
        if (std::popcount(m) == k) grade.push_back(static_cast<std::uint8_t>(m));
      // lexicographic order of the sorted index tuples
      std::sort(grade.begin(), grade.end(), [](std::uint8_t a, std::uint8_t b) {
        for (int i = 0; i < kDim; ++i) {
          const bool ia = a & (1u << i), ib = b & (1u << i);
          if (ia != ib) return ia;
        }
        return false;
      });
      for (std::size_t s = 0; s < grade.size(); ++s) slot[grade[s]] = static_cast<int>(s);
      masks[k] = std::move(grade);
    }
  }
};

inline const BladeTables& tables() {
  static const BladeTables t;
  return t;
}

}  // namespace detail

inline constexpr int binomial6(int k) {
  constexpr std::array<int, kDim + 1> c{1, 6, 15, 20, 15, 6, 1};
  return c[k];
}

inline std::uint8_t mask_of_slot(int grade, int slot) { return detail::tables().masks[grade][slot]; }
inline int slot_of_mask(std::uint8_t mask) { return detail::tables().slot[mask]; }
inline constexpr std::uint8_t full_mask() { return 0x3f; }

/// Parity of the permutation sorting the concatenation (I, J); 0 if I and J meet.
inline int merge_sign(std::uint8_t i, std::uint8_t j) {
  if (i & j) return 0;
  int inversions = 0;
  for (unsigned b = 0; b < kDim; ++b)
    if (i & (1u << b)) inversions += std::popcount(static_cast<unsigned>(j) & ((1u << b) - 1));
  return inversions % 2 ? -1 : 1;
}

inline std::vector<int> indices_of(std::uint8_t mask) {
  std::vector<int> out;
  for (int b = 0; b < kDim; ++b)
    if (mask & (1u << b)) out.push_back(b + 1);
  return out;
}

inline std::uint8_t mask_of(std::initializer_list<int> one_based) {
  std::uint8_t m = 0;
  for (int i : one_based) {
    if (i < 1 || i > kDim) throw ContractViolation("basis index out of range");
    m |= static_cast<std::uint8_t>(1u << (i - 1));
  }
  return m;
}

inline std::string mask_name(std::uint8_t mask) {
  std::string s = "e";
  for (int i : indices_of(mask)) s += std::to_string(i);
  return s;
}

/// Element of wedge^k W with exact coefficients in lexicographic slot order.
template <typename S>
class KVector {
 public:
  KVector() : KVector(0) {}
  explicit KVector(int grade) : grade_(grade) {
    if (grade < 0 || grade > kDim) throw ContractViolation("grade out of range");
    c_ = VecX<S>::Constant(binomial6(grade), S(0));
  }
  KVector(int grade, VecX<S> coeffs) : grade_(grade), c_(std::move(coeffs)) {
    if (grade < 0 || grade > kDim || c_.size() != binomial6(grade))
      throw ContractViolation("coefficient count does not match grade");
  }

  /// The blade e_I with coefficient 1 in field f.
  static KVector blade(std::uint8_t mask, const Field& f) {
    KVector out(std::popcount(static_cast<unsigned>(mask)));
    out.c_(slot_of_mask(mask)) = scalar<S>(1, f);
    return out;
  }
  static KVector blade(std::initializer_list<int> idx, const Field& f) { return blade(mask_of(idx), f); }

  /// A vector of W from its 6 coordinates.
  static KVector vector(const Vec6<S>& v) { return KVector(1, VecX<S>(v)); }

  int grade() const { return grade_; }
  int size() const { return static_cast<int>(c_.size()); }
  const VecX<S>& coeffs() const { return c_; }
  const S& operator[](int slot) const { return c_(slot); }
  S& operator[](int slot) { return c_(slot); }
  const S& at(std::uint8_t mask) const { return c_(slot_of_mask(mask)); }
  S& at(std::uint8_t mask) { return c_(slot_of_mask(mask)); }

  bool is_zero() const {
    for (Eigen::Index i = 0; i < c_.size(); ++i)
      if (!(c_(i) == S(0))) return false;
    return true;
  }

  KVector& operator+=(const KVector& o) { check(o); c_ += o.c_; return *this; }
  KVector& operator-=(const KVector& o) { check(o); c_ -= o.c_; return *this; }
  KVector& operator*=(const S& s) { c_ *= s; return *this; }
  friend KVector operator+(KVector a, const KVector& b) { return a += b; }
  friend KVector operator-(KVector a, const KVector& b) { return a -= b; }
  friend KVector operator*(const S& s, KVector a) { return a *= s; }
  friend KVector operator-(const KVector& a) { return KVector(a.grade_, -a.c_); }
  friend bool operator==(const KVector& a, const KVector& b) {
    if (a.grade_ != b.grade_) return false;
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      if (!(a.c_(i) == b.c_(i))) return false;
    return true;
  }

 private:
  void check(const KVector& o) const {
    if (o.grade_ != grade_) throw ContractViolation("adding k-vectors of different grades");
  }

  int grade_;
  VecX<S> c_;
};

template <typename S>
using Trivector = KVector<S>;

/// Element of W* against the dual basis e_1*, ..., e_6*.
template <typename S>
struct DualVector {
  Vec6<S> c = Vec6<S>::Constant(S(0));

  S operator()(const Vec6<S>& v) const { return c.dot(v); }
  friend bool operator==(const DualVector& a, const DualVector& b) { return a.c == b.c; }
};

template <typename S>
KVector<S> wedge(const KVector<S>& a, const KVector<S>& b) {
  const int grade = a.grade() + b.grade();
  if (grade > kDim) throw ContractViolation("wedge grade overflow: " + std::to_string(grade) + " > 6");
  KVector<S> out(grade);
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] == S(0)) continue;
    const std::uint8_t mi = mask_of_slot(a.grade(), i);
    for (int j = 0; j < b.size(); ++j) {
      if (b[j] == S(0)) continue;
      const std::uint8_t mj = mask_of_slot(b.grade(), j);
      const int s = merge_sign(mi, mj);
      if (s == 0) continue;
      S term = a[i] * b[j];
      if (s > 0)
        out.at(mi | mj) += term;
      else
        out.at(mi | mj) -= term;
    }
  }
  return out;
}

/// Interior product: iota_v(e_{i1} ^ ... ^ e_{ik}) = sum_t (-1)^t v(e_{it}) e_{I \ it}.
template <typename S>
KVector<S> contract(const DualVector<S>& v, const KVector<S>& w) {
  if (w.grade() == 0) throw ContractViolation("contraction of a scalar");
  KVector<S> out(w.grade() - 1);
  for (int s = 0; s < w.size(); ++s) {
    if (w[s] == S(0)) continue;
    const std::uint8_t m = mask_of_slot(w.grade(), s);
    int position = 0;
    for (int b = 0; b < kDim; ++b) {
      if (!(m & (1u << b))) continue;
      if (!(v.c(b) == S(0))) {
        S term = v.c(b) * w[s];
        const std::uint8_t rest = static_cast<std::uint8_t>(m & ~(1u << b));
        if (position % 2 == 0)
          out.at(rest) += term;
        else
          out.at(rest) -= term;
      }
      ++position;
    }
  }
  return out;
}

/// Coefficient of e_123456 in a top-degree element.
template <typename S>
const S& volume_coefficient(const KVector<S>& top) {
  if (top.grade() != kDim) throw ContractViolation("volume coefficient of a non-top form");
  return top[0];
}

/// sigma(w, h): coefficient of e_123456 in w ^ h.  Antisymmetric on wedge^3 W.
template <typename S>
S symplectic_form(const KVector<S>& w, const KVector<S>& h) {
  if (w.grade() != 3 || h.grade() != 3) throw ContractViolation("symplectic form needs trivectors");
  S acc(0);
  for (int s = 0; s < w.size(); ++s) {
    if (w[s] == S(0)) continue;
    const std::uint8_t m = mask_of_slot(3, s);
    const std::uint8_t mc = full_mask() & ~m;
    const S& other = h.at(mc);
    if (other == S(0)) continue;
    if (merge_sign(m, mc) > 0)
      acc += w[s] * other;
    else
      acc -= w[s] * other;
  }
  return acc;
}

/// The isomorphism wedge^3 W -> wedge^3 W* induced by sigma: e_I -> sgn(I, I^c) e*_{I^c}.
/// The result is expressed in the dual blade basis e*_J, same slot order.
template <typename S>
KVector<S> volume_dual(const KVector<S>& w) {
  if (w.grade() != 3) throw ContractViolation("volume_dual needs a trivector");
  KVector<S> out(3);
  for (int s = 0; s < w.size(); ++s) {
    const std::uint8_t m = mask_of_slot(3, s);
    const std::uint8_t mc = full_mask() & ~m;
    out.at(mc) = merge_sign(m, mc) > 0 ? w[s] : S(-w[s]);
  }
  return out;
}

/// Coordinate pairing <tau, eta> between wedge^k W* and wedge^k W.
template <typename S>
S dual_pairing(const KVector<S>& tau, const KVector<S>& eta) {
  if (tau.grade() != eta.grade()) throw ContractViolation("pairing of different grades");
  return tau.coeffs().dot(eta.coeffs());
}

/// wedge^5 W -> W*, eta -> (x -> vol(eta ^ x)); so e_{I^c(i)} -> sgn(I^c(i), i) e_i*.
template <typename S>
DualVector<S> five_form_to_dual(const KVector<S>& eta) {
  if (eta.grade() != 5) throw ContractViolation("five_form_to_dual needs a 5-form");
  DualVector<S> out;
  for (int i = 0; i < kDim; ++i) {
    const auto single = static_cast<std::uint8_t>(1u << i);
    const std::uint8_t rest = full_mask() & ~single;
    out.c(i) = merge_sign(rest, single) > 0 ? eta.at(rest) : S(-eta.at(rest));
  }
  return out;
}

template <typename S>
DualVector<S> dual_basis(int one_based, const Field& f) {
  DualVector<S> v;
  v.c(one_based - 1) = scalar<S>(1, f);
  return v;
}

template <typename S>
Vec6<S> basis_vector(int one_based, const Field& f) {
  Vec6<S> v = Vec6<S>::Constant(S(0));
  v(one_based - 1) = scalar<S>(1, f);
  return v;
}

template <typename Derived>
bool all_zero(const Eigen::DenseBase<Derived>& v) {
  using S = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v.derived().coeff(i) == S(0))) return false;
  return true;
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
template <typename Derived>
auto normalize_projective(const Eigen::MatrixBase<Derived>& v) {
  using S = typename Derived::Scalar;
  Eigen::Matrix<S, Derived::RowsAtCompileTime, 1> out = v;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (!(out(i) == S(0))) {
      const S inv = out(i).inverse();
      out *= inv;
      return out;
    }
  }
  throw ContractViolation("projective point of a zero vector");
}

}  // namespace epwforge
