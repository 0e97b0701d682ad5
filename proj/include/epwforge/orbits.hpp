#pragma once

// Orbit geometry of trivectors under PGL(W): the Grassmannian O3 = G(3,W),
// the divisible locus O2 = {alpha ^ beta}, its two fibrations onto P(W) and
// P(W*), their fibers, and the tangent data used by the quadric Q.

#include <string>
#include <vector>

#include "epwforge/errors.hpp"
#include "epwforge/exterior.hpp"
#include "epwforge/linalg.hpp"

namespace epwforge {

enum class OrbitLabel { Grassmannian, PureO2, OutsideO2 };

inline std::string to_string(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::Grassmannian: return "Grassmannian";
    case OrbitLabel::PureO2: return "PureO2";
    case OrbitLabel::OutsideO2: return "OutsideO2";
  }
  return "?";
}

/// Decomposition of a PureO2 trivector as alpha ^ beta.
template <typename S>
struct DivisibleForm {
  Vec6<S> alpha;     // normalized generator of the divisor kernel
  KVector<S> beta;   // 2-form with alpha ^ beta = omega
};

/// Matrix of v -> v ^ omega from W to wedge^4 W (15 x 6).
template <typename S>
MatX<S> wedge_map(const KVector<S>& omega) {
  MatX<S> m = MatX<S>::Constant(binomial6(omega.grade() + 1), kDim, S(0));
  for (int s = 0; s < omega.size(); ++s) {
    if (omega[s] == S(0)) continue;
    const std::uint8_t mask = mask_of_slot(omega.grade(), s);
    for (int i = 0; i < kDim; ++i) {
      const auto bit = static_cast<std::uint8_t>(1u << i);
      if (mask & bit) continue;
      const int row = slot_of_mask(mask | bit);
      if (merge_sign(bit, mask) > 0)
        m(row, i) += omega[s];
      else
        m(row, i) -= omega[s];
    }
  }
  return m;
}

/// {v in W : v ^ omega = 0}; for a nonzero trivector its dimension is 0, 1 or 3.
template <typename S>
Subspace<S> divisor_kernel(const KVector<S>& omega) {
  if (omega.grade() != 3) throw ContractViolation("divisor_kernel needs a trivector");
  if (omega.is_zero()) throw ContractViolation("divisor_kernel of the zero trivector");
  return kernel<S>(wedge_map(omega), infer_field(omega.coeffs()));
}

inline OrbitLabel label_from_kernel_dim(int dim) {
  switch (dim) {
    case 3: return OrbitLabel::Grassmannian;
    case 1: return OrbitLabel::PureO2;
    case 0: return OrbitLabel::OutsideO2;
    default:
      throw InternalInconsistency("divisor kernel of dimension " + std::to_string(dim));
  }
}

template <typename S>
OrbitLabel classify(const KVector<S>& omega) {
  return label_from_kernel_dim(divisor_kernel(omega).dim());
}

/// u1 ^ u2 ^ u3 for a 3-dimensional subspace U of W.
template <typename S>
KVector<S> plucker(const Subspace<S>& u) {
  if (u.ambient() != kDim || u.dim() != 3) throw ContractViolation("plucker needs a 3-dimensional subspace of W");
  Vec6<S> a = u.vector(0), b = u.vector(1), c = u.vector(2);
  return wedge(wedge(KVector<S>::vector(a), KVector<S>::vector(b)), KVector<S>::vector(c));
}

template <typename S>
Subspace<S> coordinate_subspace(std::initializer_list<int> one_based, const Field& f) {
  std::vector<VecX<S>> gens;
  for (int i : one_based) gens.push_back(basis_vector<S>(i, f));
  return Subspace<S>::span(gens, kDim);
}

template <typename S>
Vec6<S> pi1(const KVector<S>& omega) {
  const Subspace<S> k = divisor_kernel(omega);
  if (k.dim() != 1)
    throw WrongStratum("pi1 is defined on O2 minus O3 only (kernel dimension " + std::to_string(k.dim()) + ")");
  return normalize_projective(Vec6<S>(k.vector(0)));
}

/// Writes a PureO2 trivector as alpha ^ beta.  With alpha normalized so that its
/// first nonzero coordinate i0 is 1, beta = iota_{e_i0*}(omega) has no e_i0 term
/// and satisfies alpha ^ beta = omega.
template <typename S>
DivisibleForm<S> factor_divisible(const KVector<S>& omega) {
  const Vec6<S> alpha = pi1(omega);
  const Field f = infer_field(omega.coeffs());
  int pivot = 0;
  while (alpha(pivot) == S(0)) ++pivot;
  KVector<S> beta = contract(dual_basis<S>(pivot + 1, f), omega);
  if (!(wedge(KVector<S>::vector(alpha), beta) == omega))
    throw InternalInconsistency("alpha ^ beta does not reproduce a PureO2 trivector");
  return {alpha, std::move(beta)};
}

/// [alpha ^ omega] -> [alpha ^ beta ^ beta] read in W*.
template <typename S>
DualVector<S> pi2(const KVector<S>& omega) {
  const DivisibleForm<S> d = factor_divisible(omega);
  const KVector<S> five = wedge(wedge(KVector<S>::vector(d.alpha), d.beta), d.beta);
  DualVector<S> w = five_form_to_dual(five);
  if (all_zero(w.c)) throw InternalInconsistency("alpha ^ beta ^ beta vanished on a PureO2 trivector");
  w.c = normalize_projective(w.c);
  return w;
}

/// F_v = v ^ wedge^2 W, a 10-dimensional sigma-isotropic subspace of wedge^3 W.
template <typename S>
Subspace<S> fiber_F(const Vec6<S>& v) {
  if (all_zero(v)) throw ContractViolation("fiber_F of the zero vector");
  const Field f = infer_field(v);
  const KVector<S> vv = KVector<S>::vector(v);
  std::vector<KVector<S>> gens;
  for (int s = 0; s < binomial6(2); ++s) gens.push_back(wedge(vv, KVector<S>::blade(mask_of_slot(2, s), f)));
  return Subspace<S>::span(gens);
}

/// F'_w = wedge^3(ker w).
template <typename S>
Subspace<S> fiber_Fprime(const DualVector<S>& w) {
  if (all_zero(w.c)) throw ContractViolation("fiber_Fprime of the zero covector");
  const Field f = infer_field(w.c);
  MatX<S> row = w.c.transpose();
  const Subspace<S> ker = kernel<S>(row, f);
  std::vector<KVector<S>> gens;
  for (int a = 0; a < ker.dim(); ++a)
    for (int b = a + 1; b < ker.dim(); ++b)
      for (int c = b + 1; c < ker.dim(); ++c)
        gens.push_back(wedge(wedge(KVector<S>::vector(ker.vector(a)), KVector<S>::vector(ker.vector(b))),
                             KVector<S>::vector(ker.vector(c))));
  return Subspace<S>::span(gens);
}

/// Pi(p) = W ^ beta for p = alpha ^ beta.
template <typename S>
Subspace<S> pi_space(const KVector<S>& p) {
  const DivisibleForm<S> d = factor_divisible(p);
  const Field f = infer_field(p.coeffs());
  std::vector<KVector<S>> gens;
  for (int i = 1; i <= kDim; ++i) gens.push_back(wedge(KVector<S>::vector(basis_vector<S>(i, f)), d.beta));
  return Subspace<S>::span(gens);
}

/// Affine tangent space to O2 at p: F_{pi1 p} + F'_{pi2 p} + W ^ beta (dimension 15).
template <typename S>
Subspace<S> tangent_O2(const KVector<S>& p) {
  return fiber_F(pi1(p)) + fiber_Fprime(pi2(p)) + pi_space(p);
}

/// Sigma_p = {eta : sigma(eta, p) = 0}.
template <typename S>
Subspace<S> sigma_hyperplane(const KVector<S>& p) {
  if (label_from_kernel_dim(divisor_kernel(p).dim()) != OrbitLabel::PureO2)
    throw WrongStratum("sigma_hyperplane is defined at PureO2 points");
  const Field f = infer_field(p.coeffs());
  MatX<S> row(1, binomial6(3));
  for (int s = 0; s < binomial6(3); ++s) row(0, s) = symplectic_form(KVector<S>::blade(mask_of_slot(3, s), f), p);
  return kernel<S>(row, f);
}

/// Q(omega) = vol(iota_v(omega) ^ omega ^ gamma).
template <typename S>
S quadric_Q(const DualVector<S>& v, const Vec6<S>& gamma, const KVector<S>& omega) {
  if (omega.grade() != 3) throw ContractViolation("quadric_Q needs a trivector");
  return volume_coefficient(wedge(wedge(contract(v, omega), omega), KVector<S>::vector(gamma)));
}

/// wedge^2 U ^ W: the affine tangent space of G(3,W) at [e_U].
template <typename S>
Subspace<S> tangent_G(const Subspace<S>& u) {
  if (u.ambient() != kDim || u.dim() != 3) throw ContractViolation("tangent_G needs a 3-dimensional subspace of W");
  const Field f = infer_field(u.basis());
  std::vector<KVector<S>> gens;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const KVector<S> ab = wedge(KVector<S>::vector(u.vector(a)), KVector<S>::vector(u.vector(b)));
      for (int i = 1; i <= kDim; ++i) gens.push_back(wedge(ab, KVector<S>::vector(basis_vector<S>(i, f))));
    }
  return Subspace<S>::span(gens);
}

}  // namespace epwforge
