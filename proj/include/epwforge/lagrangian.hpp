#pragma once

// Lagrangian subspaces of (wedge^3 W, sigma): validation, random generation as
// graphs over the coordinate Lagrangian L0, isotropic completion, structured
// examples containing prescribed decomposable trivectors, and transport to the
// dual side.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "epwforge/errors.hpp"
#include "epwforge/exterior.hpp"
#include "epwforge/linalg.hpp"
#include "epwforge/orbits.hpp"

namespace epwforge {

inline constexpr int kTrivectorDim = 20;
inline constexpr int kLagrangianDim = 10;

struct Provenance {
  std::string method;
  std::uint64_t seed = 0;
  std::string detail;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Slots of the blades e_I with 1 in I (the coordinate Lagrangian L0), in lex order.
inline std::vector<int> l0_slots() {
  std::vector<int> out;
  for (int s = 0; s < binomial6(3); ++s)
    if (mask_of_slot(3, s) & 1u) out.push_back(s);
  return out;
}

/// First pair (i, j) of basis rows with sigma(b_i, b_j) != 0, if any.
template <typename S>
std::optional<std::pair<int, int>> isotropy_witness(const Subspace<S>& space) {
  for (int i = 0; i < space.dim(); ++i)
    for (int j = i + 1; j < space.dim(); ++j)
      if (!(symplectic_form(KVector<S>(3, space.vector(i)), KVector<S>(3, space.vector(j))) == S(0)))
        return std::pair(i, j);
  return std::nullopt;
}

template <typename S>
bool is_isotropic(const Subspace<S>& space) {
  if (space.ambient() != kTrivectorDim) throw ContractViolation("isotropy is defined on wedge^3 W");
  return !isotropy_witness(space).has_value();
}

/// sigma-orthogonal complement {eta : sigma(eta, s) = 0 for all s in space}.
template <typename S>
Subspace<S> sigma_complement(const Subspace<S>& space, const Field& f) {
  if (space.dim() == 0) return Subspace<S>::whole(kTrivectorDim, f);
  MatX<S> gram(space.dim(), kTrivectorDim);
  for (int r = 0; r < space.dim(); ++r) {
    const KVector<S> row(3, space.vector(r));
    for (int s = 0; s < kTrivectorDim; ++s)
      gram(r, s) = symplectic_form(KVector<S>::blade(mask_of_slot(3, s), f), row);
  }
  return kernel<S>(gram, f);
}

template <typename S>
class Lagrangian {
 public:
  /// Validates isotropy and dimension 10; throws otherwise.
  Lagrangian(Subspace<S> space, Field field, Provenance provenance, bool dual_side = false)
      : space_(std::move(space)), field_(field), provenance_(std::move(provenance)), dual_side_(dual_side) {
    require_field<S>(field_);
    if (!field_.symplectic_ok()) throw ContractViolation("Lagrangians need odd characteristic");
    if (space_.ambient() != kTrivectorDim) throw InvariantViolation("Lagrangian must live in the 20-dimensional wedge^3 W");
    if (auto w = isotropy_witness(space_))
      throw NotIsotropic("basis vectors " + std::to_string(w->first) + " and " + std::to_string(w->second) +
                         " pair nontrivially under sigma");
    if (space_.dim() != kLagrangianDim)
      throw InvariantViolation("Lagrangian has dimension " + std::to_string(space_.dim()) + ", expected 10");
  }

  const Subspace<S>& space() const { return space_; }
  const Field& field() const { return field_; }
  const Provenance& provenance() const { return provenance_; }
  /// True for Lagrangians of wedge^3 W* produced by dual_transport.
  bool dual_side() const { return dual_side_; }
  KVector<S> vector(int i) const { return KVector<S>(3, space_.vector(i)); }
  bool contains(const KVector<S>& w) const { return space_.contains(w); }

  friend bool operator==(const Lagrangian& a, const Lagrangian& b) {
    return a.field_ == b.field_ && a.dual_side_ == b.dual_side_ && a.space_ == b.space_;
  }

 private:
  Subspace<S> space_;
  Field field_;
  Provenance provenance_;
  bool dual_side_;
};

/// span{e_I : 1 in I} (L0) or span{e_I : 1 not in I} (L1).
template <typename S>
Lagrangian<S> coordinate_lagrangian(bool contains_index_one, const Field& f) {
  std::vector<KVector<S>> gens;
  for (int s = 0; s < binomial6(3); ++s)
    if (static_cast<bool>(mask_of_slot(3, s) & 1u) == contains_index_one)
      gens.push_back(KVector<S>::blade(mask_of_slot(3, s), f));
  return Lagrangian<S>(Subspace<S>::span(gens), f, {contains_index_one ? "L0" : "L1", 0, ""});
}

/// Graph {u + N u : u in L0} of N : L0 -> L1, where row j is e_{I_j} + sum_i n(i, j) e_{I_i^c}.
/// Not validated.
template <typename S>
Subspace<S> graph_subspace(const MatX<S>& n, const Field& f) {
  const std::vector<int> l0 = l0_slots();
  std::vector<VecX<S>> rows;
  for (int j = 0; j < kLagrangianDim; ++j) {
    VecX<S> g = VecX<S>::Constant(kTrivectorDim, scalar<S>(0, f));
    g(l0[j]) = scalar<S>(1, f);
    for (int i = 0; i < kLagrangianDim; ++i) {
      const std::uint8_t comp = full_mask() & ~mask_of_slot(3, l0[i]);
      g(slot_of_mask(comp)) += n(i, j);
    }
    rows.push_back(std::move(g));
  }
  return Subspace<S>::span(rows, kTrivectorDim);
}

/// N = diag(s) * sym where s_i = sigma(e_{I_i}, e_{I_i^c}); the graph is isotropic iff sym is symmetric.
template <typename S>
MatX<S> graph_map_from_symmetric(const MatX<S>& sym) {
  const std::vector<int> l0 = l0_slots();
  MatX<S> n = sym;
  for (int i = 0; i < kLagrangianDim; ++i) {
    const std::uint8_t m = mask_of_slot(3, l0[i]);
    if (merge_sign(m, full_mask() & ~m) < 0) n.row(i) = -n.row(i);
  }
  return n;
}

/// Random graph Lagrangian over L0: upper triangle of a random 10x10 matrix reflected
/// to a symmetric form, turned into N : L0 -> L1 by the sigma sign table.
template <typename S>
Lagrangian<S> random_lagrangian(std::uint64_t seed, const Field& f) {
  if (!f.symplectic_ok()) throw ContractViolation("random_lagrangian needs odd characteristic");
  require_field<S>(f);
  std::mt19937_64 rng(seed);
  MatX<S> sym(kLagrangianDim, kLagrangianDim);
  for (int i = 0; i < kLagrangianDim; ++i)
    for (int j = i; j < kLagrangianDim; ++j) sym(i, j) = sym(j, i) = random_scalar<S>(rng, f);
  return Lagrangian<S>(graph_subspace<S>(graph_map_from_symmetric<S>(sym), f), f, {"random_graph", seed, ""});
}

/// Lagrangian containing an isotropic S by symplectic completion: repeatedly adjoin
/// the lexicographically first basis trivector of S^perp outside S (falling back to
/// the echelon basis of S^perp).
template <typename S>
Lagrangian<S> complete_to_lagrangian(const Subspace<S>& start, const Field& f) {
  if (auto w = isotropy_witness(start))
    throw NotIsotropic("cannot complete: basis vectors " + std::to_string(w->first) + " and " +
                       std::to_string(w->second) + " pair nontrivially");
  if (start.ambient() != kTrivectorDim) throw ContractViolation("completion needs a subspace of wedge^3 W");
  Subspace<S> current = start;
  while (current.dim() < kLagrangianDim) {
    const Subspace<S> perp = sigma_complement(current, f);
    std::optional<VecX<S>> pick;
    for (int s = 0; s < binomial6(3) && !pick; ++s) {
      const KVector<S> b = KVector<S>::blade(mask_of_slot(3, s), f);
      if (perp.contains(b) && !current.contains(b)) pick = b.coeffs();
    }
    for (int r = 0; r < perp.dim() && !pick; ++r)
      if (!current.contains(perp.vector(r))) pick = perp.vector(r);
    if (!pick) throw InternalInconsistency("isotropic subspace has no proper extension below dimension 10");
    current = current + Subspace<S>::span({*pick}, kTrivectorDim);
  }
  return Lagrangian<S>(current, f, {"completion", 0, ""});
}

/// Lagrangian containing e_U for every listed 3-space, completed by random vectors of
/// the sigma-complement.  Pairs U, U' must meet (sigma(e_U, e_U') = 0 iff U and U' meet).
template <typename S>
Lagrangian<S> lagrangian_with_planes(const std::vector<Subspace<S>>& planes, std::uint64_t seed, const Field& f) {
  if (!f.symplectic_ok()) throw ContractViolation("lagrangian_with_planes needs odd characteristic");
  std::vector<KVector<S>> blades;
  for (const auto& u : planes) blades.push_back(plucker(u));
  for (std::size_t i = 0; i < blades.size(); ++i)
    for (std::size_t j = i + 1; j < blades.size(); ++j)
      if (!(symplectic_form(blades[i], blades[j]) == S(0)))
        throw NotIsotropic("planes " + std::to_string(i) + " and " + std::to_string(j) +
                           " are disjoint; their trivectors pair nontrivially");
  std::mt19937_64 rng(seed);
  Subspace<S> current = blades.empty() ? Subspace<S>(kTrivectorDim) : Subspace<S>::span(blades);
  while (current.dim() < kLagrangianDim) {
    const Subspace<S> perp = sigma_complement(current, f);
    VecX<S> v = VecX<S>::Constant(kTrivectorDim, scalar<S>(0, f));
    for (int r = 0; r < perp.dim(); ++r) v += random_scalar<S>(rng, f) * perp.vector(r);
    if (!current.contains(v)) current = current + Subspace<S>::span({v}, kTrivectorDim);
  }
  return Lagrangian<S>(current, f, {"planes", seed, ""});
}

/// Image under volume_dual: a Lagrangian of wedge^3 W* for the dual wedge form.
/// Transporting twice returns the original subspace (volume_dual squares to -1).
template <typename S>
Lagrangian<S> dual_transport(const Lagrangian<S>& a) {
  std::vector<KVector<S>> rows;
  for (int i = 0; i < kLagrangianDim; ++i) rows.push_back(volume_dual(a.vector(i)));
  Provenance p = a.provenance();
  p.detail = p.detail.empty() ? "dual" : p.detail + "+dual";
  return Lagrangian<S>(Subspace<S>::span(rows), a.field(), std::move(p), !a.dual_side());
}

}  // namespace epwforge
