#pragma once

// Exhaustive orbit censuses of trivectors over F_2, where the projective points
// of P(wedge^3 W) are exactly the 2^20 - 1 nonzero coefficient patterns, and
// enumeration of G(3,6)(F_q) through its Schubert cells.

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "epwforge/exterior.hpp"
#include "epwforge/linalg.hpp"
#include "epwforge/orbits.hpp"
#include "epwforge/projective.hpp"

namespace epwforge {

struct OrbitCensus {
  std::uint64_t points = 0;
  std::map<int, std::uint64_t> kernel_dims;   // divisor-kernel dimension -> count
  std::vector<std::uint32_t> grassmannian;    // coefficient bit patterns
  std::vector<std::uint32_t> pure_o2;
};

inline KVector<Fp> f2_trivector(std::uint32_t bits) {
  VecX<Fp> c(binomial6(3));
  for (int s = 0; s < binomial6(3); ++s) c(s) = Fp((bits >> s) & 1u, 2);
  return KVector<Fp>(3, c);
}

/// Classifies every nonzero trivector over F_2.  Kernel dimensions outside
/// {0, 1, 3} are tallied, not thrown, so the census itself can witness them.
inline OrbitCensus orbit_census_f2() {
  const std::uint64_t total = (1u << binomial6(3)) - 1;
  struct Item {
    std::uint32_t bits;
    int dim;
  };
  const auto items = parallel_collect<Item>(total, [](std::uint64_t lo, std::uint64_t hi, std::vector<Item>& out) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      const auto bits = static_cast<std::uint32_t>(i + 1);
      out.push_back({bits, divisor_kernel(f2_trivector(bits)).dim()});
    }
  });
  OrbitCensus c;
  c.points = total;
  for (const auto& it : items) {
    ++c.kernel_dims[it.dim];
    if (it.dim == 3) c.grassmannian.push_back(it.bits);
    if (it.dim == 1) c.pure_o2.push_back(it.bits);
  }
  return c;
}

/// Every point of G(k, n)(F_p) as an echelon subspace: pivot sets in lexicographic
/// order, free entries as a little-endian odometer.
inline std::vector<Subspace<Fp>> grassmannian_points(int k, int n, const Field& f) {
  if (!f.is_prime()) throw ContractViolation("grassmannian_points needs a finite field");
  std::vector<Subspace<Fp>> out;
  for (unsigned pivots = 0; pivots < (1u << n); ++pivots) {
    if (std::popcount(pivots) != k) continue;
    std::vector<int> piv;
    for (int i = 0; i < n; ++i)
      if (pivots & (1u << i)) piv.push_back(i);
    std::vector<std::pair<int, int>> free;  // (row, column) of free entries
    for (int r = 0; r < k; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (!(pivots & (1u << c))) free.emplace_back(r, c);
    const std::uint64_t cells = ipow(f.p, static_cast<int>(free.size()));
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
      MatX<Fp> m = MatX<Fp>::Constant(k, n, Fp(0, f.p));
      for (int r = 0; r < k; ++r) m(r, piv[r]) = Fp(1, f.p);
      std::uint64_t rest = idx;
      for (const auto& [r, c] : free) {
        m(r, c) = Fp(static_cast<std::int64_t>(rest % f.p), f.p);
        rest /= f.p;
      }
      out.emplace_back(n, std::move(m));
    }
  }
  return out;
}

}  // namespace epwforge
