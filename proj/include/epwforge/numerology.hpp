#pragma once

// Integer and rational bookkeeping for the hyperkahler fourfold invariants:
// Fujiki degrees, Riemann-Roch, A-hat genus data, the degree of the orbit O2
// from its quartic intersection table, and identities in the rank-2 class
// lattice generated by H and T.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epwforge/scalar.hpp"

namespace epwforge {

struct CharClassData {
  long c2_squared = 828;
  long c4 = 324;
  long chi = 3;
  long c2H2_squared_over_H4 = 300;
};

/// (aH + bE)^4 is read against these five numbers.
struct IntersectionTable {
  long H4 = 6;
  long H3E = 0;
  long H2E2 = -80;
  long HE3 = -480;
  long E4 = -1344;
};

struct FujikiResult {
  bool accepted = false;
  long m = 0;  // d = 12 m^2 when accepted
};

/// d = 3 k^2 with k even, i.e. d = 12 m^2.
FujikiResult fujiki_degree_check(long d);

Rational riemann_roch_h0(long H4, long c2H2, long chi);

/// sqrt(300 * H4); requires fujiki_degree_check(H4).
long c2H2_from_ratio(long H4, const CharClassData& data = {});

Rational ahat1_squared(const CharClassData& data = {});
Rational ahat2(const CharClassData& data = {});
Rational sqrt_ahat_integral(const CharClassData& data = {});

struct HitchinSawonReport {
  Rational sqrt_ahat;
  Rational stated_constant;   // 192
  Rational ratio_from_stated;  // stated_constant * sqrt_ahat
  Rational stated_ratio;       // 300
  Rational implied_constant;   // (c2 H^2)^2 / (H^4 * sqrt_ahat) at H^4 = 12, c2 H^2 = 60
  bool consistent = false;
};

HitchinSawonReport hs_consistency(const CharClassData& data = {});

/// (aH + bE)^4 by the binomial expansion.
long quartic_form(long a, long b, const IntersectionTable& t = {});
/// The same value by expanding the product of four linear forms term by term.
long quartic_form_by_products(long a, long b, const IntersectionTable& t = {});
long degree_O2(const IntersectionTable& t = {});

/// aH + bT.
struct DivisorClass {
  long h = 0;
  long t = 0;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend DivisorClass operator+(DivisorClass x, const DivisorClass& y) { return {x.h + y.h, x.t + y.t}; }
  friend DivisorClass operator-(DivisorClass x, const DivisorClass& y) { return {x.h - y.h, x.t - y.t}; }
  friend DivisorClass operator*(long k, const DivisorClass& x) { return {k * x.h, k * x.t}; }
  std::string str() const;
};

namespace classes {
inline constexpr DivisorClass H{1, 0};
inline constexpr DivisorClass T{0, 1};
inline constexpr DivisorClass E{6, -2};
inline constexpr DivisorClass H2{-1, 2};
/// The exceptional class on the second side, from H <-> H2 applied to H2 = 5H - E.
DivisorClass E2_by_symmetry();
/// The same class read off from D1 - E2 = T - 4 H2 - H with D1 = 3H + T - E.
DivisorClass E2_from_chain();
}  // namespace classes

/// Coordinates in the (H, X) basis for X = E or X = H2; those views only cover an
/// index-2 sublattice, so coordinates are rational.
std::pair<Rational, Rational> to_HE(const DivisorClass& c);
std::optional<DivisorClass> from_HE(const Rational& x, const Rational& y);
std::pair<Rational, Rational> to_HH2(const DivisorClass& c);
std::optional<DivisorClass> from_HH2(const Rational& x, const Rational& y);

/// l(aH + bT) = 2a + b.
long test_functional(const DivisorClass& c);

struct IdentityCheck {
  std::string name;
  DivisorClass lhs;
  DivisorClass rhs;
  bool holds = false;
};

struct PairingCheck {
  std::string name;
  long value = 0;
  long expected = 0;
  bool holds = false;
};

struct ClassIdentityReport {
  std::vector<IdentityCheck> identities;
  std::vector<PairingCheck> pairings;
  bool all_hold() const;
};

ClassIdentityReport class_identities();

}  // namespace epwforge
