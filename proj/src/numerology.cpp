#include "epwforge/numerology.hpp"

#include <array>
#include <cmath>

namespace epwforge {

namespace {

long isqrt(long n) {
  if (n < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::optional<long> as_long(const Rational& q) {
  if (!q.is_integer() || !q.num().fits_slong_p()) return std::nullopt;
  return q.num().get_si();
}

/// H <-> H2 with T fixed: aH + bT -> a(2T - H) + bT.
DivisorClass swap_sides(const DivisorClass& c) { return {-c.h, 2 * c.h + c.t}; }

}  // namespace

FujikiResult fujiki_degree_check(long d) {
  if (d < 1) throw ContractViolation("Fujiki degree must be positive");
  if (d % 12 != 0) return {};
  const long m = isqrt(d / 12);
  if (m * m != d / 12) return {};
  return {true, m};
}

Rational riemann_roch_h0(long H4, long c2H2, long chi) { return Rational(H4, 24) + Rational(c2H2, 24) + Rational(chi); }

long c2H2_from_ratio(long H4, const CharClassData& data) {
  if (H4 < 1 || !fujiki_degree_check(H4).accepted)
    throw ContractViolation("H^4 = " + std::to_string(H4) + " is not a Fujiki degree 12 m^2");
  const long product = data.c2H2_squared_over_H4 * H4;
  const long r = isqrt(product);
  if (r * r != product) throw InvariantViolation(std::to_string(product) + " is not a perfect square");
  return r;
}

Rational ahat1_squared(const CharClassData& data) { return Rational(data.c2_squared, 144); }

Rational ahat2(const CharClassData& data) { return Rational(3 * data.c2_squared - data.c4, 720); }

Rational sqrt_ahat_integral(const CharClassData& data) {
  return ahat2(data) / Rational(2) - ahat1_squared(data) / Rational(8);
}

HitchinSawonReport hs_consistency(const CharClassData& data) {
  HitchinSawonReport r;
  r.sqrt_ahat = sqrt_ahat_integral(data);
  r.stated_constant = Rational(192);
  r.ratio_from_stated = r.stated_constant * r.sqrt_ahat;
  r.stated_ratio = Rational(data.c2H2_squared_over_H4);
  // Invert Riemann-Roch at h0 = 6, H^4 = 12 for the ground-truth c2 H^2.
  const long H4 = 12;
  const Rational c2H2 = Rational(24) * (Rational(6) - Rational(data.chi)) - Rational(H4);
  r.implied_constant = c2H2 * c2H2 / (Rational(H4) * r.sqrt_ahat);
  r.consistent = r.implied_constant == r.stated_constant;
  return r;
}

long quartic_form(long a, long b, const IntersectionTable& t) {
  return a * a * a * a * t.H4 + 4 * a * a * a * b * t.H3E + 6 * a * a * b * b * t.H2E2 + 4 * a * b * b * b * t.HE3 +
         b * b * b * b * t.E4;
}

long quartic_form_by_products(long a, long b, const IntersectionTable& t) {
  const std::array<long, 5> by_e_count{t.H4, t.H3E, t.H2E2, t.HE3, t.E4};
  long total = 0;
  for (int pick = 0; pick < 16; ++pick) {
    long coef = 1;
    int e = 0;
    for (int factor = 0; factor < 4; ++factor) {
      if (pick & (1 << factor)) {
        coef *= b;
        ++e;
      } else {
        coef *= a;
      }
    }
    total += coef * by_e_count[e];
  }
  return total;
}

long degree_O2(const IntersectionTable& t) {
  const long q = quartic_form(6, -1, t);
  if (q != quartic_form_by_products(6, -1, t)) throw InternalInconsistency("quartic expansions disagree");
  if (q % 16 != 0) throw InvariantViolation("(6H - E)^4 = " + std::to_string(q) + " is not divisible by 16");
  return q / 16;
}

std::string DivisorClass::str() const {
  auto term = [](long c, const char* name, bool first) {
    if (c == 0) return std::string();
    std::string s = c < 0 ? "-" : (first ? "" : "+");
    if (std::labs(c) != 1) s += std::to_string(std::labs(c));
    return s + name;
  };
  std::string s = term(h, "H", true);
  s += term(t, "T", s.empty());
  return s.empty() ? "0" : s;
}

namespace classes {
DivisorClass E2_by_symmetry() { return swap_sides(E); }
DivisorClass E2_from_chain() {
  const DivisorClass d1 = 3 * H + T - E;
  return d1 - (T - 4 * H2 - H);
}
}  // namespace classes

std::pair<Rational, Rational> to_HE(const DivisorClass& c) {
  return {Rational(c.h) + Rational(3 * c.t), Rational(-c.t, 2)};
}

std::optional<DivisorClass> from_HE(const Rational& x, const Rational& y) {
  const auto h = as_long(x + Rational(6) * y);
  const auto t = as_long(Rational(-2) * y);
  if (!h || !t) return std::nullopt;
  return DivisorClass{*h, *t};
}

std::pair<Rational, Rational> to_HH2(const DivisorClass& c) {
  return {Rational(c.h) + Rational(c.t, 2), Rational(c.t, 2)};
}

std::optional<DivisorClass> from_HH2(const Rational& x, const Rational& y) {
  const auto h = as_long(x - y);
  const auto t = as_long(Rational(2) * y);
  if (!h || !t) return std::nullopt;
  return DivisorClass{*h, *t};
}

long test_functional(const DivisorClass& c) { return 2 * c.h + c.t; }

bool ClassIdentityReport::all_hold() const {
  for (const auto& i : identities)
    if (!i.holds) return false;
  for (const auto& p : pairings)
    if (!p.holds) return false;
  return true;
}

ClassIdentityReport class_identities() {
  using namespace classes;
  ClassIdentityReport r;
  auto same = [&](std::string name, DivisorClass lhs, DivisorClass rhs) {
    r.identities.push_back({std::move(name), lhs, rhs, lhs == rhs});
  };
  auto pairing = [&](std::string name, long value, long expected) {
    r.pairings.push_back({std::move(name), value, expected, value == expected});
  };
  const DivisorClass e2 = E2_by_symmetry();
  const DivisorClass d1 = 3 * H + T - E;
  same("5H-E = H2", 5 * H - E, H2);
  same("H+H2 = 2T", H + H2, 2 * T);
  same("E = 2(3H-T)", E, 2 * (3 * H - T));
  same("H2 <-> H swap is an involution", swap_sides(swap_sides(E)), E);
  same("swap(H2) = H", swap_sides(H2), H);
  same("E2 by symmetry = E2 from chain", e2, E2_from_chain());
  same("E2 = 10T-6H", e2, 10 * T - 6 * H);
  same("3H+T-E-E2 = 3H-7T", d1 - e2, 3 * H - 7 * T);
  same("3H-7T = -3H2-T", 3 * H - 7 * T, -3 * H2 - T);
  same("-3H2-T = T-4H2-H", -3 * H2 - T, T - 4 * H2 - H);
  same("3H+T-E = T+H2-2H", d1, T + H2 - 2 * H);
  pairing("l(T) = 1", test_functional(T), 1);
  pairing("l(H) = 2", test_functional(H), 2);
  pairing("l(3H+T-E) = -3", test_functional(d1), -3);
  pairing("l(T+H2-2H) = -3", test_functional(T + H2 - 2 * H), -3);
  return r;
}

}  // namespace epwforge
