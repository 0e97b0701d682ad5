#include <doctest.h>

#include <random>

#include "epwforge/numerology.hpp"

using namespace epwforge;

TEST_CASE("quartic form: binomial expansion equals the product expansion") {
  for (long a = -8; a <= 8; ++a)
    for (long b = -8; b <= 8; ++b) CHECK(quartic_form(a, b) == quartic_form_by_products(a, b));
  CHECK(quartic_form(1, 0) == 6);
  CHECK(quartic_form(0, 1) == -1344);
  CHECK(quartic_form(6, -1) == 672);
  CHECK(degree_O2() == 42);
}

TEST_CASE("Fujiki degrees") {
  CHECK(fujiki_degree_check(12).accepted);
  CHECK(fujiki_degree_check(12).m == 1);
  CHECK(fujiki_degree_check(48).m == 2);
  CHECK(!fujiki_degree_check(24).accepted);
  CHECK(!fujiki_degree_check(3).accepted);
  CHECK_THROWS_AS(fujiki_degree_check(0), ContractViolation);
  CHECK(c2H2_from_ratio(12) == 60);
  CHECK(c2H2_from_ratio(48) == 120);
  CHECK_THROWS_AS(c2H2_from_ratio(24), ContractViolation);
}

TEST_CASE("Riemann-Roch") {
  CHECK(riemann_roch_h0(12, 60, 3) == Rational(6));
  for (long k = 1; k <= 40; ++k) {
    const Rational h = riemann_roch_h0(3 * k * k, 30 * k, 3);
    CHECK(h * Rational(8) == Rational(k * k + 10 * k + 24));
    CHECK(h.is_integer() == (k % 2 == 0));
  }
}

TEST_CASE("A-hat data") {
  CHECK(ahat1_squared() == Rational(23, 4));
  CHECK(ahat2() == Rational(3));
  CHECK(sqrt_ahat_integral() == Rational(3, 2) - Rational(23, 32));
  const auto hs = hs_consistency();
  CHECK(hs.stated_constant == Rational(192));
  CHECK(hs.ratio_from_stated == Rational(150));
  CHECK(hs.implied_constant == Rational(384));
  CHECK(hs.implied_constant * hs.sqrt_ahat == hs.stated_ratio);
  CHECK(!hs.consistent);
}

TEST_CASE("divisor classes") {
  using namespace classes;
  CHECK(E == DivisorClass{6, -2});
  CHECK(H2 == DivisorClass{-1, 2});
  CHECK(E2_by_symmetry() == E2_from_chain());
  CHECK(E2_by_symmetry().str() == "-6H+10T");
  CHECK((3 * H - 7 * T).str() == "3H-7T");
  CHECK(test_functional(H) == 2);
  CHECK(test_functional(T) == 1);
  CHECK(test_functional(3 * H + T - E) == -3);
  CHECK(class_identities().all_hold());
}

TEST_CASE("basis changes round-trip") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 10000; ++i) {
    const DivisorClass c{d(rng), d(rng)};
    const auto [x, y] = to_HE(c);
    const auto back = from_HE(x, y);
    REQUIRE(back.has_value());
    CHECK(*back == c);
    const auto [u, v] = to_HH2(c);
    const auto back2 = from_HH2(u, v);
    REQUIRE(back2.has_value());
    CHECK(*back2 == c);
  }
  CHECK(from_HE(Rational(0), Rational(1, 2)) == DivisorClass{3, -1});
  CHECK(!from_HE(Rational(0), Rational(1, 4)).has_value());
  CHECK(!from_HH2(Rational(1, 2), Rational(0)).has_value());
}
