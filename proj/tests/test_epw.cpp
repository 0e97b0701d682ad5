#include <doctest.h>

#include "epwforge/census.hpp"
#include "epwforge/epw.hpp"
#include "support.hpp"

using namespace epwforge;
using namespace testing;

TEST_CASE("the coordinate Lagrangian containing every e_1 ^ . is degenerate") {
  const auto l0 = coordinate_lagrangian<Rational>(true, kQ);
  CHECK(!sextic_on_chart(l0, 0).has_value());
  CHECK_THROWS_AS(epw_sextic(l0), DegenerateSextic);
  const auto l0p = coordinate_lagrangian<Fp>(true, Field::prime(5));
  CHECK_THROWS_AS(epw_sextic(l0p), DegenerateSextic);
}

TEST_CASE("the complementary coordinate Lagrangian gives a sextuple hyperplane") {
  const auto l1 = coordinate_lagrangian<Rational>(false, kQ);
  const auto s = epw_sextic(l1);
  Exponents e{6, 0, 0, 0, 0, 0};
  CHECK(s.poly.size() == 1);
  CHECK(s.poly.coefficient(e) == Rational(1));
  // on the chart x_1 = 1 the matrix is constant and invertible
  const auto m = epw_matrix(l1, 0);
  for (const auto& row : m)
    for (const auto& entry : row) CHECK(entry.degree() <= 0);
}

TEST_CASE("sextics are homogeneous of degree 6 and chart independent") {
  for (const Field& f : {kQ, Field::prime(7), Field::prime(10007)}) {
    auto run = [&](auto tag) {
      using S = decltype(tag);
      const auto a = random_lagrangian<S>(2, f);
      const auto s = epw_sextic(a);
      CHECK(s.poly.is_homogeneous(6));
      if (f.is_prime()) CHECK(s.poly.leading_coefficient() == scalar<S>(1, f));
      for (int chart = 1; chart < kDim; ++chart) {
        const auto other = sextic_on_chart(a, chart);
        REQUIRE(other.has_value());
        CHECK(*other == s.poly);
      }
    };
    f.is_prime() ? run(Fp()) : run(Rational());
  }
}

TEST_CASE("interpolation and elimination agree") {
  const auto a = random_lagrangian<Fp>(9, Field::prime(10007));
  CHECK(*sextic_on_chart(a, 2, SexticMethod::Bareiss) == *sextic_on_chart(a, 2, SexticMethod::Interpolation));
}

TEST_CASE("k(v) from stacked bases matches the corank of the chart matrix on P^5(F_3)") {
  const Field f = Field::prime(3);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto a = random_lagrangian<Fp>(seed, f);
    const std::uint64_t n = projective_count(kDim, 3);
    CHECK(n == 364);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto v = point_from_ints<Fp>(projective_point(i, kDim, 3), f);
      int chart = 0;
      while (v(chart) == Fp(0)) ++chart;
      const int k = epw_rank_at(a, v);
      CHECK(k == 10 - rank_of<Fp>(epw_matrix_at(a, chart, v)));
      CHECK(k == intersection_dim(a.space(), fiber_F(v)));
    }
  }
}

TEST_CASE("exhaustive census and Euler relation") {
  const Field f = Field::prime(5);
  const auto a = random_lagrangian<Fp>(4, f);
  const auto s = epw_sextic(a).poly;
  const auto report = sextic_vanishing_census(a, s);
  CHECK(report.points == projective_count(kDim, 5));
  std::uint64_t total = 0;
  for (const auto& [k, c] : report.counts) total += c;
  CHECK(total == report.points);
  CHECK(rank_census(a).counts == report.counts);
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_vec<Fp>(rng, f);
    Fp euler(0, 5);
    for (int i = 0; i < kDim; ++i) euler += v(i) * s.partial(i).evaluate(v);
    CHECK(euler == Fp(6, 5) * s.evaluate(v));
  }
}

TEST_CASE("the gradient vanishes on the k >= 2 stratum") {
  const Field f = Field::prime(7);
  int seen = 0;
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto a = random_lagrangian<Fp>(seed, f);
    const auto s = epw_sextic(a).poly;
    const std::uint64_t n = projective_count(kDim, 7);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto v = point_from_ints<Fp>(projective_point(i, kDim, 7), f);
      if (epw_rank_at(a, v) < 2) continue;
      ++seen;
      for (int j = 0; j < kDim; ++j) CHECK(s.partial(j).evaluate(v) == Fp(0));
      CHECK_THROWS_AS(gradient_point(s, v), SingularPoint);
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("gradient points land on the dual sextic") {
  const Field f = Field::prime(7);
  const auto a = random_lagrangian<Fp>(5, f);
  const auto s = epw_sextic(a).poly;
  const auto dual = dual_sextic(a).poly;
  CHECK(dual.is_homogeneous(6));
  int checked = 0;
  for (std::uint64_t i = 0; i < projective_count(kDim, 7) && checked < 50; ++i) {
    const auto v = point_from_ints<Fp>(projective_point(i, kDim, 7), f);
    if (!(s.evaluate(v) == Fp(0)) || epw_rank_at(a, v) != 1) continue;
    Vec6<Fp> g;
    try {
      g = gradient_point(s, v);
    } catch (const SingularPoint&) {
      continue;
    }
    CHECK(dual.evaluate(g) == Fp(0));
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("Theta_A screen agrees with a brute-force Grassmannian scan over F_3") {
  const Field f = Field::prime(3);
  const auto grass = grassmannian_points(3, kDim, f);
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto a = lagrangian_with_planes<Fp>({coordinate_subspace<Fp>({1, 2, 3}, f)}, seed, f);
    std::vector<Subspace<Fp>> brute;
    for (const auto& u : grass)
      if (a.contains(plucker(u))) brute.push_back(u);
    const auto screened = theta_enumerate(a);
    CHECK(screened.size() == brute.size());
    for (const auto& u : brute) {
      CHECK(std::find(screened.begin(), screened.end(), u) != screened.end());
      CHECK(theta_contains(a, u));
    }
  }
  CHECK_THROWS_AS(theta_enumerate(random_lagrangian<Fp>(1, Field::prime(7))), ContractViolation);
}

TEST_CASE("C_{U,A} lies in P(U) and has k >= 2") {
  const Field f = Field::prime(3);
  const auto u = coordinate_subspace<Fp>({1, 2, 3}, f);
  const auto a = lagrangian_with_planes<Fp>({u}, 7, f);
  const auto s = epw_sextic(a).poly;
  CHECK(s.restrict_zero({3, 4, 5}).is_zero());
  const auto pts = c_UA_points(a, u);
  CHECK(!pts.empty());
  for (const auto& v : pts) {
    CHECK(u.contains(VecX<Fp>(v)));
    CHECK(epw_rank_at(a, v) >= 2);
  }
  CHECK_THROWS_AS(c_UA_points(a, coordinate_subspace<Fp>({4, 5, 6}, f)), ContractViolation);
}
