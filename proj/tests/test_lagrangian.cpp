#include <doctest.h>

#include "epwforge/lagrangian.hpp"
#include "epwforge/orbits.hpp"
#include "support.hpp"

using namespace epwforge;
using namespace testing;

TEST_CASE("coordinate Lagrangians") {
  for (bool one : {true, false}) {
    const auto l = coordinate_lagrangian<Rational>(one, kQ);
    CHECK(l.space().dim() == 10);
    for (int s = 0; s < 20; ++s) {
      const auto b = KVector<Rational>::blade(mask_of_slot(3, s), kQ);
      CHECK(l.contains(b) == (static_cast<bool>(mask_of_slot(3, s) & 1u) == one));
    }
  }
  CHECK(intersection_dim(coordinate_lagrangian<Rational>(true, kQ).space(),
                         coordinate_lagrangian<Rational>(false, kQ).space()) == 0);
}

TEST_CASE("random Lagrangians are isotropic, reproducible and seed dependent") {
  for (const Field& f : {kQ, Field::prime(3), Field::prime(7), Field::prime(10007)}) {
    auto run = [&](auto tag) {
      using S = decltype(tag);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto a = random_lagrangian<S>(seed, f);
        CHECK(is_isotropic(a.space()));
        CHECK(a.space().dim() == 10);
        CHECK(a == random_lagrangian<S>(seed, f));
        CHECK(!(a == random_lagrangian<S>(seed + 100, f)));
        CHECK(sigma_complement(a.space(), f) == a.space());
      }
    };
    f.is_prime() ? run(Fp()) : run(Rational());
  }
}

TEST_CASE("perturbing one basis vector breaks isotropy") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = random_lagrangian<Rational>(seed, kQ);
    MatX<Rational> rows = a.space().basis();
    const int r = static_cast<int>(rng() % 10);
    const int s = static_cast<int>(rng() % 20);
    // A basis trivector pairing nontrivially with some row of A.
    VecX<Rational> bump = KVector<Rational>::blade(mask_of_slot(3, s), kQ).coeffs();
    bool pairs = false;
    for (int i = 0; i < 10 && !pairs; ++i)
      pairs = i != r && !(symplectic_form(KVector<Rational>(3, bump), a.vector(i)) == Rational(0));
    if (!pairs) continue;
    rows.row(r) += bump.transpose();
    CHECK_THROWS_AS(Lagrangian<Rational>(Subspace<Rational>(20, rows), kQ, {}), NotIsotropic);
  }
  CHECK_THROWS_AS(Lagrangian<Rational>(Subspace<Rational>::span(std::vector<KVector<Rational>>{
                                           KVector<Rational>::blade({1, 2, 3}, kQ)}),
                                       kQ, {}),
                  InvariantViolation);
}

TEST_CASE("completion and planes") {
  const Field f = Field::prime(5);
  const auto u = coordinate_subspace<Fp>({1, 2, 3}, f);
  const auto u2 = coordinate_subspace<Fp>({1, 4, 5}, f);
  const auto a = lagrangian_with_planes<Fp>({u, u2}, 4, f);
  CHECK(a.contains(plucker(u)));
  CHECK(a.contains(plucker(u2)));
  CHECK(a == lagrangian_with_planes<Fp>({u, u2}, 4, f));
  CHECK_THROWS_AS(lagrangian_with_planes<Fp>({u, coordinate_subspace<Fp>({4, 5, 6}, f)}, 4, f), NotIsotropic);
  const auto c = complete_to_lagrangian(Subspace<Fp>::span(std::vector<KVector<Fp>>{plucker(u)}), f);
  CHECK(c.contains(plucker(u)));
  CHECK(c.space().dim() == 10);
}

TEST_CASE("even characteristic and field mismatches are rejected") {
  CHECK_THROWS_AS(random_lagrangian<Fp>(1, Field::prime(2)), ContractViolation);
  CHECK_THROWS_AS(random_lagrangian<Fp>(1, kQ), Error);
  CHECK_THROWS_AS(Field::prime(10003), ContractViolation);
  CHECK_THROWS_AS(Fp(1, 3) + Fp(1, 5), FieldMismatch);
}

TEST_CASE("dual transport is an involution on subspaces") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = random_lagrangian<Fp>(seed, Field::prime(7));
    const auto d = dual_transport(a);
    CHECK(d.dual_side());
    CHECK(!(d.space() == a.space()));
    const auto back = dual_transport(d);
    CHECK(back.space() == a.space());
    CHECK(!back.dual_side());
  }
}
