#include <doctest.h>

#include "epwforge/linalg.hpp"
#include "support.hpp"

using namespace epwforge;
using namespace testing;

namespace {

int inversion_sign(std::uint8_t a, std::uint8_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if ((a >> i & 1) && (b >> j & 1) && i > j) ++inversions;
  return inversions % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("merge_sign agrees with inversion counting") {
  for (unsigned a = 0; a < 64; ++a)
    for (unsigned b = 0; b < 64; ++b)
      CHECK(merge_sign(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
            inversion_sign(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
}

TEST_CASE("slots are lexicographic and invertible") {
  for (int k = 0; k <= kDim; ++k) {
    for (int s = 0; s < binomial6(k); ++s) CHECK(slot_of_mask(mask_of_slot(k, s)) == s);
  }
  CHECK(mask_of_slot(3, 0) == mask_of({1, 2, 3}));
  CHECK(mask_of_slot(3, 1) == mask_of({1, 2, 4}));
  CHECK(mask_of_slot(3, 19) == mask_of({4, 5, 6}));
}

TEST_CASE("wedge is graded commutative and associative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = vec(random_vec<Rational>(rng, kQ));
    const auto v = vec(random_vec<Rational>(rng, kQ));
    CHECK(wedge(u, v) == -wedge(v, u));
    CHECK(wedge(u, u).is_zero());
    const auto b = random_form<Rational>(2, rng, kQ);
    const auto w = random_form<Rational>(3, rng, kQ);
    const auto h = random_form<Rational>(3, rng, kQ);
    CHECK(wedge(u, b) == wedge(b, u));
    CHECK(wedge(w, h) == -wedge(h, w));
    CHECK(wedge(wedge(u, b), v) == wedge(u, wedge(b, v)));
  }
}

TEST_CASE("blades are wedges of basis vectors") {
  const Field f = Field::prime(5);
  const auto e = [&](int i) { return vec(basis_vector<Fp>(i, f)); };
  CHECK(wedge(wedge(e(1), e(2)), e(3)) == KVector<Fp>::blade({1, 2, 3}, f));
  CHECK(wedge(wedge(e(2), e(1)), e(3)) == -KVector<Fp>::blade({1, 2, 3}, f));
  CHECK(wedge(wedge(e(1), e(4)), e(5)) == KVector<Fp>::blade({1, 4, 5}, f));
  CHECK_THROWS_AS(wedge(KVector<Fp>::blade({1, 2, 3}, f), KVector<Fp>::blade({1, 2, 4, 5}, f)), ContractViolation);
}

TEST_CASE("sigma is antisymmetric and nondegenerate") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = random_form<Rational>(3, rng, kQ);
    const auto h = random_form<Rational>(3, rng, kQ);
    CHECK(symplectic_form(w, h) == -symplectic_form(h, w));
    CHECK(symplectic_form(w, w) == Rational(0));
    CHECK(symplectic_form(w, h) == volume_coefficient(wedge(w, h)));
  }
  for (const Field& f : {kQ, Field::prime(3), Field::prime(7)}) {
    auto gram = [&](auto tag) {
      using S = decltype(tag);
      MatX<S> g(20, 20);
      for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
          g(i, j) = symplectic_form(KVector<S>::blade(mask_of_slot(3, i), f), KVector<S>::blade(mask_of_slot(3, j), f));
      return rank_of<S>(g);
    };
    CHECK((f.is_prime() ? gram(Fp()) : gram(Rational())) == 20);
  }
}

TEST_CASE("volume_dual pairs like sigma and squares to -1") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = random_form<Rational>(3, rng, kQ);
    const auto h = random_form<Rational>(3, rng, kQ);
    CHECK(dual_pairing(volume_dual(w), h) == symplectic_form(w, h));
    CHECK(volume_dual(volume_dual(w)) == -w);
  }
}

TEST_CASE("contraction is a graded derivation dual to wedge") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    DualVector<Rational> v;
    v.c = random_vec<Rational>(rng, kQ);
    const auto a = random_form<Rational>(2, rng, kQ);
    const auto b = random_form<Rational>(3, rng, kQ);
    CHECK(contract(v, wedge(a, b)) == wedge(contract(v, a), b) + wedge(a, contract(v, b)));
    const auto u = random_vec<Rational>(rng, kQ);
    CHECK(contract(v, vec(u)).coeffs()(0) == v(u));
    CHECK(contract(v, contract(v, b)).is_zero());
  }
}

TEST_CASE("five forms read as covectors") {
  const Field f = kQ;
  for (int i = 1; i <= kDim; ++i) {
    std::uint8_t rest = full_mask() & ~static_cast<std::uint8_t>(1u << (i - 1));
    const auto eta = KVector<Rational>::blade(rest, f);
    const auto w = five_form_to_dual(eta);
    for (int j = 1; j <= kDim; ++j) {
      const Rational expected = volume_coefficient(wedge(eta, vec(basis_vector<Rational>(j, f))));
      CHECK(w(basis_vector<Rational>(j, f)) == expected);
    }
  }
}

TEST_CASE("normalize_projective fixes the first nonzero coordinate") {
  Vec6<Rational> v;
  v << 0, 3, -6, 0, 9, 1;
  const Vec6<Rational> n = normalize_projective(v);
  CHECK(n(0) == Rational(0));
  CHECK(n(1) == Rational(1));
  CHECK(n(2) == Rational(-2));
  CHECK(n(5) == Rational(1, 3));
}
