#include <doctest.h>

#include "epwforge/census.hpp"
#include "epwforge/orbits.hpp"
#include "support.hpp"

using namespace epwforge;
using namespace testing;

namespace {

template <typename S>
KVector<S> decomposable(std::mt19937_64& rng, const Field& f) {
  while (true) {
    const auto w = wedge(wedge(vec(random_vec<S>(rng, f)), vec(random_vec<S>(rng, f))), vec(random_vec<S>(rng, f)));
    if (!w.is_zero()) return w;
  }
}

}  // namespace

TEST_CASE("standard representatives of the three orbits") {
  const Field f = kQ;
  using K = KVector<Rational>;
  CHECK(classify(K::blade({1, 2, 3}, f)) == OrbitLabel::Grassmannian);
  CHECK(classify(K::blade({1, 2, 3}, f) + K::blade({1, 4, 5}, f)) == OrbitLabel::PureO2);
  CHECK(classify(K::blade({1, 2, 3}, f) + K::blade({4, 5, 6}, f)) == OrbitLabel::OutsideO2);
  const auto p = K::blade({1, 2, 3}, f) + K::blade({1, 4, 5}, f);
  CHECK(pi1(p) == basis_vector<Rational>(1, f));
  CHECK(pi2(p) == dual_basis<Rational>(6, f));
  CHECK_THROWS_AS(pi1(K::blade({1, 2, 3}, f)), WrongStratum);
  CHECK_THROWS_AS(pi1(K::blade({1, 2, 3}, f) + K::blade({4, 5, 6}, f)), WrongStratum);
}

TEST_CASE("random decomposable trivectors are Grassmannian with the right kernel") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto w = decomposable<Rational>(rng, kQ);
    const auto k = divisor_kernel(w);
    REQUIRE(k.dim() == 3);
    for (int i = 0; i < 3; ++i) CHECK(wedge(KVector<Rational>::vector(Vec6<Rational>(k.vector(i))), w).is_zero());
    CHECK(Subspace<Rational>::span(std::vector<KVector<Rational>>{plucker(k), w}).dim() == 1);
  }
}

TEST_CASE("alpha ^ beta for generic beta is PureO2 and factors back") {
  std::mt19937_64 rng(22);
  for (const Field& f : {kQ, Field::prime(5)}) {
    auto run = [&](auto tag) {
      using S = decltype(tag);
      for (int trial = 0; trial < 20; ++trial) {
        const Vec6<S> alpha = random_vec<S>(rng, f);
        const auto beta = random_form<S>(2, rng, f);
        const auto w = wedge(vec(alpha), beta);
        if (w.is_zero() || classify(w) != OrbitLabel::PureO2) continue;
        CHECK(pi1(w) == normalize_projective(alpha));
        const auto d = factor_divisible(w);
        CHECK(wedge(vec(d.alpha), d.beta) == w);
        CHECK(pi2(w)(alpha) == S(0));
      }
    };
    f.is_prime() ? run(Fp()) : run(Rational());
  }
}

TEST_CASE("quadric Q factors through v(alpha)") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec6<Rational> alpha = random_vec<Rational>(rng, kQ);
    const auto beta = random_form<Rational>(2, rng, kQ);
    const auto w = wedge(vec(alpha), beta);
    DualVector<Rational> v;
    v.c = random_vec<Rational>(rng, kQ);
    const Vec6<Rational> gamma = random_vec<Rational>(rng, kQ);
    const Rational rhs = v(alpha) * volume_coefficient(wedge(wedge(wedge(vec(alpha), beta), beta), vec(gamma)));
    CHECK(quadric_Q(v, gamma, w) == rhs);
  }
}

TEST_CASE("fibers F_v and F'_w are 10-dimensional and isotropic") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = random_vec<Rational>(rng, kQ);
    const auto fv = fiber_F(v);
    CHECK(fv.dim() == 10);
    DualVector<Rational> w;
    w.c = random_vec<Rational>(rng, kQ);
    const auto fw = fiber_Fprime(w);
    CHECK(fw.dim() == 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        CHECK(symplectic_form(KVector<Rational>(3, fv.vector(i)), KVector<Rational>(3, fv.vector(j))) == Rational(0));
        CHECK(symplectic_form(KVector<Rational>(3, fw.vector(i)), KVector<Rational>(3, fw.vector(j))) == Rational(0));
      }
    CHECK(intersection_dim(fv, fw) == (w(v) == Rational(0) ? 6 : 0));
  }
}

TEST_CASE("tangent spaces have the expected dimensions") {
  std::mt19937_64 rng(25);
  const Field f = kQ;
  const auto u = coordinate_subspace<Rational>({1, 2, 3}, f);
  CHECK(tangent_G(u).dim() == 10);
  const auto p = KVector<Rational>::blade({1, 2, 3}, f) + KVector<Rational>::blade({1, 4, 5}, f);
  const auto t = tangent_O2(p);
  CHECK(t.dim() == 15);
  const auto sigma = sigma_hyperplane(p);
  CHECK(intersection_dim(sigma, t) == 14);
  CHECK(sigma.contains(fiber_F(pi1(p)) + fiber_Fprime(pi2(p))));
  CHECK(t.contains(p));
}

TEST_CASE("G(3,6)(F_q) has Gaussian-binomial size") {
  CHECK(grassmannian_points(3, 6, Field::prime(2)).size() == 1395);
  CHECK(grassmannian_points(3, 6, Field::prime(3)).size() == 33880);
  CHECK(grassmannian_points(2, 4, Field::prime(5)).size() == 806);
  for (const auto& u : grassmannian_points(3, 6, Field::prime(2))) CHECK(classify(plucker(u)) == OrbitLabel::Grassmannian);
}
