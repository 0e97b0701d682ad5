#include <doctest.h>

#include "epwforge/epw.hpp"
#include "support.hpp"

using namespace epwforge;
using namespace testing;

namespace {

MultiPoly<Rational> x(int i) { return MultiPoly<Rational>::variable(i, Rational(1)); }

}  // namespace

TEST_CASE("multivariate arithmetic") {
  const auto p = x(0) + x(1);
  const auto sq = p * p;
  CHECK(sq == x(0) * x(0) + Rational(2) * (x(0) * x(1)) + x(1) * x(1));
  CHECK(sq.degree() == 2);
  CHECK(sq.is_homogeneous(2));
  CHECK((sq - sq).is_zero());
  Vec6<Rational> v;
  v << 2, 3, 5, 7, 11, 13;
  CHECK(sq.evaluate(v) == Rational(25));
  CHECK((x(2) + MultiPoly<Rational>::constant(Rational(1))).homogenize(5, 3) == x(2) * x(5) * x(5) + x(5) * x(5) * x(5));
  CHECK((x(3) * x(3) * x(4)).divide_by_variable_power(3, 2) == x(4));
  CHECK_THROWS_AS((x(3) * x(4)).divide_by_variable_power(3, 2), DivisionFailure);
  CHECK((x(0) * x(0) * x(1)).partial(0) == Rational(2) * (x(0) * x(1)));
  CHECK((x(0) * x(1) + x(2)).restrict_zero({0}) == x(2));
}

TEST_CASE("normalization is canonical") {
  const auto p = Rational(-4, 3) * (x(0) * x(1)) + Rational(2, 9) * x(2) * x(2);
  const auto n = normalize(p);
  CHECK(n.leading_coefficient() == Rational(6));
  CHECK(n == normalize(Rational(-7) * p));
  const Field f = Field::prime(7);
  const auto q = MultiPoly<Fp>::variable(0, Fp(3, 7)) + MultiPoly<Fp>::variable(1, Fp(5, 7));
  CHECK(normalize(q).leading_coefficient().is_one());
  CHECK(normalize(q) == normalize(Fp(4, f.p) * q));
}

TEST_CASE("symbolic chart determinants agree with numeric determinants") {
  std::mt19937_64 rng(41);
  for (const Field& f : {kQ, Field::prime(101)}) {
    auto run = [&](auto tag) {
      using S = decltype(tag);
      const auto a = random_lagrangian<S>(3, f);
      for (int chart : {0, 3}) {
        const auto det = bareiss_determinant(epw_matrix(a, chart), chart, f);
        CHECK(det.degree() <= 10);
        for (int trial = 0; trial < 5; ++trial) {
          Vec6<S> v = random_vec<S>(rng, f);
          v(chart) = scalar<S>(1, f);
          CHECK(det.evaluate(v) == determinant(epw_matrix_at(a, chart, v)));
        }
      }
    };
    f.is_prime() ? run(Fp()) : run(Rational());
  }
}

TEST_CASE("numeric determinant against a cofactor oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    MatX<Rational> m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
    const auto cofactor = [](const MatX<Rational>& a, auto&& self) -> Rational {
      if (a.rows() == 1) return a(0, 0);
      Rational acc(0);
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        MatX<Rational> minor(a.rows() - 1, a.cols() - 1);
        for (Eigen::Index r = 1; r < a.rows(); ++r)
          for (Eigen::Index c = 0, k = 0; c < a.cols(); ++c)
            if (c != j) minor(r - 1, k++) = a(r, c);
        const Rational t = a(0, j) * self(minor, self);
        acc = j % 2 ? acc - t : acc + t;
      }
      return acc;
    };
    CHECK(determinant(m) == cofactor(m, cofactor));
  }
}

TEST_CASE("interpolation reproduces a known polynomial") {
  const Field f = kQ;
  const auto target = Rational(3) * x(1) * x(1) * x(2) - x(4) + Rational(5, 2) * x(3) * x(3) * x(3) * x(3);
  const int chart = 0;
  const auto vars = chart_variables(chart);
  const auto eval = [&](const ChartPoint<Rational>& pt) {
    Vec6<Rational> v = Vec6<Rational>::Constant(Rational(1));
    for (int i = 0; i < kChartVars; ++i) v(vars[i]) = pt[i];
    return target.evaluate(v);
  };
  CHECK(interpolate_on_chart<Rational>(eval, 4, chart, f) == target);
  CHECK_THROWS_AS(interpolate_on_chart<Fp>([](const ChartPoint<Fp>&) { return Fp(0); }, 6, chart, Field::prime(5)),
                  ContractViolation);
}
