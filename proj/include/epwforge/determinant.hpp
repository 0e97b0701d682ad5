#pragma once

// Exact determinants of matrices of affine-linear forms on an affine chart.
//
// Two independent routes:
//   * fraction-free Bareiss elimination over the polynomial ring, on a dense
//     monomial index (5 chart variables, degree <= 18 for the intermediate
//     products of a 10x10 elimination).  Over F_p the coefficients are raw
//     residues; over Q rows are scaled to integers and the ring is Z[x].
//   * evaluation at the principal lattice {a in N^5 : |a| <= d}, Newton
//     divided differences on that lower set, and conversion back to monomials.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "epwforge/errors.hpp"
#include "epwforge/exterior.hpp"
#include "epwforge/polynomial.hpp"
#include "epwforge/scalar.hpp"

namespace epwforge {

inline constexpr int kChartVars = kDim - 1;

/// The five affine variables of chart c are x_k, k != c (0-based).
inline std::array<int, kChartVars> chart_variables(int chart) {
  std::array<int, kChartVars> v{};
  for (int k = 0, j = 0; k < kDim; ++k)
    if (k != chart) v[j++] = k;
  return v;
}

namespace detail {

/// Graded-lex ranking of monomials in 5 variables of degree <= kMaxDegree.
struct ChartMonomials {
  static constexpr int kMaxDegree = 18;
  static constexpr int kBase = kMaxDegree + 1;

  std::vector<std::uint32_t> key;       // rank -> base-19 packed key (x1 most significant)
  std::vector<std::array<std::uint8_t, kChartVars>> exps;  // rank -> exponents
  std::vector<int> count_upto;          // degree d -> number of monomials of degree <= d
  std::vector<std::int32_t> rank;       // packed key -> rank

  ChartMonomials() {
    int total = 1;
    for (int i = 0; i < kChartVars; ++i) total *= kBase;
    rank.assign(total, -1);
    for (int d = 0; d <= kMaxDegree; ++d) {
      std::vector<std::uint32_t> keys;
      std::array<int, kChartVars> e{};
      enumerate(d, 0, e, keys);
      std::sort(keys.begin(), keys.end());
      for (auto k : keys) {
        rank[k] = static_cast<std::int32_t>(key.size());
        key.push_back(k);
        std::array<std::uint8_t, kChartVars> ex{};
        std::uint32_t rest = k;
        for (int i = kChartVars - 1; i >= 0; --i) {
          ex[i] = static_cast<std::uint8_t>(rest % kBase);
          rest /= kBase;
        }
        exps.push_back(ex);
      }
      count_upto.push_back(static_cast<int>(key.size()));
    }
  }

  static std::uint32_t pack(const std::array<int, kChartVars>& e) {
    std::uint32_t k = 0;
    for (int i = 0; i < kChartVars; ++i) k = k * kBase + static_cast<std::uint32_t>(e[i]);
    return k;
  }

 private:
  static void enumerate(int left, int var, std::array<int, kChartVars>& e, std::vector<std::uint32_t>& out) {
    if (var == kChartVars - 1) {
      e[var] = left;
      out.push_back(pack(e));
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[var] = x;
      enumerate(left - x, var + 1, e, out);
    }
  }
};

inline const ChartMonomials& chart_monomials() {
  static const ChartMonomials m;
  return m;
}

struct ModpRing {
  using T = std::uint64_t;
  std::uint64_t p;
  bool is_zero(const T& a) const { return a == 0; }
  T neg(const T& a) const { return a ? p - a : 0; }
  void addmul(T& acc, const T& a, const T& b) const { acc = (acc + a * b) % p; }
  void submul(T& acc, const T& a, const T& b) const { acc = (acc + (p - (a * b) % p)) % p; }
  T inverse(T a) const {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr) {
      const std::int64_t q = r / nr;
      std::tie(t, nt) = std::pair(nt, t - q * nt);
      std::tie(r, nr) = std::pair(nr, r - q * nr);
    }
    return static_cast<T>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
  }
  /// a / b, known to be exact (always, in a field).
  bool divexact(T& out, const T& a, const T& b) const {
    out = (a * inverse(b)) % p;
    return true;
  }
};

struct IntegerRing {
  using T = mpz_class;
  bool is_zero(const T& a) const { return sgn(a) == 0; }
  T neg(const T& a) const { return -a; }
  void addmul(T& acc, const T& a, const T& b) const { mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }
  void submul(T& acc, const T& a, const T& b) const { mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }
  bool divexact(T& out, const T& a, const T& b) const {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return true;
  }
};

template <typename Ring>
using ChartPoly = std::vector<std::pair<std::uint32_t, typename Ring::T>>;  // ascending rank

template <typename Ring>
int chart_degree(const ChartPoly<Ring>& p) {
  const auto& cm = chart_monomials();
  int d = -1;
  for (const auto& t : p) {
    int s = 0;
    for (auto e : cm.exps[t.first]) s += e;
    d = std::max(d, s);
  }
  return d;
}

/// Dense scratch buffer indexed by monomial rank.
template <typename Ring>
class Accumulator {
 public:
  explicit Accumulator(const Ring& ring) : ring_(ring), buf_(chart_monomials().key.size()) {}

  /// buf += sign * a * b
  void add_product(const ChartPoly<Ring>& a, const ChartPoly<Ring>& b, bool negate) {
    const auto& cm = chart_monomials();
    const int top = chart_degree<Ring>(a) + chart_degree<Ring>(b);
    if (top > ChartMonomials::kMaxDegree) throw ContractViolation("chart polynomial degree exceeds the monomial index");
    span_ = std::max(span_, static_cast<std::size_t>(cm.count_upto[top]));
    for (const auto& [ra, ca] : a)
      for (const auto& [rb, cb] : b) {
        const auto r = static_cast<std::size_t>(cm.rank[cm.key[ra] + cm.key[rb]]);
        if (negate)
          ring_.submul(buf_[r], ca, cb);
        else
          ring_.addmul(buf_[r], ca, cb);
      }
  }

  /// Replaces the buffer contents f by f / g (exact), returning the quotient.
  ChartPoly<Ring> divide_exact(const ChartPoly<Ring>& g) {
    const auto& cm = chart_monomials();
    const auto& [lead_rank, lead_coef] = g.back();
    const auto lead_exp = cm.exps[lead_rank];
    ChartPoly<Ring> q;
    for (std::size_t r = span_; r-- > 0;) {
      if (ring_.is_zero(buf_[r])) continue;
      std::array<int, kChartVars> e{};
      for (int i = 0; i < kChartVars; ++i) {
        e[i] = static_cast<int>(cm.exps[r][i]) - static_cast<int>(lead_exp[i]);
        if (e[i] < 0) throw DivisionFailure("Bareiss quotient is not a polynomial");
      }
      typename Ring::T qc;
      if (!ring_.divexact(qc, buf_[r], lead_coef)) throw DivisionFailure("Bareiss quotient has non-integral coefficients");
      const std::uint32_t qkey = ChartMonomials::pack(e);
      for (const auto& [rg, cg] : g) ring_.submul(buf_[static_cast<std::size_t>(cm.rank[qkey + cm.key[rg]])], qc, cg);
      q.emplace_back(static_cast<std::uint32_t>(cm.rank[qkey]), std::move(qc));
    }
    std::reverse(q.begin(), q.end());
    span_ = 0;
    return q;
  }

  /// Moves the buffer out as a polynomial and clears it.
  ChartPoly<Ring> take() {
    ChartPoly<Ring> out;
    for (std::size_t r = 0; r < span_; ++r) {
      if (!ring_.is_zero(buf_[r])) {
        out.emplace_back(static_cast<std::uint32_t>(r), buf_[r]);
        buf_[r] = typename Ring::T(0);
      }
    }
    span_ = 0;
    return out;
  }

 private:
  Ring ring_;
  std::vector<typename Ring::T> buf_;
  std::size_t span_ = 0;
};

/// Fraction-free Bareiss elimination; m is consumed.  Row swaps flip the sign.
template <typename Ring>
ChartPoly<Ring> bareiss(const Ring& ring, std::vector<std::vector<ChartPoly<Ring>>> m) {
  const std::size_t n = m.size();
  if (n == 0) return {{0u, typename Ring::T(1)}};
  Accumulator<Ring> acc(ring);
  bool negate = false;
  ChartPoly<Ring> prev{{0u, typename Ring::T(1)}};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t sel = k + 1;
      while (sel < n && m[sel][k].empty()) ++sel;
      if (sel == n) return {};
      std::swap(m[k], m[sel]);
      negate = !negate;
    }
    const bool trivial_prev = prev.size() == 1 && prev[0].first == 0 && prev[0].second == typename Ring::T(1);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        acc.add_product(m[k][k], m[i][j], false);
        acc.add_product(m[i][k], m[k][j], true);
        m[i][j] = trivial_prev ? acc.take() : acc.divide_exact(prev);
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  ChartPoly<Ring> det = std::move(m[n - 1][n - 1]);
  if (negate)
    for (auto& t : det) t.second = ring.neg(t.second);
  return det;
}

}  // namespace detail

/// Matrix whose entries are polynomials in the chart variables of `chart`
/// (x_chart does not occur) of degree <= 1.
template <typename S>
using ChartMatrix = std::vector<std::vector<MultiPoly<S>>>;

namespace detail {

inline std::uint32_t chart_rank_of(std::uint64_t key, int chart) {
  const auto vars = chart_variables(chart);
  if (monomial::exponent(key, chart) != 0) throw ContractViolation("chart variable occurs in a chart polynomial");
  std::array<int, kChartVars> e{};
  for (int i = 0; i < kChartVars; ++i) e[i] = monomial::exponent(key, vars[i]);
  return static_cast<std::uint32_t>(chart_monomials().rank[ChartMonomials::pack(e)]);
}

inline std::uint64_t key_of_chart_rank(std::uint32_t rank, int chart) {
  const auto vars = chart_variables(chart);
  Exponents e{};
  for (int i = 0; i < kChartVars; ++i) e[vars[i]] = chart_monomials().exps[rank][i];
  return monomial::pack(e);
}

template <typename Ring>
ChartPoly<Ring> sorted(ChartPoly<Ring> p) {
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return p;
}

}  // namespace detail

/// Determinant of a square chart matrix by fraction-free Bareiss elimination.
inline MultiPoly<Fp> bareiss_determinant(const ChartMatrix<Fp>& m, int chart, const Field& f) {
  if (!f.is_prime()) throw FieldMismatch("F_p determinant requested over " + f.name());
  const detail::ModpRing ring{f.p};
  std::vector<std::vector<detail::ChartPoly<detail::ModpRing>>> dm(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& entry : m[i]) {
      detail::ChartPoly<detail::ModpRing> p;
      for (const auto& [key, c] : entry.terms())
        p.emplace_back(detail::chart_rank_of(key, chart), static_cast<std::uint64_t>(c.bind(f.p).value()));
      dm[i].push_back(detail::sorted<detail::ModpRing>(std::move(p)));
    }
  std::vector<MultiPoly<Fp>::Term> terms;
  for (const auto& [r, c] : detail::bareiss(ring, std::move(dm)))
    terms.emplace_back(detail::key_of_chart_rank(r, chart), Fp(static_cast<std::int64_t>(c), f.p));
  return MultiPoly<Fp>::from_terms(std::move(terms));
}

inline MultiPoly<Rational> bareiss_determinant(const ChartMatrix<Rational>& m, int chart, const Field& = Field::rationals()) {
  const detail::IntegerRing ring;
  mpq_class scale = 1;
  std::vector<std::vector<detail::ChartPoly<detail::IntegerRing>>> dm(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    mpz_class lcm = 1;
    for (const auto& entry : m[i])
      for (const auto& t : entry.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.second.raw().get_den_mpz_t());
    scale *= lcm;
    for (const auto& entry : m[i]) {
      detail::ChartPoly<detail::IntegerRing> p;
      for (const auto& [key, c] : entry.terms())
        p.emplace_back(detail::chart_rank_of(key, chart), mpz_class(c.raw().get_num() * (lcm / c.raw().get_den())));
      dm[i].push_back(detail::sorted<detail::IntegerRing>(std::move(p)));
    }
  }
  std::vector<MultiPoly<Rational>::Term> terms;
  for (const auto& [r, c] : detail::bareiss(ring, std::move(dm)))
    terms.emplace_back(detail::key_of_chart_rank(r, chart), Rational(mpq_class(c) / scale));
  return MultiPoly<Rational>::from_terms(std::move(terms));
}

/// Point of the principal lattice as field values.
template <typename S>
using ChartPoint = std::array<S, kChartVars>;

namespace detail {

/// Signed Stirling numbers of the first kind: x(x-1)...(x-m+1) = sum_k s[m][k] x^k.
inline std::vector<std::vector<long>> falling_factorial_coefficients(int max_m) {
  std::vector<std::vector<long>> s(max_m + 1, std::vector<long>(max_m + 1, 0));
  s[0][0] = 1;
  for (int m = 1; m <= max_m; ++m)
    for (int k = 1; k <= m; ++k) s[m][k] = s[m - 1][k - 1] - (m - 1) * s[m - 1][k];
  return s;
}

}  // namespace detail

/// Interpolates a polynomial of degree <= `degree` in the chart variables from
/// its values on {a in N^5 : |a| <= degree}, evaluated through `eval` at the
/// points x = a (as field elements).  Requires char 0 or char > degree.
template <typename S>
MultiPoly<S> interpolate_on_chart(const std::function<S(const ChartPoint<S>&)>& eval, int degree, int chart,
                                  const Field& f) {
  if (f.is_prime() && f.p <= static_cast<std::uint32_t>(degree))
    throw ContractViolation("interpolation nodes 0.." + std::to_string(degree) + " are not distinct in " + f.name());
  const auto& cm = detail::chart_monomials();
  const auto count = static_cast<std::size_t>(cm.count_upto[degree]);
  std::vector<S> c(count);
  for (std::size_t r = 0; r < count; ++r) {
    ChartPoint<S> x;
    for (int i = 0; i < kChartVars; ++i) x[i] = scalar<S>(cm.exps[r][i], f);
    c[r] = eval(x);
  }
  // 1-D divided differences along every line of the lower set, one variable at a time.
  for (int var = 0; var < kChartVars; ++var) {
    for (std::size_t r = 0; r < count; ++r) {
      if (cm.exps[r][var] != 0) continue;  // r is the base point of a line
      std::array<int, kChartVars> e{};
      int others = 0;
      for (int i = 0; i < kChartVars; ++i) {
        e[i] = cm.exps[r][i];
        others += e[i];
      }
      const int length = degree - others;
      std::vector<std::size_t> line;
      for (int t = 0; t <= length; ++t) {
        e[var] = t;
        line.push_back(static_cast<std::size_t>(cm.rank[detail::ChartMonomials::pack(e)]));
      }
      for (int j = 1; j <= length; ++j) {
        const S inv = scalar<S>(j, f).inverse();
        for (int m = length; m >= j; --m) c[line[m]] = (c[line[m]] - c[line[m - 1]]) * inv;
      }
    }
  }
  // Newton basis prod_i x_i(x_i-1)...(x_i-a_i+1) back to monomials.
  const auto stirling = detail::falling_factorial_coefficients(degree);
  std::vector<S> mono(count, scalar<S>(0, f));
  for (std::size_t r = 0; r < count; ++r) {
    if (c[r] == S(0)) continue;
    const auto a = cm.exps[r];
    std::array<int, kChartVars> k{};
    while (true) {
      long coef = 1;
      for (int i = 0; i < kChartVars; ++i) coef *= stirling[a[i]][k[i]];
      if (coef != 0) mono[static_cast<std::size_t>(cm.rank[detail::ChartMonomials::pack(k)])] += c[r] * scalar<S>(coef, f);
      int i = 0;
      while (i < kChartVars && ++k[i] > a[i]) k[i++] = 0;
      if (i == kChartVars) break;
    }
  }
  std::vector<typename MultiPoly<S>::Term> terms;
  for (std::size_t r = 0; r < count; ++r)
    if (!(mono[r] == S(0))) terms.emplace_back(detail::key_of_chart_rank(static_cast<std::uint32_t>(r), chart), mono[r]);
  return MultiPoly<S>::from_terms(std::move(terms));
}

/// Chart point (x_k, k != chart) lifted to W with x_chart = 1.
template <typename S>
Vec6<S> lift_chart_point(const ChartPoint<S>& x, int chart, const Field& f) {
  Vec6<S> v;
  const auto vars = chart_variables(chart);
  v(chart) = scalar<S>(1, f);
  for (int i = 0; i < kChartVars; ++i) v(vars[i]) = x[i];
  return v;
}

/// Visits every point of the principal lattice of the given degree.
template <typename S>
void for_each_lattice_point(int degree, const Field& f, const std::function<void(const ChartPoint<S>&)>& visit) {
  const auto& cm = detail::chart_monomials();
  for (int r = 0; r < cm.count_upto[degree]; ++r) {
    ChartPoint<S> x;
    for (int i = 0; i < kChartVars; ++i) x[i] = scalar<S>(cm.exps[r][i], f);
    visit(x);
  }
}

}  // namespace epwforge
