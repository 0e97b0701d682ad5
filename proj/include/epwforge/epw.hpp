#pragma once

// EPW sextics.  For a Lagrangian A and v in W, k(v) = dim(A cap F_v).  On the
// chart x_c = 1 the map F_v -> wedge^3 W / A is the 10x10 matrix
//   M(r, ij) = sigma(a_r, v ^ e_i ^ e_j),   i < j, i, j != c,
// (wedge^3 W / A is identified with A* through sigma), so det M vanishes exactly
// where k(v) >= 1.  Homogenized, det M has degree 10 and is divisible by x_c^4;
// the quotient is the sextic s_A.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epwforge/determinant.hpp"
#include "epwforge/errors.hpp"
#include "epwforge/exterior.hpp"
#include "epwforge/lagrangian.hpp"
#include "epwforge/linalg.hpp"
#include "epwforge/orbits.hpp"
#include "epwforge/polynomial.hpp"
#include "epwforge/projective.hpp"

namespace epwforge {

template <typename S>
struct EPWSextic {
  MultiPoly<S> poly;
  Field field;
  std::vector<int> charts;  // 1-based charts whose determinant produced the polynomial
  std::string method;
  bool dual_variables = false;
  std::string lagrangian_sha;
};

enum class SexticMethod { Auto, Bareiss, Interpolation };

struct StratumReport {
  Field field;
  std::uint64_t points = 0;
  std::map<int, std::uint64_t> counts;  // k -> number of points with dim(A cap F_v) = k

  /// |{v : k(v) >= k}|
  std::uint64_t at_least(int k) const {
    std::uint64_t n = 0;
    for (const auto& [rank, c] : counts)
      if (rank >= k) n += c;
    return n;
  }
};

/// k(v) = dim(A cap F_v), via the rank of the stacked bases.
template <typename S>
int epw_rank_at(const Lagrangian<S>& a, const Vec6<S>& v) {
  const Subspace<S> fv = fiber_F(v);
  const int k = intersection_dim(a.space(), fv);
#ifndef NDEBUG
  if (k > 0 && !is_isotropic(intersect(a.space(), fv, a.field())))
    throw InternalInconsistency("A cap F_v is not isotropic");
#endif
  return k;
}

/// Column pairs (i, j), i < j, both != chart, in lexicographic order (0-based).
inline std::vector<std::pair<int, int>> chart_columns(int chart) {
  std::vector<std::pair<int, int>> cols;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j)
      if (i != chart && j != chart) cols.emplace_back(i, j);
  return cols;
}

/// sigma(a, e_k ^ e_i ^ e_j) read off from a's coefficients.
template <typename S>
S sigma_with_blade(const KVector<S>& a, int k, int i, int j) {
  const auto mk = static_cast<std::uint8_t>(1u << k), mij = static_cast<std::uint8_t>((1u << i) | (1u << j));
  const int s1 = merge_sign(mk, mij);
  if (s1 == 0) return S(0);
  const std::uint8_t m = mk | mij;
  const std::uint8_t comp = full_mask() & ~m;
  // sigma(a, e_m) = a_{comp} * sgn(comp, m)
  const int s = s1 * merge_sign(comp, m);
  const S& c = a.at(comp);
  return s > 0 ? c : S(-c);
}

/// The 10x10 matrix on chart `chart` (0-based) with affine-linear entries in x_k, k != chart.
template <typename S>
ChartMatrix<S> epw_matrix(const Lagrangian<S>& a, int chart) {
  if (chart < 0 || chart >= kDim) throw ContractViolation("chart out of range");
  const auto cols = chart_columns(chart);
  ChartMatrix<S> m(kLagrangianDim);
  for (int r = 0; r < kLagrangianDim; ++r) {
    const KVector<S> ar = a.vector(r);
    for (const auto& [i, j] : cols) {
      MultiPoly<S> entry = MultiPoly<S>::constant(sigma_with_blade(ar, chart, i, j));
      for (int k = 0; k < kDim; ++k)
        if (k != chart) entry += MultiPoly<S>::variable(k, sigma_with_blade(ar, k, i, j));
      m[r].push_back(std::move(entry));
    }
  }
  return m;
}

/// The same matrix evaluated at a point v of W (columns v ^ e_ij).
template <typename S>
MatX<S> epw_matrix_at(const Lagrangian<S>& a, int chart, const Vec6<S>& v) {
  const auto cols = chart_columns(chart);
  MatX<S> m(kLagrangianDim, kLagrangianDim);
  for (int r = 0; r < kLagrangianDim; ++r) {
    const KVector<S> ar = a.vector(r);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      S acc(0);
      for (int k = 0; k < kDim; ++k)
        if (!(v(k) == S(0))) acc += v(k) * sigma_with_blade(ar, k, cols[c].first, cols[c].second);
      m(r, static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return m;
}

/// Determinant of a square matrix over a field by Gaussian elimination.
template <typename S>
S determinant(MatX<S> m) {
  const Eigen::Index n = m.rows();
  S det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index sel = k;
    while (sel < n && m(sel, k) == S(0)) ++sel;
    if (sel == n) return S(0);
    if (sel != k) {
      m.row(sel).swap(m.row(k));
      det = -det;
    }
    det *= m(k, k);
    const S inv = m(k, k).inverse();
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (m(i, k) == S(0)) continue;
      const S f = m(i, k) * inv;
      for (Eigen::Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

namespace detail {

template <typename S>
std::optional<MultiPoly<S>> quotient_from_chart_determinant(const MultiPoly<S>& det, int chart) {
  if (det.is_zero()) return std::nullopt;
  if (det.degree() > 2 * kDim - 2) throw DivisionFailure("chart determinant has degree above 10");
  const MultiPoly<S> s = det.homogenize(chart, 10).divide_by_variable_power(chart, 4);
  if (!s.is_homogeneous(6) || s.is_zero()) throw InternalInconsistency("EPW quotient is not a nonzero sextic form");
  return normalize(s);
}

template <typename S>
std::optional<MultiPoly<S>> sextic_by_interpolation(const Lagrangian<S>& a, int chart) {
  const Field& f = a.field();
  const auto eval = [&](const ChartPoint<S>& x) { return determinant(epw_matrix_at(a, chart, lift_chart_point(x, chart, f))); };
  const MultiPoly<S> affine = interpolate_on_chart<S>(eval, 6, chart, f);
  // The chart determinant has degree <= 10; agreement on the degree-10 lattice
  // (3003 points, unisolvent for degree 10) proves it equals the interpolant.
  bool vanishes = true;
  for_each_lattice_point<S>(10, f, [&](const ChartPoint<S>& x) {
    const S d = eval(x);
    vanishes = vanishes && d == S(0);
    if (!(d == affine.evaluate(lift_chart_point(x, chart, f))))
      throw DivisionFailure("chart determinant has degree above 6 on the affine chart");
  });
  if (vanishes) return std::nullopt;
  return detail::quotient_from_chart_determinant(affine.homogenize(chart, 10), chart);
}

}  // namespace detail

template <typename S>
SexticMethod resolve_method(SexticMethod m, const Field&) {
  if (m != SexticMethod::Auto) return m;
  return SexticMethod::Bareiss;
}

inline std::string method_name(SexticMethod m) {
  switch (m) {
    case SexticMethod::Bareiss: return "bareiss";
    case SexticMethod::Interpolation: return "interpolation";
    case SexticMethod::Auto: return "auto";
  }
  return "?";
}

/// Normalized s_A from one chart (0-based), or nullopt if that chart determinant vanishes identically.
template <typename S>
std::optional<MultiPoly<S>> sextic_on_chart(const Lagrangian<S>& a, int chart, SexticMethod method = SexticMethod::Auto) {
  method = resolve_method<S>(method, a.field());
  if (method == SexticMethod::Interpolation) return detail::sextic_by_interpolation(a, chart);
  return detail::quotient_from_chart_determinant(bareiss_determinant(epw_matrix(a, chart), chart, a.field()), chart);
}

/// s_A, trying the preferred chart first and then the others; DegenerateSextic when
/// all six chart determinants vanish identically.
template <typename S>
EPWSextic<S> epw_sextic(const Lagrangian<S>& a, int preferred_chart = 0, SexticMethod method = SexticMethod::Auto) {
  std::vector<int> order{preferred_chart};
  for (int c = 0; c < kDim; ++c)
    if (c != preferred_chart) order.push_back(c);
  for (int c : order) {
    if (auto s = sextic_on_chart(a, c, method))
      return {std::move(*s), a.field(), {c + 1}, method_name(resolve_method<S>(method, a.field())), a.dual_side(), ""};
  }
  throw DegenerateSextic("determinant vanishes identically on all six charts (every F_v meets A)");
}

/// Gradient of s at v, projectively normalized; SingularPoint if it vanishes.
template <typename S>
Vec6<S> gradient_point(const MultiPoly<S>& s, const Vec6<S>& v) {
  Vec6<S> g;
  for (int i = 0; i < kDim; ++i) g(i) = s.partial(i).evaluate(v);
  if (all_zero(g)) throw SingularPoint("gradient vanishes at the point");
  return normalize_projective(g);
}

template <typename S>
EPWSextic<S> dual_sextic(const Lagrangian<S>& a, int preferred_chart = 0, SexticMethod method = SexticMethod::Auto) {
  return epw_sextic(dual_transport(a), preferred_chart, method);
}

template <typename S>
Vec6<S> point_from_ints(const std::vector<std::uint32_t>& x, const Field& f) {
  Vec6<S> v;
  for (int i = 0; i < kDim; ++i) v(i) = scalar<S>(static_cast<long>(x[i]), f);
  return v;
}

/// Exhaustive comparison over P^5(F_p): s(v) = 0 iff k(v) >= 1 at every point.
/// Throws CensusMismatch with the first offending point.
inline StratumReport sextic_vanishing_census(const Lagrangian<Fp>& a, const MultiPoly<Fp>& s) {
  const Field& f = a.field();
  if (!f.is_prime() || f.p > 7) throw ContractViolation("exhaustive census needs F_p with p <= 7");
  const std::uint64_t total = projective_count(kDim, f.p);
  const auto ranks = parallel_collect<int>(total, [&](std::uint64_t lo, std::uint64_t hi, std::vector<int>& out) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      const Vec6<Fp> v = point_from_ints<Fp>(projective_point(i, kDim, f.p), f);
      const int k = epw_rank_at(a, v);
      const bool on_sextic = s.evaluate(v) == Fp(0);
      if (on_sextic != (k >= 1)) {
        std::string pt;
        for (int j = 0; j < kDim; ++j) pt += (j ? "," : "") + v(j).str();
        throw CensusMismatch("s_A(v) " + std::string(on_sextic ? "=" : "!=") + " 0 but dim(A cap F_v) = " +
                             std::to_string(k) + " at v = (" + pt + ")");
      }
      out.push_back(k);
    }
  });
  StratumReport report{f, total, {}};
  for (int k : ranks) ++report.counts[k];
  return report;
}

/// Rank census over P^5(F_p) without a sextic.
inline StratumReport rank_census(const Lagrangian<Fp>& a) {
  const Field& f = a.field();
  if (!f.is_prime() || f.p > 7) throw ContractViolation("exhaustive census needs F_p with p <= 7");
  const std::uint64_t total = projective_count(kDim, f.p);
  const auto ranks = parallel_collect<int>(total, [&](std::uint64_t lo, std::uint64_t hi, std::vector<int>& out) {
    for (std::uint64_t i = lo; i < hi; ++i) out.push_back(epw_rank_at(a, point_from_ints<Fp>(projective_point(i, kDim, f.p), f)));
  });
  StratumReport report{f, total, {}};
  for (int k : ranks) ++report.counts[k];
  return report;
}

namespace detail {

/// Plucker-relation screen for trivectors with coordinates in [0, p): for every
/// e_a* ^ e_b*, u = iota(omega) must satisfy u ^ omega = 0.  Necessary and
/// sufficient for decomposability of a nonzero trivector.
class PluckerScreen {
 public:
  PluckerScreen() {
    const Field q = Field::rationals();
    for (int a = 0; a < kDim; ++a)
      for (int b = a + 1; b < kDim; ++b) {
        Contraction c;
        for (int k = 0; k < kDim; ++k) {
          if (k == a || k == b) continue;
          const auto blade = KVector<Rational>::blade(static_cast<std::uint8_t>((1u << a) | (1u << b) | (1u << k)), q);
          const KVector<Rational> u =
              contract(dual_basis<Rational>(b + 1, q), contract(dual_basis<Rational>(a + 1, q), blade));
          c.terms.push_back({k, slot_of_mask(static_cast<std::uint8_t>((1u << a) | (1u << b) | (1u << k))),
                             u.at(static_cast<std::uint8_t>(1u << k)).sign()});
        }
        contractions_.push_back(c);
      }
    for (int s = 0; s < binomial6(4); ++s) {
      const std::uint8_t q4 = mask_of_slot(4, s);
      std::vector<WedgeTerm> terms;
      for (int k = 0; k < kDim; ++k) {
        const auto bit = static_cast<std::uint8_t>(1u << k);
        if (!(q4 & bit)) continue;
        const auto rest = static_cast<std::uint8_t>(q4 & ~bit);
        terms.push_back({k, slot_of_mask(rest), merge_sign(bit, rest)});
      }
      wedges_.push_back(std::move(terms));
    }
  }

  bool decomposable(const std::array<std::int64_t, 20>& w, std::int64_t p) const {
    for (const auto& c : contractions_) {
      std::array<std::int64_t, kDim> u{};
      bool any = false;
      for (const auto& t : c.terms) {
        u[t.k] = t.sign * w[t.slot];
        any = any || u[t.k] % p != 0;
      }
      if (!any) continue;
      for (const auto& terms : wedges_) {
        std::int64_t acc = 0;
        for (const auto& t : terms) acc += t.sign * u[t.k] * w[t.rest_slot];
        if (acc % p != 0) return false;
      }
    }
    return true;
  }

 private:
  struct Term {
    int k, slot, sign;
  };
  struct Contraction {
    std::vector<Term> terms;
  };
  struct WedgeTerm {
    int k, rest_slot, sign;
  };
  std::vector<Contraction> contractions_;
  std::vector<std::vector<WedgeTerm>> wedges_;
};

}  // namespace detail

/// Theta_A: every decomposable point of P(A) over F_p (p <= 5), as its 3-space.
inline std::vector<Subspace<Fp>> theta_enumerate(const Lagrangian<Fp>& a) {
  const Field& f = a.field();
  if (!f.is_prime()) throw ContractViolation("theta_enumerate needs a finite field; use theta_contains over Q");
  if (f.p > 5) throw ContractViolation("theta_enumerate is limited to p <= 5");
  static const detail::PluckerScreen screen;
  const auto p = static_cast<std::int64_t>(f.p);
  std::array<std::array<std::int64_t, 20>, kLagrangianDim> rows{};
  for (int r = 0; r < kLagrangianDim; ++r)
    for (int s = 0; s < 20; ++s) rows[r][s] = a.space().basis()(r, s).bind(f.p).value();

  std::vector<Subspace<Fp>> found;
  const auto record = [&](const std::array<std::int64_t, 20>& w) {
    VecX<Fp> c(20);
    for (int s = 0; s < 20; ++s) c(s) = Fp(w[s], f.p);
    const KVector<Fp> omega(3, c);
    const Subspace<Fp> k = divisor_kernel(omega);
    if (k.dim() == 3) found.push_back(k);
  };
  for (int lead = 0; lead < kLagrangianDim; ++lead) {
    std::array<std::int64_t, 20> w = rows[lead];
    std::array<std::int64_t, kLagrangianDim> digit{};
    while (true) {
      if (screen.decomposable(w, p)) record(w);
      int i = lead + 1;
      for (; i < kLagrangianDim; ++i) {
        for (int s = 0; s < 20; ++s) w[s] = (w[s] + rows[i][s]) % p;
        if (++digit[i] < p) break;
        digit[i] = 0;
      }
      if (i == kLagrangianDim) break;
    }
  }
  return found;
}

template <typename S>
bool theta_contains(const Lagrangian<S>& a, const Subspace<S>& u) {
  return a.contains(plucker(u));
}

/// C_{U,A}: points v of P(U)(F_p) with dim(A cap F_v) >= 2.
inline std::vector<Vec6<Fp>> c_UA_points(const Lagrangian<Fp>& a, const Subspace<Fp>& u) {
  if (!theta_contains(a, u)) throw ContractViolation("plane is not in Theta_A (e_U is not in A)");
  const Field& f = a.field();
  std::vector<Vec6<Fp>> out;
  const std::uint64_t total = projective_count(3, f.p);
  for (std::uint64_t i = 0; i < total; ++i) {
    const auto t = projective_point(i, 3, f.p);
    Vec6<Fp> v = Vec6<Fp>::Constant(Fp(0));
    for (int j = 0; j < 3; ++j) v += Fp(t[j], f.p) * Vec6<Fp>(u.vector(j));
    v = normalize_projective(v);
    const int k = epw_rank_at(a, v);
    if (k < 1) throw InternalInconsistency("point of P(U) with e_U in A has k = 0");
    if (k >= 2) out.push_back(v);
  }
  return out;
}

}  // namespace epwforge
