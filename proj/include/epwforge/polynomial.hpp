#pragma once

// Sparse multivariate polynomials in x1..x6 over an exact field.
//
// Monomials are packed into a 64-bit key: the top byte holds the total degree
// and the following six bytes hold the exponents of x1..x6, x1 most
// significant.  Integer order on keys is therefore graded-lex order, and
// monomial multiplication is key addition (exponents stay below 256).

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epwforge/errors.hpp"
#include "epwforge/exterior.hpp"
#include "epwforge/scalar.hpp"

namespace epwforge {

using Exponents = std::array<int, kDim>;

namespace monomial {

inline std::uint64_t pack(const Exponents& e) {
  std::uint64_t key = 0;
  int degree = 0;
  for (int i = 0; i < kDim; ++i) {
    if (e[i] < 0 || e[i] > 255) throw ContractViolation("exponent out of range");
    degree += e[i];
    key |= static_cast<std::uint64_t>(e[i]) << (8 * (kDim - 1 - i));
  }
  if (degree > 255) throw ContractViolation("total degree out of range");
  return key | (static_cast<std::uint64_t>(degree) << 56);
}

inline Exponents unpack(std::uint64_t key) {
  Exponents e{};
  for (int i = 0; i < kDim; ++i) e[i] = static_cast<int>((key >> (8 * (kDim - 1 - i))) & 0xff);
  return e;
}

inline int degree(std::uint64_t key) { return static_cast<int>(key >> 56); }
inline int exponent(std::uint64_t key, int var) { return static_cast<int>((key >> (8 * (kDim - 1 - var))) & 0xff); }
inline std::uint64_t variable(int var, int power = 1) {
  Exponents e{};
  e[var] = power;
  return pack(e);
}

}  // namespace monomial

template <typename S>
class MultiPoly {
 public:
  using Term = std::pair<std::uint64_t, S>;

  MultiPoly() = default;

  static MultiPoly constant(const S& c) {
    MultiPoly p;
    if (!(c == S(0))) p.terms_.emplace_back(0, c);
    return p;
  }
  /// c * x_{var+1}
  static MultiPoly variable(int var, const S& c) {
    MultiPoly p;
    if (!(c == S(0))) p.terms_.emplace_back(monomial::variable(var), c);
    return p;
  }
  /// Builds from arbitrary (key, coefficient) pairs; merges duplicates and drops zeros.
  static MultiPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
    MultiPoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first)
        p.terms_.back().second += t.second;
      else
        p.terms_.push_back(std::move(t));
    }
    p.prune();
    return p;
  }

  /// Terms in descending graded-lex order (leading term first).
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, monomial::degree(t.first));
    return d;
  }
  bool is_homogeneous(int d) const {
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return monomial::degree(t.first) == d; });
  }
  const S& leading_coefficient() const {
    if (terms_.empty()) throw ContractViolation("leading coefficient of the zero polynomial");
    return terms_.front().second;
  }

  S coefficient(const Exponents& e) const {
    const std::uint64_t k = monomial::pack(e);
    for (const auto& t : terms_)
      if (t.first == k) return t.second;
    return S(0);
  }

  template <typename Derived>
  S evaluate(const Eigen::MatrixBase<Derived>& x) const {
    S acc(0);
    for (const auto& [key, c] : terms_) {
      S term = c;
      for (int i = 0; i < kDim; ++i)
        for (int e = monomial::exponent(key, i); e > 0; --e) term *= x(i);
      acc += term;
    }
    return acc;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = merge(*this, o, false); }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = merge(*this, o, true); }
  MultiPoly& operator*=(const S& s) {
    if (s == S(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= s;
    return *this;
  }
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  friend MultiPoly operator*(const S& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    std::unordered_map<std::uint64_t, S> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) acc[ka + kb] += ca * cb;
    std::vector<Term> out(acc.begin(), acc.end());
    return from_terms(std::move(out));
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }

  /// Multiplies every term of degree d by x_var^(target - d).
  MultiPoly homogenize(int var, int target) const {
    std::vector<Term> out;
    for (const auto& [key, c] : terms_) {
      const int d = monomial::degree(key);
      if (d > target) throw ContractViolation("homogenizing above the target degree");
      Exponents e = monomial::unpack(key);
      e[var] += target - d;
      out.emplace_back(monomial::pack(e), c);
    }
    return from_terms(std::move(out));
  }

  /// Exact division by x_var^power.
  MultiPoly divide_by_variable_power(int var, int power) const {
    std::vector<Term> out;
    for (const auto& [key, c] : terms_) {
      Exponents e = monomial::unpack(key);
      if (e[var] < power)
        throw DivisionFailure("x" + std::to_string(var + 1) + "^" + std::to_string(power) + " does not divide the term " +
                              format_monomial(key));
      e[var] -= power;
      out.emplace_back(monomial::pack(e), c);
    }
    return from_terms(std::move(out));
  }

  MultiPoly partial(int var) const {
    std::vector<Term> out;
    for (const auto& [key, c] : terms_) {
      Exponents e = monomial::unpack(key);
      if (e[var] == 0) continue;
      const long k = e[var];
      --e[var];
      S coef = c;
      coef *= S(k);
      out.emplace_back(monomial::pack(e), coef);
    }
    return from_terms(std::move(out));
  }

  /// Drops every term containing one of the listed variables (restriction to their vanishing).
  MultiPoly restrict_zero(std::initializer_list<int> vars) const {
    MultiPoly p;
    for (const auto& t : terms_) {
      bool keep = true;
      for (int v : vars) keep = keep && monomial::exponent(t.first, v) == 0;
      if (keep) p.terms_.push_back(t);
    }
    return p;
  }

  static std::string format_monomial(std::uint64_t key) {
    std::string s;
    const Exponents e = monomial::unpack(key);
    for (int i = 0; i < kDim; ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [key, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")";
      if (key != 0) s += "*" + format_monomial(key);
    }
    return s;
  }

 private:
  void prune() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.second == S(0); }),
                 terms_.end());
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    MultiPoly out;
    out.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].first > b.terms_[j].first)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].first > a.terms_[i].first) {
        out.terms_.emplace_back(b.terms_[j].first, subtract ? S(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        S c = subtract ? S(a.terms_[i].second - b.terms_[j].second) : S(a.terms_[i].second + b.terms_[j].second);
        if (!(c == S(0))) out.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<Term> terms_;
};

/// Canonical scaling.  Over Q: integer coprime coefficients with positive
/// leading coefficient.  Over F_p: leading coefficient 1.
inline MultiPoly<Rational> normalize(const MultiPoly<Rational>& p) {
  if (p.is_zero()) return p;
  mpz_class lcm = 1, gcd = 0;
  for (const auto& t : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.second.raw().get_den_mpz_t());
  std::vector<MultiPoly<Rational>::Term> scaled;
  for (const auto& t : p.terms()) {
    mpz_class n = t.second.raw().get_num() * (lcm / t.second.raw().get_den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), n.get_mpz_t());
    scaled.emplace_back(t.first, Rational(n));
  }
  if (p.leading_coefficient().sign() < 0) gcd = -gcd;
  for (auto& t : scaled) t.second = Rational(mpq_class(t.second.raw().get_num() / gcd));
  return MultiPoly<Rational>::from_terms(std::move(scaled));
}

inline MultiPoly<Fp> normalize(const MultiPoly<Fp>& p) {
  if (p.is_zero()) return p;
  return p.leading_coefficient().inverse() * p;
}

}  // namespace epwforge
