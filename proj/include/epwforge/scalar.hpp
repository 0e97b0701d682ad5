#pragma once

// Exact scalar fields: arbitrary-precision rationals and prime fields F_p.
//
// Both types are plain value types with exact equality and are usable as
// Eigen scalars.  Fp carries its modulus; an Fp with modulus 0 is an
// unbound integer literal (what Eigen produces for Scalar(0) / Scalar(1))
// and binds to the modulus of the first bound operand it meets.

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <type_traits>
#include <utility>

#include <gmpxx.h>
#include <Eigen/Core>

#include "epwforge/errors.hpp"

namespace epwforge {

class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw ContractViolation("rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  explicit Rational(const mpz_class& z) : q_(z) {}

  /// Parses "n", "-n" or "n/d".
  static Rational parse(const std::string& text);

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational inverse() const {
    if (is_zero()) throw ContractViolation("inverse of zero rational");
    return Rational(mpq_class(1) / q_);
  }

  std::string str() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ContractViolation("division by zero rational");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw ParseError("malformed rational '" + text + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(q);
}

class Fp {
 public:
  Fp() = default;
  Fp(long n) : v_(n), p_(0) {}  // NOLINT(google-explicit-constructor)
  Fp(std::int64_t n, std::uint32_t p) : p_(p) {
    if (p < 2) throw ContractViolation("prime field modulus must be >= 2");
    v_ = n % static_cast<std::int64_t>(p);
    if (v_ < 0) v_ += p;
  }

  std::uint32_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }
  /// Canonical representative in [0, p); literal value if unbound.
  std::int64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp bind(std::uint32_t p) const { return p_ == p ? *this : Fp(v_, p); }

  Fp inverse() const {
    if (!bound()) {
      if (v_ == 1 || v_ == -1) return *this;
      throw ContractViolation("inverse of an unbound F_p literal");
    }
    if (v_ == 0) throw ContractViolation("inverse of zero in F_p");
    std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
    while (m != 0) {
      std::int64_t q = a / m;
      std::tie(a, m) = std::pair(m, a - q * m);
      std::tie(x0, x1) = std::pair(x1, x0 - q * x1);
    }
    return Fp(x0, p_);
  }

  std::string str() const { return std::to_string(v_); }

  Fp& operator+=(const Fp& o) { combine(o, [](std::int64_t a, std::int64_t b) { return a + b; }); return *this; }
  Fp& operator-=(const Fp& o) { combine(o, [](std::int64_t a, std::int64_t b) { return a - b; }); return *this; }
  Fp& operator*=(const Fp& o) { combine(o, [](std::int64_t a, std::int64_t b) { return a * b; }); return *this; }
  Fp& operator/=(const Fp& o) { return *this *= o.bind(p_ ? p_ : o.p_).inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return a.p_ ? Fp(a.p_ - a.v_, a.p_) : Fp(-a.v_); }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ == b.p_ || (a.p_ && b.p_)) return a.v_ == b.v_;
    return a.p_ ? a.v_ == b.bind(a.p_).v_ : a.bind(b.p_).v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

 private:
  template <typename Op>
  void combine(const Fp& o, Op op) {
    if (p_ && o.p_ && p_ != o.p_) throw FieldMismatch("mixing F_" + std::to_string(p_) + " and F_" + std::to_string(o.p_));
    const std::uint32_t p = p_ ? p_ : o.p_;
    if (p == 0) {
      v_ = op(v_, o.v_);
      return;
    }
    const std::int64_t a = p_ ? v_ : Fp(v_, p).v_;
    const std::int64_t b = o.p_ ? o.v_ : Fp(o.v_, p).v_;
    std::int64_t r = op(a, b) % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = r;
    p_ = p;
  }

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Runtime descriptor of the coefficient field.
struct Field {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Rational;
  std::uint32_t p = 0;

  static Field rationals() { return {}; }
  static Field prime(std::uint32_t p);
  /// Parses "q", "Q", "f7", "F7".
  static Field parse(const std::string& text);

  bool is_prime() const { return kind == Kind::Prime; }
  bool symplectic_ok() const { return !is_prime() || p != 2; }
  std::string name() const { return is_prime() ? "F" + std::to_string(p) : "Q"; }
  friend bool operator==(const Field&, const Field&) = default;
};

inline bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Field Field::prime(std::uint32_t p) {
  if (!is_prime_number(p) || p >= (1u << 31))
    throw ContractViolation("F_p requires a prime p < 2^31, got " + std::to_string(p));
  return {Kind::Prime, p};
}

inline Field Field::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.size() > 1 && (text[0] == 'f' || text[0] == 'F')) {
    try {
      std::size_t used = 0;
      const unsigned long p = std::stoul(text.substr(1), &used);
      if (used + 1 == text.size()) return prime(static_cast<std::uint32_t>(p));
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError("unknown field '" + text + "' (expected q or f<p>)");
}

/// Per-scalar-type glue used by the generic algorithms.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_int(long n, const Field&) { return Rational(n); }
  static bool accepts(const Field& f) { return !f.is_prime(); }
  /// Small signed integers keep rational data readable and fast.
  static Rational random(std::mt19937_64& rng, const Field&, long spread = 3) {
    const auto span = static_cast<std::uint64_t>(2 * spread + 1);
    return Rational(static_cast<long>(rng() % span) - spread);
  }
};

template <>
struct ScalarTraits<Fp> {
  static Fp from_int(long n, const Field& f) { return Fp(n, f.p); }
  static bool accepts(const Field& f) { return f.is_prime(); }
  static Fp random(std::mt19937_64& rng, const Field& f, long = 0) {
    return Fp(static_cast<std::int64_t>(rng() % f.p), f.p);
  }
};

template <typename S>
S scalar(long n, const Field& f) {
  return ScalarTraits<S>::from_int(n, f);
}

template <typename S>
S random_scalar(std::mt19937_64& rng, const Field& f) {
  return ScalarTraits<S>::random(rng, f);
}

/// Field of exact data: Q for rationals, the modulus of the first bound entry for F_p.
template <typename Derived>
Field infer_field(const Eigen::DenseBase<Derived>& data) {
  using S = typename Derived::Scalar;
  if constexpr (std::is_same_v<S, Rational>) {
    return Field::rationals();
  } else {
    for (Eigen::Index i = 0; i < data.rows(); ++i)
      for (Eigen::Index j = 0; j < data.cols(); ++j)
        if (data(i, j).bound()) return Field{Field::Kind::Prime, data(i, j).modulus()};
    throw ContractViolation("cannot infer the prime field of unbound data");
  }
}

template <typename S>
void require_field(const Field& f) {
  if (!ScalarTraits<S>::accepts(f)) throw FieldMismatch("scalar type does not match field " + f.name());
}

}  // namespace epwforge

namespace Eigen {

template <>
struct NumTraits<epwforge::Rational> : GenericNumTraits<epwforge::Rational> {
  using Real = epwforge::Rational;
  using NonInteger = epwforge::Rational;
  using Nested = epwforge::Rational;
  using Literal = epwforge::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<epwforge::Fp> : GenericNumTraits<epwforge::Fp> {
  using Real = epwforge::Fp;
  using NonInteger = epwforge::Fp;
  using Nested = epwforge::Fp;
  using Literal = epwforge::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
