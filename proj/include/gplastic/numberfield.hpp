#pragma once

// Exact arithmetic in the cubic field Q(rho) = Q[x]/(x^3 - x - 1), where rho
// is the plastic number. The dual root alpha of x^3 - x + 1 is -rho and has
// no type of its own.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gplastic {

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator and denominator). Backed by GMP.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class q);

  /// Accepts "n" or "n/d" with optional leading sign.
  static Rational parse(std::string_view text);

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }
  const mpq_class& value() const { return q_; }

  Rational inverse() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

/// Element c0 + c1*rho + c2*rho^2 of Q(rho). The basis {1, rho, rho^2} is fixed,
/// so equality is componentwise.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long value) : c_{Rational(value), Rational(), Rational()} {}  // NOLINT
  FieldElem(Rational c0) : c_{std::move(c0), Rational(), Rational()} {}   // NOLINT
  FieldElem(Rational c0, Rational c1, Rational c2)
      : c_{std::move(c0), std::move(c1), std::move(c2)} {}

  static FieldElem rho() { return FieldElem(0, 1, 0); }
  /// Real root of the dual cubic x^3 - x + 1.
  static FieldElem alpha() { return FieldElem(0, -1, 0); }

  /// Parses "n0/d0 + n1/d1*rho + n2/d2*rho^2" and any arithmetic expression
  /// in integers, rho, + - * / ^ and parentheses.
  static FieldElem parse(std::string_view text);

  const Rational& coeff(std::size_t i) const { return c_.at(i); }
  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }
  bool is_one() const { return c_[0].is_one() && c_[1].is_zero() && c_[2].is_zero(); }
  bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero(); }

  /// Multiplicative inverse; throws DivisionByZero on zero.
  FieldElem inverse() const;
  FieldElem pow(unsigned exponent) const;

  /// Real embedding c0 + c1*r + c2*r^2 with r the real root of x^3 - x - 1.
  double embed() const;

  std::string str() const;

  FieldElem operator-() const { return FieldElem(-c_[0], -c_[1], -c_[2]); }
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this * o.inverse(); }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.c_ == b.c_; }

 private:
  std::array<Rational, 3> c_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const FieldElem& a);

/// The plastic number as a double, from the Cardano radical form refined by
/// Newton iteration on x^3 - x - 1.
double plastic_number();

/// Real sign of an element under the real embedding. Exact: bisects a rational
/// bracket of rho until the value interval excludes zero.
int real_sign(const FieldElem& a);

}  // namespace gplastic
