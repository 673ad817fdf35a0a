#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "gplastic/polynomial.hpp"

namespace gplastic {

/// Quotient num/den of polynomials over Q(rho). No gcd normalization is
/// performed; equality is semantic (exact cross-multiplication). Constant
/// denominators are folded into the numerator and exact polynomial
/// cancellations are taken when cheap, which keeps most values polynomial.
class RationalFn {
 public:
  explicit RationalFn(std::size_t arity = 0) : num_(arity), den_(Polynomial::constant(arity, 1)) {}
  RationalFn(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFn(Polynomial num, Polynomial den);

  static RationalFn constant(std::size_t arity, const FieldElem& c) {
    return RationalFn(Polynomial::constant(arity, c));
  }
  static RationalFn variable(std::size_t arity, std::size_t index) {
    return RationalFn(Polynomial::variable(arity, index));
  }
  /// Parses an expression in the coordinates and rho; division by any
  /// nonzero function is allowed, so str() output round-trips.
  static RationalFn parse(std::string_view text, std::size_t arity, std::span<const std::string> names = {});

  std::size_t arity() const { return num_.arity(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Requires is_constant().
  FieldElem constant_value() const;

  RationalFn partial(std::size_t index) const;
  /// Throws PoleError when the denominator vanishes at the point.
  FieldElem evaluate(std::span<const FieldElem> point) const;

  std::string str(std::span<const std::string> names = {}) const;

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  /// Throws DivisionByZero when b is the zero function.
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const FieldElem& c);
  friend RationalFn operator*(const FieldElem& c, const RationalFn& a) { return a * c; }

  /// Semantic equality: a.num * b.den - b.num * a.den == 0.
  friend bool operator==(const RationalFn& a, const RationalFn& b);

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

inline bool rf_equal(const RationalFn& f, const RationalFn& g) { return f == g; }

}  // namespace gplastic
