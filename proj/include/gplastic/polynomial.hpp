#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gplastic/numberfield.hpp"

namespace gplastic {

/// Maximum number of chart coordinates. Exponent vectors are packed one byte
/// per coordinate into a 64-bit key.
inline constexpr std::size_t kMaxArity = 8;
inline constexpr unsigned kMaxExponent = 255;

/// Packed exponent vector. Coordinate 0 occupies the most significant byte,
/// so integer order on keys is lexicographic order with x1 > x2 > ...
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial from_exponents(std::span<const unsigned> exps);
  static Monomial variable(std::size_t index);

  unsigned exponent(std::size_t index) const {
    return static_cast<unsigned>((key_ >> shift(index)) & 0xFFU);
  }
  unsigned total_degree() const;
  bool is_one() const { return key_ == 0; }
  bool divides(Monomial other) const;

  /// Product; throws Error if some exponent exceeds kMaxExponent.
  Monomial operator*(Monomial other) const;
  /// Quotient; requires divides().
  Monomial operator/(Monomial other) const { return Monomial(key_ - other.key_); }
  Monomial lowered(std::size_t index) const { return Monomial(key_ - (std::uint64_t{1} << shift(index))); }

  std::uint64_t key() const { return key_; }
  friend bool operator==(Monomial a, Monomial b) { return a.key_ == b.key_; }
  friend bool operator<(Monomial a, Monomial b) { return a.key_ < b.key_; }

 private:
  explicit constexpr Monomial(std::uint64_t key) : key_(key) {}
  static constexpr unsigned shift(std::size_t index) {
    return static_cast<unsigned>(8 * (kMaxArity - 1 - index));
  }
  std::uint64_t key_ = 0;
};

/// Sparse multivariate polynomial over Q(rho) in `arity` chart coordinates.
/// Terms are kept sorted by monomial with no zero coefficients.
class Polynomial {
 public:
  using Term = std::pair<Monomial, FieldElem>;

  explicit Polynomial(std::size_t arity = 0);
  static Polynomial constant(std::size_t arity, const FieldElem& c);
  /// The coordinate function x_{index+1}.
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial term(std::size_t arity, Monomial m, const FieldElem& c);

  /// Parses `coef * x1^a * x2^b + ...`; coordinate names default to x1..xn.
  static Polynomial parse(std::string_view text, std::size_t arity,
                          std::span<const std::string> names = {});

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  FieldElem constant_value() const;
  unsigned total_degree() const;
  /// Term with the lexicographically largest monomial; requires !is_zero().
  const Term& leading_term() const { return terms_.back(); }

  Polynomial partial(std::size_t index) const;
  FieldElem evaluate(std::span<const FieldElem> point) const;
  Polynomial pow(unsigned exponent) const;

  /// Returns q with *this == q * divisor, or nullopt if no such polynomial exists.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  std::string str(std::span<const std::string> names = {}) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const FieldElem& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const FieldElem& c) { return a *= c; }
  friend Polynomial operator*(const FieldElem& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_arity(const Polynomial& o) const;
  Polynomial& merge(const Polynomial& o, bool subtract);

  std::size_t arity_;
  std::vector<Term> terms_;
};

/// Default coordinate names x1..xn.
std::vector<std::string> default_coordinate_names(std::size_t arity);

}  // namespace gplastic
