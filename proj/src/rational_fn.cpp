#include "gplastic/rational_fn.hpp"

#include "gplastic/detail/expr_parser.hpp"
#include "gplastic/error.hpp"

namespace gplastic {

RationalFn::RationalFn(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(num_.arity(), 1)) {}

RationalFn::RationalFn(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.arity() != den_.arity()) throw ArityMismatch("numerator and denominator arity differ");
  normalize();
}

void RationalFn::normalize() {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  const std::size_t n = num_.arity();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(n, 1);
    return;
  }
  if (den_.is_constant()) {
    FieldElem c = den_.constant_value();
    if (!c.is_one()) num_ *= c.inverse();
    den_ = Polynomial::constant(n, 1);
    return;
  }
  if (auto q = num_.divide_exact(den_)) {
    num_ = std::move(*q);
    den_ = Polynomial::constant(n, 1);
    return;
  }
  const FieldElem& lc = den_.leading_term().second;
  if (!lc.is_one()) {
    FieldElem inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

FieldElem RationalFn::constant_value() const {
  if (!is_constant()) throw Error("rational function is not constant");
  return num_.constant_value() / den_.constant_value();
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("rational function arity mismatch");
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  if (a.den_ == b.den_) {
    if (a.is_polynomial()) return RationalFn(a.num_ + b.num_);
    return RationalFn(a.num_ + b.num_, a.den_);
  }
  if (b.is_polynomial()) return RationalFn(a.num_ + b.num_ * a.den_, a.den_);
  if (a.is_polynomial()) return RationalFn(a.num_ * b.den_ + b.num_, b.den_);
  if (auto q = a.den_.divide_exact(b.den_)) return RationalFn(a.num_ + b.num_ * *q, a.den_);
  if (auto q = b.den_.divide_exact(a.den_)) return RationalFn(a.num_ * *q + b.num_, b.den_);
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("rational function arity mismatch");
  if (a.is_zero() || b.is_zero()) return RationalFn(a.arity());
  if (a.is_polynomial() && b.is_polynomial()) return RationalFn(a.num_ * b.num_);
  Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_constant()) {
    if (auto q = an.divide_exact(bd)) {
      an = std::move(*q);
      bd = Polynomial::constant(a.arity(), 1);
    }
  }
  if (!ad.is_constant()) {
    if (auto q = bn.divide_exact(ad)) {
      bn = std::move(*q);
      ad = Polynomial::constant(a.arity(), 1);
    }
  }
  return RationalFn(an * bn, ad * bd);
}

RationalFn operator*(const RationalFn& a, const FieldElem& c) {
  if (c.is_zero()) return RationalFn(a.arity());
  RationalFn r = a;
  r.num_ *= c;
  return r;
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("rational function arity mismatch");
  if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
  return a * RationalFn(b.den_, b.num_);
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  if (a.arity() != b.arity()) return false;
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return (a.num_ * b.den_) == (b.num_ * a.den_);
}

RationalFn RationalFn::partial(std::size_t index) const {
  if (is_polynomial()) return RationalFn(num_.partial(index));
  Polynomial dn = num_.partial(index);
  Polynomial dd = den_.partial(index);
  if (dd.is_zero()) return RationalFn(dn, den_);
  return RationalFn(dn * den_ - num_ * dd, den_ * den_);
}

FieldElem RationalFn::evaluate(std::span<const FieldElem> point) const {
  FieldElem d = den_.evaluate(point);
  if (d.is_zero()) throw PoleError("denominator vanishes at evaluation point");
  return num_.evaluate(point) * d.inverse();
}

std::string RationalFn::str(std::span<const std::string> names) const {
  if (is_polynomial()) return num_.str(names);
  return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
}

namespace {

struct RfPolicy {
  using Value = RationalFn;
  std::size_t arity;
  std::span<const std::string> names;

  Value integer(const std::string& digits) const {
    return RationalFn::constant(arity, FieldElem(Rational::parse(digits)));
  }
  Value identifier(std::string_view name, std::size_t column) const {
    if (name == "rho") return RationalFn::constant(arity, FieldElem::rho());
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return RationalFn::variable(arity, i);
    throw ParseError("unknown identifier '" + std::string(name) + "'", column);
  }
  Value divide(const Value& a, const Value& b, std::size_t column) const {
    if (b.is_zero()) throw ParseError("division by zero", column);
    return a / b;
  }
  Value power(const Value& a, unsigned e) const {
    return RationalFn(a.num().pow(e), a.den().pow(e));
  }
};

}  // namespace

RationalFn RationalFn::parse(std::string_view text, std::size_t arity, std::span<const std::string> names) {
  std::vector<std::string> fallback;
  if (names.empty()) {
    fallback = default_coordinate_names(arity);
    names = fallback;
  }
  if (names.size() != arity) throw ArityMismatch("coordinate name count does not match arity");
  return detail::ExprParser<RfPolicy>(text, RfPolicy{arity, names}).parse();
}

}  // namespace gplastic
