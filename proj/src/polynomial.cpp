#include "gplastic/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "gplastic/detail/expr_parser.hpp"
#include "gplastic/error.hpp"

namespace gplastic {

Monomial Monomial::from_exponents(std::span<const unsigned> exps) {
  if (exps.size() > kMaxArity) throw ArityMismatch("monomial arity exceeds " + std::to_string(kMaxArity));
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > kMaxExponent) throw Error("exponent exceeds " + std::to_string(kMaxExponent));
    key |= std::uint64_t{exps[i]} << shift(i);
  }
  return Monomial(key);
}

Monomial Monomial::variable(std::size_t index) {
  if (index >= kMaxArity) throw ArityMismatch("coordinate index out of range");
  return Monomial(std::uint64_t{1} << shift(index));
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxArity; ++i) d += exponent(i);
  return d;
}

bool Monomial::divides(Monomial other) const {
  for (std::size_t i = 0; i < kMaxArity; ++i)
    if (exponent(i) > other.exponent(i)) return false;
  return true;
}

Monomial Monomial::operator*(Monomial other) const {
  const std::uint64_t a = key_, b = other.key_;
  const std::uint64_t sum = a + b;
  // Carry out of bit 7 of any byte means that exponent overflowed.
  const std::uint64_t carries = (a & b) | ((a | b) & ~sum);
  if ((carries & 0x8080808080808080ULL) != 0) throw Error("monomial exponent overflow");
  return Monomial(sum);
}

Polynomial::Polynomial(std::size_t arity) : arity_(arity) {
  if (arity > kMaxArity) throw ArityMismatch("polynomial arity exceeds " + std::to_string(kMaxArity));
}

Polynomial Polynomial::constant(std::size_t arity, const FieldElem& c) {
  return term(arity, Monomial(), c);
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw ArityMismatch("coordinate index out of range");
  return term(arity, Monomial::variable(index), FieldElem(1));
}

Polynomial Polynomial::term(std::size_t arity, Monomial m, const FieldElem& c) {
  Polynomial p(arity);
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

FieldElem Polynomial::constant_value() const {
  if (terms_.empty()) return FieldElem();
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_[0].second;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

void Polynomial::check_arity(const Polynomial& o) const {
  if (arity_ != o.arity_)
    throw ArityMismatch("polynomial arity " + std::to_string(arity_) + " vs " + std::to_string(o.arity_));
}

Polynomial& Polynomial::merge(const Polynomial& o, bool subtract) {
  check_arity(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.emplace_back(b->first, subtract ? -b->second : b->second);
      ++b;
    } else {
      FieldElem c = subtract ? a->second - b->second : a->second + b->second;
      if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) { return merge(o, false); }
Polynomial& Polynomial::operator-=(const Polynomial& o) { return merge(o, true); }

Polynomial Polynomial::operator-() const {
  Polynomial r(arity_);
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
  return r;
}

Polynomial& Polynomial::operator*=(const FieldElem& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_arity(b);
  Polynomial r(a.arity_);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1 && a.terms_[0].first.is_one()) return b * a.terms_[0].second;
  if (b.terms_.size() == 1 && b.terms_[0].first.is_one()) return a * b.terms_[0].second;
  std::vector<Polynomial::Term> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) raw.emplace_back(ma * mb, ca * cb);
  std::stable_sort(raw.begin(), raw.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& t : raw) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
    } else {
      if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.arity_ == b.arity_ && a.terms_.size() == b.terms_.size() &&
         std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

Polynomial Polynomial::partial(std::size_t index) const {
  if (index >= arity_) throw ArityMismatch("partial derivative index out of range");
  Polynomial r(arity_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(index);
    if (e == 0) continue;
    r.terms_.emplace_back(m.lowered(index), c * FieldElem(static_cast<long>(e)));
  }
  // Lowering one exponent preserves the relative order of the surviving terms.
  return r;
}

FieldElem Polynomial::evaluate(std::span<const FieldElem> point) const {
  if (point.size() != arity_) throw ArityMismatch("evaluation point has wrong dimension");
  std::vector<std::vector<FieldElem>> powers(arity_);
  FieldElem acc;
  for (const auto& [m, c] : terms_) {
    FieldElem v = c;
    for (std::size_t i = 0; i < arity_; ++i) {
      unsigned e = m.exponent(i);
      if (e == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(FieldElem(1));
      while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
      v *= cache[e];
    }
    acc += v;
  }
  return acc;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(arity_, FieldElem(1));
  Polynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  check_arity(divisor);
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (divisor.is_constant()) return *this * divisor.constant_value().inverse();
  Polynomial quotient(arity_);
  Polynomial rem = *this;
  const auto& [lm, lc] = divisor.leading_term();
  const FieldElem lc_inv = lc.inverse();
  // If rem = q * divisor then LT(rem) = LT(q) * LT(divisor) in lex order, so a
  // leading monomial not divisible by LT(divisor) proves non-divisibility.
  std::size_t guard = 0;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    Polynomial step = term(arity_, rm / lm, rc * lc_inv);
    rem -= step * divisor;
    quotient += step;
    if (++guard > 100000) return std::nullopt;
  }
  return quotient;
}

std::vector<std::string> default_coordinate_names(std::size_t arity) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < arity; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string Polynomial::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::vector<std::string> fallback;
  if (names.size() < arity_) {
    fallback = default_coordinate_names(arity_);
    names = fallback;
  }
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < arity_; ++i) {
      unsigned e = m.exponent(i);
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    bool negative = false;
    std::string coef;
    int nonzero = 0;
    for (std::size_t i = 0; i < 3; ++i) nonzero += c.coeff(i).is_zero() ? 0 : 1;
    if (nonzero == 1) {
      FieldElem mag = c;
      for (std::size_t i = 0; i < 3; ++i)
        if (c.coeff(i).sign() < 0) {
          negative = true;
          mag = -c;
        }
      coef = mag.str();
    } else {
      coef = "(" + c.str() + ")";
    }
    std::string body;
    if (mono.empty()) {
      body = coef;
    } else if (coef == "1") {
      body = mono;
    } else {
      body = coef + "*" + mono;
    }
    if (first) {
      os << (negative ? "-" : "") << body;
    } else {
      os << (negative ? " - " : " + ") << body;
    }
    first = false;
  }
  return os.str();
}

namespace {

struct PolyPolicy {
  using Value = Polynomial;
  std::size_t arity;
  std::span<const std::string> names;

  Value integer(const std::string& digits) const {
    return Polynomial::constant(arity, FieldElem(Rational::parse(digits)));
  }
  Value identifier(std::string_view name, std::size_t column) const {
    if (name == "rho") return Polynomial::constant(arity, FieldElem::rho());
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return Polynomial::variable(arity, i);
    throw ParseError("unknown identifier '" + std::string(name) + "'", column);
  }
  Value divide(const Value& a, const Value& b, std::size_t column) const {
    if (!b.is_constant()) throw ParseError("division by a non-constant polynomial", column);
    if (b.is_zero()) throw ParseError("division by zero", column);
    return a * b.constant_value().inverse();
  }
  Value power(const Value& a, unsigned e) const { return a.pow(e); }
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t arity, std::span<const std::string> names) {
  std::vector<std::string> fallback;
  if (names.empty()) {
    fallback = default_coordinate_names(arity);
    names = fallback;
  }
  if (names.size() != arity) throw ArityMismatch("coordinate name count does not match arity");
  PolyPolicy policy{arity, names};
  return detail::ExprParser<PolyPolicy>(text, policy).parse();
}

}  // namespace gplastic
