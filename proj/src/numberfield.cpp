#include "gplastic/numberfield.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "gplastic/detail/expr_parser.hpp"
#include "gplastic/error.hpp"

namespace gplastic {

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("invalid rational '" + s + "'", 1);
  if (q.get_den() == 0) throw DivisionByZero("rational with zero denominator");
  return Rational(std::move(q));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational");
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("rational division by zero");
  q_ /= o.q_;
  return *this;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  for (std::size_t i = 0; i < 3; ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  for (std::size_t i = 0; i < 3; ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  if (a.is_zero() || b.is_zero()) return FieldElem();
  if (a.is_rational()) return FieldElem(a.c_[0] * b.c_[0], a.c_[0] * b.c_[1], a.c_[0] * b.c_[2]);
  if (b.is_rational()) return FieldElem(b.c_[0] * a.c_[0], b.c_[0] * a.c_[1], b.c_[0] * a.c_[2]);
  const auto& x = a.c_;
  const auto& y = b.c_;
  Rational p0 = x[0] * y[0];
  Rational p1 = x[0] * y[1] + x[1] * y[0];
  Rational p2 = x[0] * y[2] + x[1] * y[1] + x[2] * y[0];
  Rational p3 = x[1] * y[2] + x[2] * y[1];
  Rational p4 = x[2] * y[2];
  // rho^3 = rho + 1, rho^4 = rho^2 + rho
  return FieldElem(p0 + p3, p1 + p3 + p4, p2 + p4);
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(rho)");
  if (is_rational()) return FieldElem(c_[0].inverse());
  // Columns of the multiplication-by-a matrix in the basis {1, rho, rho^2}.
  const auto& a = c_;
  Rational m[3][3] = {
      {a[0], a[2], a[1]},
      {a[1], a[0] + a[2], a[2] + a[1]},
      {a[2], a[1], a[0] + a[2]},
  };
  auto det3 = [](const Rational (&x)[3][3]) {
    return x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) -
           x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
           x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
  };
  Rational d = det3(m);
  // Cramer's rule for m * c = e0: column j replaced by e0.
  std::array<Rational, 3> out;
  for (std::size_t j = 0; j < 3; ++j) {
    Rational t[3][3];
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) t[r][c] = (c == j) ? Rational(r == 0 ? 1 : 0) : m[r][c];
    out[j] = det3(t) / d;
  }
  return FieldElem(out[0], out[1], out[2]);
}

FieldElem FieldElem::pow(unsigned exponent) const {
  FieldElem result(1);
  FieldElem base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

double plastic_number() {
  static const double value = [] {
    long double s = std::sqrt(69.0L);
    long double r = std::cbrt((9.0L + s) / 18.0L) + std::cbrt((9.0L - s) / 18.0L);
    for (int i = 0; i < 4; ++i) r -= (r * r * r - r - 1.0L) / (3.0L * r * r - 1.0L);
    return static_cast<double>(r);
  }();
  return value;
}

double FieldElem::embed() const {
  const long double r = plastic_number();
  return static_cast<double>(static_cast<long double>(c_[0].to_double()) +
                             static_cast<long double>(c_[1].to_double()) * r +
                             static_cast<long double>(c_[2].to_double()) * r * r);
}

int real_sign(const FieldElem& a) {
  if (a.is_zero()) return 0;
  // Bisect a rational bracket [lo, hi] of rho until the interval image of a
  // excludes zero. Terminates because a(rho) != 0 for nonzero a.
  mpq_class lo(13, 10), hi(4, 3);
  const mpq_class& c0 = a.coeff(0).value();
  const mpq_class& c1 = a.coeff(1).value();
  const mpq_class& c2 = a.coeff(2).value();
  for (int iter = 0; iter < 4096; ++iter) {
    // On [lo, hi] with lo > 0 both rho and rho^2 are increasing.
    mpq_class v_lo = c0, v_hi = c0;
    mpq_class t1 = c1 * lo, t2 = c1 * hi;
    v_lo += (t1 < t2 ? t1 : t2);
    v_hi += (t1 < t2 ? t2 : t1);
    mpq_class s1 = c2 * lo * lo, s2 = c2 * hi * hi;
    v_lo += (s1 < s2 ? s1 : s2);
    v_hi += (s1 < s2 ? s2 : s1);
    if (v_lo > 0) return 1;
    if (v_hi < 0) return -1;
    mpq_class mid = (lo + hi) / 2;
    if (mid * mid * mid - mid - 1 > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return a.embed() > 0 ? 1 : -1;
}

namespace {

void append_term(std::ostringstream& os, bool& first, const Rational& c, const char* basis) {
  if (c.is_zero()) return;
  Rational mag = c.sign() < 0 ? -c : c;
  if (first) {
    if (c.sign() < 0) os << '-';
  } else {
    os << (c.sign() < 0 ? " - " : " + ");
  }
  first = false;
  if (basis == nullptr) {
    os << mag.str();
  } else if (mag.is_one()) {
    os << basis;
  } else {
    os << mag.str() << '*' << basis;
  }
}

struct FieldPolicy {
  using Value = FieldElem;
  Value integer(const std::string& digits) const { return FieldElem(Rational::parse(digits)); }
  Value identifier(std::string_view name, std::size_t column) const {
    if (name == "rho") return FieldElem::rho();
    throw ParseError("unknown identifier '" + std::string(name) + "'", column);
  }
  Value divide(const Value& a, const Value& b, std::size_t column) const {
    if (b.is_zero()) throw ParseError("division by zero", column);
    return a / b;
  }
  Value power(const Value& a, unsigned e) const { return a.pow(e); }
};

}  // namespace

std::string FieldElem::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  append_term(os, first, c_[0], nullptr);
  append_term(os, first, c_[1], "rho");
  append_term(os, first, c_[2], "rho^2");
  return os.str();
}

FieldElem FieldElem::parse(std::string_view text) {
  FieldPolicy policy;
  return detail::ExprParser<FieldPolicy>(text, policy).parse();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.str(); }

}  // namespace gplastic
