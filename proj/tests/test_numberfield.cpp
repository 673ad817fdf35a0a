#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "gplastic/error.hpp"
#include "gplastic/numberfield.hpp"
#include "helpers.hpp"

using namespace gplastic;
using testing_support::F;

TEST_CASE("addition is componentwise") {
  const FieldElem rho = FieldElem::rho();
  CHECK((rho + (-rho)).is_zero());
  CHECK(F("1+rho") + F("rho^2") == FieldElem(1, 1, 1));
  CHECK(F("rho^2") + F("rho^2") == FieldElem(0, 0, 2));
}

TEST_CASE("multiplication reduces with rho^3 = rho + 1") {
  const FieldElem rho = FieldElem::rho();
  CHECK(rho * (rho * rho) == FieldElem(1, 1, 0));
  CHECK(rho * (rho * rho - 1) == FieldElem(1));
  const FieldElem a = FieldElem::alpha();
  CHECK(a * a * a - a == FieldElem(-1));
  CHECK((rho.pow(3) - rho - 1).is_zero());
  CHECK((a.pow(3) - a + 1).is_zero());
}

TEST_CASE("inverse") {
  const FieldElem rho = FieldElem::rho();
  CHECK(rho.inverse() == rho * rho - 1);
  CHECK(FieldElem(1).inverse() == FieldElem(1));
  CHECK((rho * rho - 1).inverse() == rho);
  CHECK_THROWS_AS(FieldElem(0).inverse(), DivisionByZero);
}

TEST_CASE("real embedding") {
  const double r = plastic_number();
  CHECK(std::fabs(r * r * r - r - 1) < 1e-15);
  CHECK(FieldElem::rho().embed() == doctest::Approx(1.3247179572447).epsilon(1e-13));
  CHECK(FieldElem(0).embed() == 0.0);
  const FieldElem rho = FieldElem::rho();
  CHECK((rho * rho * rho - rho - 1).embed() == 0.0);
}

TEST_CASE("real sign is exact near zero") {
  const FieldElem rho = FieldElem::rho();
  CHECK(real_sign(rho) == 1);
  CHECK(real_sign(-rho) == -1);
  CHECK(real_sign(FieldElem(0)) == 0);
  // rho - 1324717957/10^9 is positive but tiny.
  CHECK(real_sign(rho - FieldElem(Rational(1324717957, 1000000000))) == 1);
  CHECK(real_sign(rho - FieldElem(Rational(1324717958, 1000000000))) == -1);
}

TEST_CASE("parse and print") {
  CHECK(F("rho") == FieldElem::rho());
  CHECK(F("-rho") == FieldElem::alpha());
  CHECK(F("3") == FieldElem(3));
  CHECK(F("-2/7") == FieldElem(Rational(-2, 7)));
  CHECK(F("1/2 + 3/4*rho - 5/6*rho^2") == FieldElem(Rational(1, 2), Rational(3, 4), Rational(-5, 6)));
  CHECK(F("rho^4") == FieldElem(0, 1, 1));
  CHECK(F("(1+rho)*(1-rho)") == FieldElem(1, 0, -1));
  for (const char* s : {"0", "rho", "-rho", "1 - rho^2", "1/2 + 3/4*rho - 5/6*rho^2", "-7/3*rho^2"})
    CHECK(F(F(s).str()) == F(s));
  CHECK_THROWS_AS(F("1 +"), ParseError);
  CHECK_THROWS_AS(F("x1"), ParseError);
  CHECK_THROWS_AS(F("1/0"), Error);
}

namespace {

FieldElem random_elem(std::mt19937_64& g, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound), den(1, 9);
  return {Rational(d(g), den(g)), Rational(d(g), den(g)), Rational(d(g), den(g))};
}

}  // namespace

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 g(7);
  for (int i = 0; i < 200; ++i) {
    const FieldElem a = random_elem(g, 50), b = random_elem(g, 50), c = random_elem(g, 50);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    if (!a.is_zero()) CHECK(a * a.inverse() == FieldElem(1));
  }
}

TEST_CASE("embedding is multiplicative") {
  std::mt19937_64 g(11);
  // Products of coefficients up to 1000 reach 1e7, where adjacent doubles are
  // 2e-9 apart, so the bound is relative there and absolute for small inputs.
  std::uniform_int_distribution<long> big(-1000, 1000), small(-10, 10);
  for (int i = 0; i < 200; ++i) {
    const FieldElem a(big(g), big(g), big(g)), b(big(g), big(g), big(g));
    const double lhs = (a * b).embed(), rhs = a.embed() * b.embed();
    CHECK(std::fabs(lhs - rhs) < 1e-10 * std::max(1.0, std::fabs(lhs)));
  }
  for (int i = 0; i < 200; ++i) {
    const FieldElem a(small(g), small(g), small(g)), b(small(g), small(g), small(g));
    CHECK(std::fabs((a * b).embed() - a.embed() * b.embed()) < 1e-10);
  }
}
