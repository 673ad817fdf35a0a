#include "doctest.h"
#include "gplastic/chart.hpp"
#include "gplastic/error.hpp"
#include "gplastic/generators.hpp"
#include "helpers.hpp"

using namespace gplastic;
using namespace testing_support;

namespace {

const Chart c2(2);

// S = [[-rho, 1 - rho^2], [1, 0]] is the normal form of a non-scalar plastic
// matrix: it satisfies x^3 - x - 1 = 0, so -S satisfies x^3 - x + 1 = 0.
FnMatrix S() { return mat(c2, {{"-rho", "1 - rho^2"}, {"1", "0"}}); }

Metric diag_metric() { return Metric(mat(c2, {{"1", "0"}, {"0", "1 - rho^2"}})); }

}  // namespace

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(Chart(0), InvalidInput);
  CHECK_THROWS_AS(Chart(2, {"x", "x"}), InvalidInput);
  CHECK_THROWS_AS(Chart(2, {"x"}), InvalidInput);
  CHECK(Chart(3).coords() == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("metric validation") {
  CHECK_THROWS_AS(Metric(mat(c2, {{"1", "x1"}, {"0", "1"}})), InvalidInput);
  CHECK_THROWS_AS(Metric(mat(c2, {{"x1", "x1"}, {"x1", "x1"}})), InvalidInput);
  CHECK_NOTHROW(Metric(mat(c2, {{"0", "1"}, {"1", "0"}})));
}

TEST_CASE("flat") {
  const Metric id(FnMatrix::identity(2));
  CHECK(metric_flat(id, VectorField::basis(2, 0)) == OneForm::basis(2, 0));
  CHECK(metric_flat(diag_metric(), VectorField::basis(2, 1)) == form(c2, {"0", "1 - rho^2"}));
  CHECK(metric_flat(diag_metric(), VectorField(2)).is_zero());
}

TEST_CASE("sharp") {
  const Metric id(FnMatrix::identity(2));
  CHECK(metric_sharp(id, OneForm::basis(2, 0)) == VectorField::basis(2, 0));
  const FieldElem rho = FieldElem::rho();
  const VectorField expected({RationalFn(2), RationalFn::constant(2, (1 - rho * rho).inverse())});
  CHECK(metric_sharp(diag_metric(), OneForm::basis(2, 1)) == expected);

  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto m = random_selfadjoint_metric(rng, 2, {});
    REQUIRE(m);
    const Metric gm(FnMatrix::constant(*m));
    const VectorField x({RationalFn(rng.polynomial(2)), RationalFn(rng.polynomial(2))});
    CHECK(metric_sharp(gm, metric_flat(gm, x)) == x);
  }
  // Non-constant metric: sharp o flat is still the identity.
  const Metric gx(mat(c2, {{"x1 + 2", "x2"}, {"x2", "1"}}));
  const VectorField x = vf(c2, {"x1*x2", "rho"});
  CHECK(metric_sharp(gx, metric_flat(gx, x)) == x);
}

TEST_CASE("dual action") {
  const OneForm eta = form(c2, {"x1", "x2^2 + rho"});
  CHECK(dual_apply(FnMatrix::identity(2), eta) == eta);
  CHECK(dual_apply(FieldElem::rho() * FnMatrix::identity(2), eta) == FieldElem::rho() * eta);
  const FnMatrix j = mat(c2, {{"x1", "2"}, {"rho*x2", "1 - x1"}});
  const VectorField x = vf(c2, {"x2", "3 - x1^2"});
  CHECK(contract(dual_apply(j, eta), x) == contract(eta, apply(j, x)));
}

TEST_CASE("g-symmetry") {
  const Metric id(FnMatrix::identity(2));
  CHECK(gsym_check(id, FieldElem::rho() * FnMatrix::identity(2)));
  CHECK(gsym_check(Metric(mat(c2, {{"x1 + 2", "x2"}, {"x2", "1"}})), FieldElem::rho() * FnMatrix::identity(2)));
  CHECK(gsym_check(diag_metric(), S()));
  CHECK_FALSE(gsym_check(id, mat(c2, {{"0", "1"}, {"0", "0"}})));
}

TEST_CASE("g-symmetry is stable under sums and commuting products") {
  const Metric g = diag_metric();
  const FnMatrix a = S(), b = S() * S() + FieldElem(3) * FnMatrix::identity(2);
  REQUIRE(gsym_check(g, a));
  REQUIRE(gsym_check(g, b));
  REQUIRE(a * b == b * a);
  CHECK(gsym_check(g, a + b));
  CHECK(gsym_check(g, a * b));
}

TEST_CASE("matrix polynomials") {
  const std::vector<FieldElem> plastic{-1, -1, 0, 1};  // x^3 - x - 1
  const std::vector<FieldElem> dual{1, -1, 0, 1};      // x^3 - x + 1
  CHECK(tensor_poly(FieldElem::rho() * FnMatrix::identity(2), plastic).is_zero());
  CHECK(tensor_poly(S(), plastic).is_zero());
  CHECK_FALSE(tensor_poly(S(), dual).is_zero());
  CHECK(tensor_poly(-S(), dual).is_zero());
  const FnMatrix j = S();
  CHECK(j * (j * j - FnMatrix::identity(2)) == FnMatrix::identity(2));
  const FnMatrix inv = inverse(j);
  CHECK(inv == j * j - FnMatrix::identity(2));
  CHECK(inv.pow(3) - inv - FnMatrix::identity(2) == -j);
}

TEST_CASE("inverse and determinant of a function matrix") {
  const FnMatrix m = mat(c2, {{"x1", "1"}, {"x2", "2"}});
  CHECK(determinant(m) == fn(c2, "2*x1 - x2"));
  CHECK(m * inverse(m) == FnMatrix::identity(2));
  CHECK_THROWS_AS(inverse(mat(c2, {{"x1", "x1"}, {"x2", "x2"}})), DivisionByZero);
}
