#include "doctest.h"
#include "gplastic/error.hpp"
#include "gplastic/generators.hpp"
#include "gplastic/plastic.hpp"
#include "helpers.hpp"

using namespace gplastic;
using namespace testing_support;

namespace {

const Chart c2(2);
const FieldElem rho = FieldElem::rho();

// S = [[-rho, 1 - rho^2], [1, 0]]: trace -rho and determinant rho^2 - 1 make
// its characteristic polynomial divide into x^3 - x - 1, so S is plastic and
// -S solves the dual cubic x^3 - x + 1.
Matrix2 S() { return {-rho, 1 - rho * rho, 1, 0}; }
Metric diag_metric() { return Metric(mat(c2, {{"1", "0"}, {"0", "1 - rho^2"}})); }

}  // namespace

TEST_CASE("matrix cubic residual") {
  CHECK(matrix_cubic_residual(Matrix2::scalar(rho), 1).is_zero());
  CHECK(matrix_cubic_residual(Matrix2::identity(), 1) == FieldElem(-1) * Matrix2::identity());
  CHECK(matrix_cubic_residual(S(), 1).is_zero());
  // S^3 - S + I = (S^3 - S - I) + 2I.
  CHECK(matrix_cubic_residual(S(), -1) == FieldElem(2) * Matrix2::identity());
  CHECK(matrix_cubic_residual(FieldElem(-1) * S(), -1).is_zero());
  CHECK(matrix_cubic_residual(S().to_tensor(2), 1).is_zero());
  CHECK(matrix_cubic_residual(block_plastic(3, {PlasticBlock{}, PlasticBlock{S()}}), 1).is_zero());
}

TEST_CASE("plastic 2x2 constructor") {
  CHECK(make_plastic_2x2(-rho, 1, 0) == S());
  const Matrix2 a = make_plastic_2x2(0, 1, -rho);
  CHECK(a == Matrix2(0, 1 - rho * rho, 1, -rho));
  CHECK(matrix_cubic_residual(a, 1).is_zero());
  CHECK_THROWS_AS(make_plastic_2x2(1, 1, 0), InvalidInput);
  CHECK_THROWS_AS(make_plastic_2x2(-rho, 0, 0), InvalidInput);

  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Matrix2 m = make_plastic_2x2(rng.field_elem(), rng.nonzero_field_elem());
    CHECK(matrix_cubic_residual(m, 1).is_zero());
    CHECK(matrix_cubic_residual(FieldElem(-1) * m, -1).is_zero());
    CHECK(m.trace() == -rho);
  }
}

TEST_CASE("canonical form") {
  const Matrix2 a(0, 1 - rho * rho, 1, -rho);
  const CanonicalForm cf = canonical_form(a);
  CHECK(cf.c == Matrix2(1, -rho, 0, 1));
  CHECK(cf.b == S());
  CHECK(cf.c * a == cf.b * cf.c);
  CHECK(dual_companion() == S());

  const CanonicalForm same = canonical_form(S());
  CHECK(same.c == Matrix2::identity());

  CHECK_THROWS_AS(canonical_form(Matrix2::scalar(rho)), ScalarPlastic);
  CHECK_THROWS_AS(canonical_form(Matrix2::identity()), InvalidInput);

  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Matrix2 m = make_plastic_2x2(rng.field_elem(), rng.nonzero_field_elem());
    const CanonicalForm f = canonical_form(m);
    CHECK(f.c.inverse() * f.b * f.c == m);
    CHECK(f.c.det() == m(1, 0));
  }
}

TEST_CASE("diagonal structure") {
  const FnMatrix rho_i = rho * FnMatrix::identity(2);
  const GenOperator scalar = build_diag_structure(rho_i, rho_i);
  CHECK(scalar == rho * GenOperator::identity(2));

  const GenOperator j = build_diag_structure(S().to_tensor(2), rho_i);
  CHECK(gen_cubic_residual(j, 1).is_zero());
  CHECK(j.tf().is_zero());
  CHECK(j.ft().is_zero());

  // -S solves the dual cubic, not the plastic one.
  CHECK_THROWS_AS(build_diag_structure((FieldElem(-1) * S()).to_tensor(2), rho_i), InvalidInput);
  CHECK_THROWS_AS(build_diag_structure(S().to_tensor(2), FnMatrix::identity(2)), InvalidInput);
}

TEST_CASE("two-tensor structure") {
  const Metric g = diag_metric();
  const Tensor11 s = S().to_tensor(2), zero = FnMatrix::zero(2);
  const FieldElem half(Rational(1, 2));
  const Tensor11 neg_half = (FieldElem(-1) * half) * s;

  // J1 = J2 = -S/2: the sum -S satisfies the dual cubic.
  CHECK(two_tensor_conditions(g, neg_half, neg_half).empty());
  const GenOperator j = build_two_tensor_structure(g, neg_half, neg_half);
  CHECK(gen_cubic_residual(j, 1).is_zero());
  CHECK(j.ft() == g.matrix());

  // J1 = -S, J2 = 0.
  const GenOperator j0 = build_two_tensor_structure(g, FieldElem(-1) * s, zero);
  CHECK(gen_cubic_residual(j0, 1).is_zero());
  CHECK(j0 == build_dual_structure(g, FieldElem(-1) * s));

  // Halves of S sum to a plastic tensor: the plastic-sum mode gives the dual cubic.
  const Tensor11 pos_half = half * s;
  const auto failures = two_tensor_conditions(g, pos_half, pos_half);
  REQUIRE(failures.size() == 1);
  CHECK(failures[0].condition == "sum-cubic");
  CHECK_THROWS_AS(build_two_tensor_structure(g, pos_half, pos_half), InvalidInput);
  const GenOperator jd = build_two_tensor_structure(g, pos_half, pos_half, SumCubic::Plastic);
  CHECK(gen_cubic_residual(jd, -1).is_zero());
  CHECK_FALSE(gen_cubic_residual(jd, 1).is_zero());

  // Every condition is reported on its own.
  const Tensor11 nilpotent = mat(c2, {{"0", "1"}, {"0", "0"}});
  const auto all = two_tensor_conditions(Metric(FnMatrix::identity(2)), nilpotent, nilpotent.transpose());
  std::vector<std::string> names;
  for (const auto& f : all) names.push_back(f.condition);
  CHECK(names == std::vector<std::string>{"commute", "sum-cubic", "g-symmetric-J1", "g-symmetric-J2"});
}

TEST_CASE("two-tensor structures from generated g-symmetric halves") {
  Rng rng(3);
  const FieldElem half(Rational(1, 2));
  for (int i = 0; i < 10; ++i) {
    const Matrix2 m = make_plastic_2x2(rng.field_elem(), rng.nonzero_field_elem());
    const FieldMatrix fm{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
    const auto g0 = random_selfadjoint_metric(rng, 2, {fm});
    REQUIRE(g0);
    const Metric g(FnMatrix::constant(*g0));
    const Tensor11 j1 = (FieldElem(-1) * half) * m.to_tensor(2);
    REQUIRE(gsym_check(g, j1));
    const GenOperator j = build_two_tensor_structure(g, j1, j1);
    CHECK(gen_cubic_residual(j, 1).is_zero());
  }
}

TEST_CASE("dual structure") {
  const Metric g = diag_metric();
  const GenOperator j = build_dual_structure(g, (FieldElem(-1) * S()).to_tensor(2));
  CHECK(gen_cubic_residual(j, 1).is_zero());
  CHECK(j.ff().is_zero());
  CHECK_THROWS_AS(build_dual_structure(g, S().to_tensor(2)), InvalidInput);
  CHECK_THROWS_AS(build_dual_structure(g, rho * FnMatrix::identity(2)), InvalidInput);
  const Metric other(mat(c2, {{"2", "1"}, {"1", "rho"}}));
  CHECK(gen_cubic_residual(build_dual_structure(other, -rho * FnMatrix::identity(2)), 1).is_zero());
}

TEST_CASE("metallic compatibility") {
  const MetallicReport golden = metallic_compat({1, 1});
  CHECK(golden.reading == "integer");
  CHECK_FALSE(golden.plastic.coefficient_branch);
  REQUIRE(golden.plastic.scalar);
  CHECK(golden.plastic.scalar->is_zero());
  CHECK_FALSE(golden.plastic.scalar_solves_cubic);

  // p^3 - p + 1 for p = 1, 2, 3.
  const long expected[] = {1, 7, 25};
  for (long p = 1; p <= 3; ++p) {
    const MetallicReport r = metallic_compat({FieldElem(p), FieldElem(1)});
    CHECK(r.plastic.p_witness == FieldElem(expected[p - 1]));
    CHECK_FALSE(r.plastic.coefficient_branch);
  }

  const MetallicReport symbolic = metallic_compat({rho, 1 - rho * rho});
  CHECK(symbolic.reading == "symbolic");
  CHECK(symbolic.dual.coefficient_branch);
  CHECK(symbolic.dual.p_witness.is_zero());
  CHECK_FALSE(symbolic.dual.scalar);
  CHECK_FALSE(symbolic.plastic.coefficient_branch);
}
