#include "doctest.h"
#include "gplastic/error.hpp"
#include "gplastic/generalized.hpp"
#include "gplastic/generators.hpp"
#include "gplastic/plastic.hpp"
#include "helpers.hpp"

using namespace gplastic;
using namespace testing_support;

namespace {

const Chart c2(2);
const Chart c3(3);

GenSection rand_section(Rng& rng, std::size_t n) {
  GenSection s = GenSection::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.vec[i] = RationalFn(rng.polynomial(n));
    s.form[i] = RationalFn(rng.polynomial(n));
  }
  return s;
}

GenSection d(std::size_t n, std::size_t i) { return GenSection::of_vector(VectorField::basis(n, i)); }
GenSection dx(std::size_t n, std::size_t i) { return GenSection::of_form(OneForm::basis(n, i)); }

FnMatrix S() { return mat(c2, {{"-rho", "1 - rho^2"}, {"1", "0"}}); }
Metric diag_metric() { return Metric(mat(c2, {{"1", "0"}, {"0", "1 - rho^2"}})); }

}  // namespace

TEST_CASE("indefinite pairing") {
  const GenSection s = d(2, 0) + dx(2, 0);
  CHECK(pair_indefinite(s, s) == fn(c2, "-1"));
  CHECK(pair_indefinite(d(2, 0), d(2, 1)).is_zero());
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const GenSection a = rand_section(rng, 2), b = rand_section(rng, 2);
    CHECK(pair_indefinite(a, b) == pair_indefinite(b, a));
    CHECK(pair_indefinite(GenSection::of_vector(a.vec), GenSection::of_vector(b.vec)).is_zero());
  }
}

TEST_CASE("symplectic pairing") {
  CHECK(pair_symplectic(d(2, 0), dx(2, 0)) == fn(c2, "1/2"));
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const GenSection a = rand_section(rng, 2), b = rand_section(rng, 2);
    CHECK(pair_symplectic(a, a).is_zero());
    CHECK(pair_symplectic(a, b) == -pair_symplectic(b, a));
  }
}

TEST_CASE("g-check pairing") {
  const Metric id(FnMatrix::identity(2));
  CHECK(pair_gcheck(id, d(2, 0), d(2, 0)) == fn(c2, "1"));
  CHECK(pair_gcheck(id, dx(2, 0), dx(2, 0)) == fn(c2, "1"));
  CHECK(pair_gcheck(id, d(2, 0), dx(2, 0)).is_zero());
  // g^-1 dx2 = d2 / (1 - rho^2), so the form part is 1 / (1 - rho^2).
  CHECK(pair_gcheck(diag_metric(), dx(2, 1), dx(2, 1)) * fn(c2, "1 - rho^2") == fn(c2, "1"));
  const Metric g(mat(c2, {{"x1 + 2", "x2"}, {"x2", "1"}}));
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const GenSection a = rand_section(rng, 2), b = rand_section(rng, 2);
    CHECK(pair_gcheck(g, a, b) == pair_gcheck(g, b, a));
  }
}

TEST_CASE("lifted connections") {
  const Connection flat(2);
  const GenSection t{vf(c2, {"0", "x1"}), form(c2, {"0", "x1"})};
  CHECK(check_nabla(flat, d(2, 0), t) == d(2, 1) + dx(2, 1));

  // Flat connection and constant metric: both lifts differentiate componentwise.
  const Metric g0(mat(c2, {{"2", "1"}, {"1", "rho"}}));
  const GenSection u{vf(c2, {"x1*x2", "x2^2"}), form(c2, {"x1^2", "rho*x1"})};
  const GenSection expected{vf(c2, {"x2", "0"}), form(c2, {"2*x1", "rho"})};
  CHECK(hat_nabla(flat, g0, d(2, 0), u) == expected);
  CHECK(check_nabla(flat, d(2, 0), u) == expected);

  Rng rng(4);
  const Connection nabla = random_connection(rng, 2);
  const Metric g(mat(c2, {{"x1 + 2", "x2"}, {"x2", "1"}}));
  for (int i = 0; i < 5; ++i) {
    const GenSection s = rand_section(rng, 2), a = rand_section(rng, 2), b = rand_section(rng, 2);
    // The direction enters only through its vector part.
    CHECK(hat_nabla(nabla, g, s, a) == hat_nabla(nabla, g, GenSection::of_vector(s.vec), a));
    CHECK(hat_nabla(nabla, g, s, GenSection::of_vector(a.vec)).form.is_zero());
    CHECK(check_nabla(nabla, s, a + b) == check_nabla(nabla, s, a) + check_nabla(nabla, s, b));
  }
}

TEST_CASE("the lifts agree exactly when the metric is parallel") {
  // Parallel metric: g constant, torsion-free metric connection from the
  // constraint basis.
  Rng rng(5);
  const auto m = random_selfadjoint_metric(rng, 2, {});
  REQUIRE(m);
  ConnectionConstraints c;
  c.metric_parallel = *m;
  const Connection parallel = random_connection_from_basis(rng, 2, connection_basis(2, c));
  const Metric g(FnMatrix::constant(*m));
  REQUIRE(is_metric_parallel(parallel, g));
  for (std::size_t i = 0; i < 2; ++i) CHECK(lift_difference(parallel, g, VectorField::basis(2, i)).is_zero());
  for (int i = 0; i < 5; ++i) {
    const GenSection s = rand_section(rng, 2), t = rand_section(rng, 2);
    CHECK(hat_nabla(parallel, g, s, t) == check_nabla(parallel, s, t));
  }

  // Oracle (independent symbolic expansion): g = diag(x1 + 2, 1), flat nabla,
  // direction d1 and tau = dx1. The hat lift gives -1/(x1 + 2) dx1 while the
  // check lift gives 0.
  const Metric gx(mat(c2, {{"x1 + 2", "0"}, {"0", "1"}}));
  const Connection flat(2);
  REQUIRE_FALSE(is_metric_parallel(flat, gx));
  CHECK(hat_nabla(flat, gx, d(2, 0), dx(2, 0)) == GenSection{VectorField(2), form(c2, {"-1/(x1 + 2)", "0"})});
  CHECK(check_nabla(flat, d(2, 0), dx(2, 0)).is_zero());
  CHECK_FALSE(lift_difference(flat, gx, VectorField::basis(2, 0)).is_zero());
}

TEST_CASE("nabla bracket") {
  const Connection flat(2);
  CHECK(gen_bracket(flat, d(2, 0), GenSection::of_form(form(c2, {"x1", "0"}))) == dx(2, 0));
  Rng rng(6);
  const Connection nabla = random_connection(rng, 3);
  for (int i = 0; i < 5; ++i) {
    const GenSection s = rand_section(rng, 3), t = rand_section(rng, 3);
    CHECK(gen_bracket(nabla, s, s).is_zero());
    CHECK(gen_bracket(nabla, s, t) == -gen_bracket(nabla, t, s));
    const GenSection pv = gen_bracket(nabla, GenSection::of_vector(s.vec), GenSection::of_vector(t.vec));
    CHECK(pv == GenSection::of_vector(lie_bracket(s.vec, t.vec)));
  }
}

TEST_CASE("block operators") {
  Rng rng(7);
  const GenSection s = rand_section(rng, 2);
  CHECK(gen_op_apply(GenOperator::identity(2), s) == s);
  const FieldElem rho = FieldElem::rho();
  const FnMatrix rho_i = rho * FnMatrix::identity(2);
  const GenOperator scalar = GenOperator::diagonal(rho_i, rho_i);
  CHECK(gen_op_apply(scalar, s) == RationalFn::constant(2, rho) * s);
  CHECK(gen_cubic_residual(scalar, 1).is_zero());

  // Composition agrees with applying twice.
  const GenOperator a(mat(c2, {{"x1", "1"}, {"0", "rho"}}), mat(c2, {{"0", "x2"}, {"1", "0"}}),
                      mat(c2, {{"2", "0"}, {"x1", "1"}}), mat(c2, {{"1", "x1*x2"}, {"rho", "0"}}));
  const GenOperator b(mat(c2, {{"1", "0"}, {"x2", "1"}}), mat(c2, {{"rho", "0"}, {"0", "1"}}),
                      mat(c2, {{"0", "1"}, {"1", "0"}}), mat(c2, {{"x2", "0"}, {"1", "2"}}));
  CHECK(gen_op_apply(gen_op_compose(a, b), s) == gen_op_apply(a, gen_op_apply(b, s)));
  CHECK(a.pow(3) == a.compose(a.compose(a)));

  // M100-type operators are symmetric for the indefinite pairing.
  const FnMatrix j = mat(c2, {{"x1", "x2 + 1"}, {"rho", "x1*x2"}});
  const GenOperator jj = GenOperator::diagonal(j, j);
  for (int i = 0; i < 5; ++i) {
    const GenSection u = rand_section(rng, 2), v = rand_section(rng, 2);
    CHECK(pair_indefinite(gen_op_apply(jj, u), v) == pair_indefinite(u, gen_op_apply(jj, v)));
  }
}

TEST_CASE("diagonal structures of g-symmetric tensors are g-check symmetric") {
  const Metric g = diag_metric();
  const FnMatrix rho_i = FieldElem::rho() * FnMatrix::identity(2);
  const GenOperator j = build_diag_structure(S(), rho_i);
  CHECK(gen_cubic_residual(j, 1).is_zero());
  Rng rng(8);
  for (int i = 0; i < 5; ++i) {
    const GenSection u = rand_section(rng, 2), v = rand_section(rng, 2);
    CHECK(pair_gcheck(g, gen_op_apply(j, u), v) == pair_gcheck(g, u, gen_op_apply(j, v)));
  }
}

TEST_CASE("covariant derivative of block operators") {
  const Connection flat(2);
  const Metric g0(mat(c2, {{"2", "1"}, {"1", "rho"}}));
  const GenOperator constant(mat(c2, {{"1", "rho"}, {"0", "2"}}), mat(c2, {{"0", "1"}, {"1", "0"}}),
                             mat(c2, {{"3", "0"}, {"0", "1"}}), mat(c2, {{"rho", "0"}, {"1", "1"}}));
  CHECK(is_gen_parallel(Lift::Hat, flat, &g0, constant));
  CHECK(is_gen_parallel(Lift::Check, flat, nullptr, constant));
  CHECK_THROWS_AS(gen_cov_deriv(Lift::Hat, flat, nullptr, constant, VectorField::basis(2, 0)), InvalidInput);

  // For diag(J1, J2*) with J2 g-symmetric the hat derivative is
  // (nabla_X J1) Y + flat((nabla_X J2)(sharp beta)).
  const Metric g = diag_metric();
  const FnMatrix j1 = mat(c2, {{"x1", "x2^2"}, {"1", "rho*x1"}});
  const FnMatrix j2 = fn(c2, "x1 + x2") * S() + fn(c2, "x2^2") * FnMatrix::identity(2);
  REQUIRE(gsym_check(g, j2));
  const GenOperator jj = GenOperator::diagonal(j1, j2);
  Rng rng(9);
  const Connection nabla = random_connection(rng, 2);
  for (int i = 0; i < 4; ++i) {
    const VectorField x = rand_section(rng, 2).vec;
    const GenSection t = rand_section(rng, 2);
    const GenSection lhs = gen_op_apply(gen_cov_deriv(Lift::Hat, nabla, &g, jj, x), t);
    const GenSection rhs{apply(cov_deriv_tensor11(nabla, x, j1), t.vec),
                         metric_flat(g, apply(cov_deriv_tensor11(nabla, x, j2), metric_sharp(g, t.form)))};
    CHECK(lhs == rhs);
  }
}

TEST_CASE("generalized Nijenhuis tensor") {
  const Connection flat(2);
  const GenOperator constant(mat(c2, {{"1", "rho"}, {"0", "2"}}), mat(c2, {{"0", "1"}, {"1", "0"}}),
                             mat(c2, {{"3", "0"}, {"0", "1"}}), mat(c2, {{"rho", "0"}, {"1", "1"}}));
  CHECK(is_nabla_integrable(flat, constant));

  Rng rng(10);
  const Connection nabla = random_connection(rng, 2);
  const GenOperator j(mat(c2, {{"x1", "1"}, {"0", "rho"}}), mat(c2, {{"0", "x2"}, {"1", "0"}}),
                      mat(c2, {{"2", "0"}, {"x1", "1"}}), mat(c2, {{"1", "x1*x2"}, {"rho", "0"}}));
  for (int i = 0; i < 3; ++i) {
    const GenSection s = rand_section(rng, 2), t = rand_section(rng, 2);
    CHECK(gen_nijenhuis(nabla, j, s, t) == -gen_nijenhuis(nabla, j, t, s));
  }

  // Plastic J1 = P^-1 D P in dimension 3 with a polynomial frame P; the
  // diagonal structure inherits N(J1) != 0 on pure vectors.
  const Tensor11 d = block_plastic(3, {PlasticBlock{}, PlasticBlock{dual_companion()}});
  const FnMatrix p = mat(c3, {{"1", "x3", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  const FnMatrix j1 = inverse(p) * d * p;
  REQUIRE(matrix_cubic_residual(j1, 1).is_zero());
  REQUIRE_FALSE(is_integrable(j1));
  const GenOperator diag = build_diag_structure(j1, d);
  CHECK_FALSE(is_nabla_integrable(Connection(3), diag));
}
