#include <cmath>

#include "doctest.h"
#include "gplastic/plastic.hpp"
#include "gplastic/verifier.hpp"
#include "helpers.hpp"

using namespace gplastic;
using namespace testing_support;

namespace {

Json strip_ms(Json j) {
  j.erase("ms");
  return j;
}

}  // namespace

TEST_CASE("instance generation is deterministic") {
  InstanceSpec spec;
  spec.tensors = 2;
  spec.polynomial = true;
  spec.with_metric = true;
  spec.g_symmetric = true;
  spec.with_connection = true;
  const Instance a = generate_instance(spec, 17), b = generate_instance(spec, 17), c = generate_instance(spec, 18);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json() != c.to_json());
  for (const auto& t : a.tensors) {
    CHECK(matrix_cubic_residual(t, 1).is_zero());
    CHECK(gsym_check(*a.metric, t));
  }
}

TEST_CASE("constant plastic pairs") {
  InstanceSpec spec;
  spec.tensors = 2;
  const Instance inst = generate_instance(spec, 3);
  REQUIRE(inst.tensors.size() == 2);
  for (const auto& t : inst.tensors) {
    CHECK(t.is_constant());
    CHECK(matrix_cubic_residual(t, 1).is_zero());
  }
  spec.cubic_sign = -1;
  for (const auto& t : generate_instance(spec, 4).tensors) CHECK(matrix_cubic_residual(t, -1).is_zero());
}

TEST_CASE("quasi-statistical generator") {
  InstanceSpec spec;
  spec.tensors = 0;
  spec.with_metric = true;
  spec.with_connection = true;
  spec.quasi_statistical = true;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = generate_instance(spec, seed);
    CHECK(quasi_statistical_check(*inst.metric, inst.nabla));
  }
  spec.dim = 4;
  spec.require_torsion = true;
  const Instance twisted = generate_instance(spec, 9);
  CHECK_FALSE(twisted.nabla.is_symmetric());
  CHECK(quasi_statistical_check(*twisted.metric, twisted.nabla));
}

TEST_CASE("infeasible constraint combinations") {
  // A non-scalar plastic tensor has the non-real eigenvalues of x^3 - x - 1,
  // so no positive definite metric makes it self-adjoint.
  InstanceSpec spec;
  spec.nonscalar = true;
  spec.with_metric = true;
  spec.g_symmetric = true;
  spec.positive_definite = true;
  CHECK_THROWS_AS(generate_instance(spec, 1), Infeasible);

  InstanceSpec bad;
  bad.dim = 5;
  CHECK_THROWS_AS(generate_instance(bad, 1), InvalidInput);
  bad.dim = 2;
  bad.degree_cap = 3;
  CHECK_THROWS_AS(generate_instance(bad, 1), InvalidInput);
}

TEST_CASE("float cross-check") {
  const Chart c(2);
  const std::vector<RationalFn> zero{RationalFn(2), fn(c, "(rho^3 - rho - 1)*x1")};
  CHECK(float_crosscheck(zero, 2, 10, 1) == 0.0);
  const FnMatrix residual = matrix_cubic_residual(FnMatrix::identity(2), 1);
  const std::vector<RationalFn> entries{residual(0, 0), residual(0, 1), residual(1, 0), residual(1, 1)};
  CHECK(std::fabs(float_crosscheck(entries, 2, 10, 1) - 1.0) < 1e-9);
  const std::vector<RationalFn> linear{fn(c, "x1")};
  const double m = float_crosscheck(linear, 2, 10, 5);
  CHECK(m > 0.0);
  CHECK(m <= 2.0);
}

TEST_CASE("suite runs") {
  CHECK(suite_ids().size() == 15);
  CHECK(is_suite("m10-cubic"));
  CHECK_FALSE(is_suite("all"));
  CHECK_THROWS_AS(run_suite("no-such-suite", {}), InvalidInput);

  SuiteOptions opt;
  opt.trials = 50;
  opt.seed = 1;
  const SuiteReport r = run_suite("m10-cubic", opt);
  CHECK(r.pass());
  CHECK(r.trials == 50);
  CHECK(r.to_json()["verdict"] == "pass");

  opt.trials = 6;
  const SuiteReport a = run_suite("m15-cubic", opt), b = run_suite("m15-cubic", opt);
  CHECK(strip_ms(a.to_json()) == strip_ms(b.to_json()));
}

TEST_CASE("iff suites record both directions") {
  SuiteOptions opt;
  opt.trials = 20;
  opt.seed = 1;
  const SuiteReport r = run_suite("m10-parallel-iff", opt);
  CHECK(r.pass());
  REQUIRE(r.extra.contains("witnesses"));
  for (const auto& [name, count] : r.extra["witnesses"].items()) CHECK_MESSAGE(count.get<long>() > 0, name);
}
