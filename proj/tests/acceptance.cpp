// One line per acceptance criterion; exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gplastic/generators.hpp"
#include "gplastic/plastic.hpp"
#include "gplastic/verifier.hpp"

using namespace gplastic;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

constexpr std::uint64_t kSeed = 42;

// Reports from the suite runs, shared by the float criterion.
std::map<std::string, SuiteReport> reports;

const SuiteReport& suite(const std::string& id, std::size_t trials) {
  auto it = reports.find(id);
  if (it != reports.end()) return it->second;
  SuiteOptions opt;
  opt.trials = trials;
  opt.seed = kSeed;
  opt.float_crosscheck = true;
  return reports.emplace(id, run_suite(id, opt)).first->second;
}

void require_suite(Outcome& o, const SuiteReport& r) {
  std::ostringstream s;
  s << r.suite << " has " << r.failures.size() << " failures";
  if (!r.failures.empty()) s << " (first: " << r.failures.front().check << ")";
  o.require(r.pass(), s.str());
}

void require_witnesses(Outcome& o, const SuiteReport& r) {
  if (!r.extra.contains("witnesses")) {
    o.require(false, r.suite + " reports no witnesses");
    return;
  }
  for (const auto& [name, count] : r.extra.at("witnesses").items())
    o.require(count.get<long>() > 0, r.suite + " lacks witness " + name);
}

std::vector<Matrix2> plastic_family() {
  Rng rng(trial_seed(kSeed, 0));
  std::vector<Matrix2> out;
  for (int i = 0; i < 100; ++i) out.push_back(make_plastic_2x2(rng.field_elem(), rng.nonzero_field_elem()));
  return out;
}

Outcome criterion1() {
  Outcome o;
  const auto start = Clock::now();
  const auto family = plastic_family();
  for (const auto& a : family) o.require(matrix_cubic_residual(a, 1).is_zero(), "nonzero cubic residual");
  const double t = seconds_since(start);
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const Matrix2 b(-FieldElem::rho(), 1 - FieldElem::rho() * FieldElem::rho(), 1, 0);
  for (const auto& a : plastic_family()) {
    const CanonicalForm cf = canonical_form(a);
    o.require(cf.b == b, "unexpected normal form");
    o.require(cf.c * a == b * cf.c, "C A != B C");
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (std::uint64_t k = 0; k < 20; ++k) {
    InstanceSpec spec;
    spec.dim = 2 + k % 3;
    spec.polynomial = k % 2 == 1;
    const Tensor11 j = generate_instance(spec, trial_seed(kSeed, k)).tensors.at(0);
    const Tensor11 id = FnMatrix::identity(spec.dim);
    o.require(j * (j * j - id) == id, "J (J^2 - I) != I");
    const Tensor11 inv = inverse(j);
    o.require(inv.pow(3) - inv - id == -j, "inverse cubic != -J");
  }
  o.require(suite("inverse-remark", 20).pass(), "inverse-remark suite failed");
  return o;
}

Outcome criterion4() {
  Outcome o;
  require_suite(o, suite("m10-cubic", 25));
  return o;
}

Outcome criterion5() {
  Outcome o;
  require_suite(o, suite("pairing-symmetry", 25));
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const char* id : {"m10-parallel-iff", "m15-parallel-iff", "hat-check-coincide"}) {
    const SuiteReport& r = suite(id, 25);
    require_suite(o, r);
    require_witnesses(o, r);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  require_suite(o, suite("m15-cubic", 25));
  require_suite(o, suite("duality", 25));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto start = Clock::now();
  const SuiteReport& r = suite("diag-integrability", 25);
  const double t = seconds_since(start);
  require_suite(o, r);
  require_witnesses(o, r);
  o.require(r.extra.contains("iff_violations") && r.extra["iff_violations"]["composed_order"] == 0,
            "iff truth table has violations");
  o.require(t < 30.0, "took " + std::to_string(t) + " s");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const SuiteReport& r = suite("m45-sufficiency", 10);
  require_suite(o, r);
  const long torsion = r.extra.value("nonzero_torsion_instances", 0L);
  o.require(torsion >= 3, "only " + std::to_string(torsion) + " instances with torsion");
  return o;
}

Outcome criterion10() {
  Outcome o;
  const SuiteReport& r = suite("m45-formula-crosscheck", 25);
  require_suite(o, r);
  o.require(r.extra.contains("discrepancy"), "no discrepancy report for the form-form expression");
  return o;
}

Outcome criterion11() {
  Outcome o;
  for (const auto& [id, r] : reports) {
    o.require(r.float_max.has_value(), id + " has no float cross-check");
    if (r.float_max) o.require(*r.float_max < 1e-9, id + " float max " + std::to_string(*r.float_max));
  }
  const FnMatrix residual = matrix_cubic_residual(FnMatrix::identity(2), 1);
  const std::vector<RationalFn> entries{residual(0, 0), residual(0, 1), residual(1, 0), residual(1, 1)};
  const double m = float_crosscheck(entries, 2, 10, kSeed);
  o.require(std::abs(m - 1.0) < 1e-9, "residual I embeds to " + std::to_string(m));
  return o;
}

void strip_timing(Json& j) {
  if (j.is_object()) {
    j.erase("ms");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

Outcome criterion12() {
  Outcome o;
  Json runs[2];
  for (auto& run : runs) {
    std::ostringstream out, err;
    const int code = cli::run({"suite", "all", "--seed", "42"}, out, err);
    o.require(code == cli::kPass, "suite all exited with " + std::to_string(code));
    run = Json::parse(out.str());
    strip_timing(run);
  }
  o.require(runs[0].dump() == runs[1].dump(), "reports differ");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"plastic matrix family", criterion1},
      {"canonical conjugation", criterion2},
      {"inverse remark", criterion3},
      {"generalized cubic, diagonal form", criterion4},
      {"pairing symmetry", criterion5},
      {"lifted-connection characterizations", criterion6},
      {"two-tensor construction and duality", criterion7},
      {"integrability, diagonal structure", criterion8},
      {"sufficiency for the dual structure", criterion9},
      {"expanded formula cross-check", criterion10},
      {"float sanity", criterion11},
      {"determinism", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds_since(start));
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
              << timing << ")";
    if (!o.pass) std::cout << ": " << o.detail;
    std::cout << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
