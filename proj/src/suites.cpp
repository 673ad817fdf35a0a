#include <chrono>
#include <functional>
#include <map>

#include "gplastic/error.hpp"
#include "gplastic/generalized.hpp"
#include "gplastic/plastic.hpp"
#include "gplastic/verifier.hpp"

namespace gplastic {

namespace {

// ---------------------------------------------------------------------------
// Residual flattening

struct Residual {
  std::size_t dim = 1;
  std::vector<RationalFn> comps;

  bool is_zero() const {
    for (const auto& f : comps)
      if (!f.is_zero()) return false;
    return true;
  }
  std::string first_nonzero() const {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (!comps[i].is_zero()) {
        std::string s = "[" + std::to_string(i) + "] " + comps[i].str();
        if (s.size() > 400) s = s.substr(0, 400) + "...";
        return s;
      }
    return "0";
  }
};

void push(Residual& r, const FnMatrix& m) {
  r.dim = m.dim();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r.comps.push_back(m(i, j));
}
template <class Tag>
void push(Residual& r, const FieldVec<Tag>& v) {
  r.dim = v.dim();
  for (const auto& f : v.components()) r.comps.push_back(f);
}
void push(Residual& r, const GenSection& s) {
  push(r, s.vec);
  push(r, s.form);
}
void push(Residual& r, const GenOperator& op) {
  push(r, op.tt());
  push(r, op.tf());
  push(r, op.ft());
  push(r, op.ff());
}
void push(Residual& r, const RationalFn& f) {
  r.dim = f.arity();
  r.comps.push_back(f);
}
void push(Residual& r, const Matrix2& m) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r.comps.push_back(RationalFn::constant(1, m(i, j)));
}
void push(Residual& r, const FieldElem& e) { r.comps.push_back(RationalFn::constant(1, e)); }

template <class T>
Residual residual(const T& x) {
  Residual r;
  push(r, x);
  return r;
}

// ---------------------------------------------------------------------------
// Run and trial bookkeeping

struct Run {
  SuiteOptions opt;
  SuiteReport report;
  std::map<std::string, long> witnesses;
  std::vector<std::string> required;
  double float_max = 0;
  std::uint64_t float_counter = 0;
};

class Trial {
 public:
  Trial(Run& run, long index, std::uint64_t seed, std::size_t dim)
      : rng(seed), dim(dim), pinned(run.opt.dim.has_value()), run_(run), index_(index), seed_(seed) {}

  Rng rng;
  std::size_t dim;
  /// The dimension was fixed by the caller rather than the schedule.
  bool pinned;
  Json instance = Json::object();

  void zero(const std::string& check, const Residual& r) {
    if (!r.is_zero()) {
      fail(check, r.first_nonzero());
      return;
    }
    if (run_.opt.float_crosscheck && !r.comps.empty()) {
      const double v = float_crosscheck(r.comps, r.dim, 10, seed_ ^ (++run_.float_counter * 0x9E3779B97F4A7C15ULL));
      run_.float_max = std::max(run_.float_max, v);
    }
  }
  template <class T>
  void zero(const std::string& check, const T& x) {
    zero(check, residual(x));
  }
  template <class T>
  void nonzero(const std::string& check, const T& x) {
    if (residual(x).is_zero()) fail(check, "expected a nonzero residual, got 0");
  }
  void expect(const std::string& check, bool ok, const std::string& detail = {}) {
    if (!ok) fail(check, detail.empty() ? "condition does not hold" : detail);
  }
  void witness(const std::string& name) { ++run_.witnesses[name]; }

 private:
  void fail(const std::string& check, const std::string& residual) {
    run_.report.failures.push_back({index_, seed_, instance, check, residual});
  }

  Run& run_;
  long index_;
  std::uint64_t seed_;
};

using TrialFn = std::function<void(Trial&, long)>;

struct SuiteDef {
  std::string id;
  std::vector<std::size_t> dims;
  std::vector<std::string> required_witnesses;
  TrialFn trial;
  std::function<void(Run&)> finish;
};

// ---------------------------------------------------------------------------
// Small helpers

std::string bit(bool b) { return b ? "1" : "0"; }

Matrix2 to_matrix2(const FieldMatrix& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }

VectorField random_vector(Rng& rng, std::size_t n, unsigned degree = 2) {
  VectorField v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.below(4) != 0) v[i] = RationalFn(rng.polynomial(n, degree, 2));
  return v;
}

OneForm random_form(Rng& rng, std::size_t n, unsigned degree = 2) {
  OneForm v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.below(4) != 0) v[i] = RationalFn(rng.polynomial(n, degree, 2));
  return v;
}

GenSection random_section(Rng& rng, std::size_t n, unsigned degree = 2) {
  return {random_vector(rng, n, degree), random_form(rng, n, degree)};
}

std::vector<std::pair<GenSection, GenSection>> basis_pairs(std::size_t n) {
  std::vector<std::pair<GenSection, GenSection>> out;
  auto vec = [n](std::size_t i) { return GenSection::of_vector(VectorField::basis(n, i)); };
  auto form = [n](std::size_t i) { return GenSection::of_form(OneForm::basis(n, i)); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a < b) out.emplace_back(vec(a), vec(b));
      out.emplace_back(vec(a), form(b));
      if (a < b) out.emplace_back(form(a), form(b));
    }
  return out;
}

Json rows_json(const FnMatrix& m) { return Json(m.to_strings()); }

Json matrix2_json(const Matrix2& m) { return Json(m.to_strings()); }

FieldMatrix negated(FieldMatrix m) {
  for (auto& r : m)
    for (auto& x : r) x = -x;
  return m;
}

Tensor11 poly_in(const Tensor11& s, const FieldElem& a, const FieldElem& b, const FieldElem& c) {
  const std::size_t n = s.dim();
  return a * FnMatrix::identity(n) + b * s + c * (s * s);
}

// J1 = a I + b S + c S^2 and J2 = S - J1: commuting, g-self-adjoint whenever
// S is, with J1 + J2 = S.
std::pair<Tensor11, Tensor11> split_tensor(Rng& rng, const Tensor11& s) {
  FieldElem a = rng.field_elem(false), b = rng.field_elem(false), c = rng.coin() ? rng.field_elem(false) : FieldElem(0);
  Tensor11 j1 = poly_in(s, a, b, c);
  return {j1, s - j1};
}

// Scalar connection Gamma_i = a_i(x) I, parallel for every constant tensor.
Connection scalar_connection(Rng& rng, std::size_t n) {
  std::vector<std::vector<std::vector<RationalFn>>> gamma(
      n, std::vector<std::vector<RationalFn>>(n, std::vector<RationalFn>(n, RationalFn(n))));
  for (std::size_t i = 0; i < n; ++i) {
    RationalFn a(rng.polynomial(n, 1, 2));
    for (std::size_t k = 0; k < n; ++k) gamma[k][i][k] = a;
  }
  return Connection(gamma);
}

Instance make(Trial& t, const InstanceSpec& spec) {
  Instance inst = generate_instance(spec, t.rng);
  t.instance = inst.to_json();
  return inst;
}

// ---------------------------------------------------------------------------
// 2x2 plastic matrices

Matrix2 random_a(Trial& t) {
  FieldElem a11 = t.rng.coin() ? FieldElem(t.rng.rational()) : t.rng.field_elem();
  FieldElem a21 = t.rng.coin() ? FieldElem(t.rng.nonzero_rational()) : t.rng.nonzero_field_elem();
  Matrix2 a = make_plastic_2x2(a11, a21);
  t.instance = {{"A", matrix2_json(a)}};
  return a;
}

void m20_form(Trial& t, long) {
  const Matrix2 a = random_a(t);
  t.zero("cubic", matrix_cubic_residual(a, 1));
  const FieldElem tr = a.trace();
  t.zero("trace-cubic", tr * tr * tr - tr + 1);
  t.zero("sign-flip-dual", matrix_cubic_residual(FieldElem(-1) * a, -1));

  // Converse direction: a plastic matrix obtained by conjugating the normal
  // form satisfies the two relations whenever a12 a21 != 0.
  const Conjugator c = random_conjugator(t.rng, 2);
  const Matrix2 p = to_matrix2(c.p), p_inv = to_matrix2(c.p_inv);
  const Matrix2 conj = p_inv * dual_companion() * p;
  t.zero("conjugate-cubic", matrix_cubic_residual(conj, 1));
  if (!(conj(0, 1) * conj(1, 0)).is_zero()) {
    const FieldElem a11 = conj(0, 0), a22 = conj(1, 1);
    t.zero("product-relation", conj(0, 1) * conj(1, 0) - (FieldElem(1) - a11 * a22 - a11 * a11 - a22 * a22));
    const FieldElem s = conj.trace();
    t.zero("conjugate-trace-cubic", s * s * s - s + 1);
    t.witness("converse");
  }

  bool rejected = false;
  try {
    make_plastic_2x2(a(0, 0), a(1, 0), a(1, 1) + 1);
  } catch (const InvalidInput&) {
    rejected = true;
  }
  t.expect("wrong-trace-rejected", rejected);
  rejected = false;
  try {
    make_plastic_2x2(a(0, 0), 0);
  } catch (const InvalidInput&) {
    rejected = true;
  }
  t.expect("zero-a21-rejected", rejected);
}

void m30_canonical(Trial& t, long) {
  const Matrix2 a = random_a(t);
  const CanonicalForm cf = canonical_form(a);
  t.zero("CA-BC", cf.c * a - cf.b * cf.c);
  t.zero("round-trip", cf.c.inverse() * cf.b * cf.c - a);
  const FieldElem rho = FieldElem::rho();
  t.expect("B-normal-form", cf.b == Matrix2(-rho, FieldElem(1) - rho * rho, 1, 0));
  t.expect("C-explicit", cf.c == Matrix2(a(1, 0), a(1, 1), 0, 1));
  t.zero("B-plastic", matrix_cubic_residual(cf.b, 1));

  try {
    canonical_form(Matrix2::scalar(rho));
    t.expect("scalar-signal", false, "rho I was given a conjugator");
  } catch (const ScalarPlastic&) {
    t.witness("scalar");
  }
  try {
    canonical_form(Matrix2::identity());
    t.expect("non-plastic-rejected", false, "I was accepted");
  } catch (const ScalarPlastic&) {
    t.expect("non-plastic-rejected", false, "I reported as scalar");
  } catch (const InvalidInput&) {
  }
  t.witness("conjugate");
}

void inverse_remark(Trial& t, long k) {
  InstanceSpec spec;
  spec.dim = t.dim;
  spec.polynomial = k % 2 == 1;
  const Instance inst = make(t, spec);
  const Tensor11& j = inst.tensors[0];
  const std::size_t n = t.dim;
  const Tensor11 id = FnMatrix::identity(n);
  const Tensor11 inv = inverse(j);
  t.zero("J(J^2-I)=I", j * (j * j - id) - id);
  t.zero("inverse=J^2-I", inv - (j * j - id));
  t.zero("inverse-cubic=-J", matrix_cubic_residual(inv, 1) + j);
  t.nonzero("inverse-not-plastic", matrix_cubic_residual(inv, 1));
}

void metallic_remark(Trial& t, long k) {
  const long p = t.rng.range(1, 10), q = t.rng.range(1, 10);
  t.instance = {{"p", p}, {"q", q}};
  const FieldElem fp(p), fq(q);
  auto companion = [](const FieldElem& pp, const FieldElem& qq) { return Matrix2(0, qq, 1, pp); };
  const Matrix2 m = companion(fp, fq);
  const Matrix2 id = Matrix2::identity();
  t.zero("metallic", m * m - fp * m - fq * id);
  t.zero("plastic-reduction",
         matrix_cubic_residual(m, 1) - ((fp * fp + fq - 1) * m + (fp * fq - 1) * id));
  t.zero("dual-reduction", matrix_cubic_residual(m, -1) - ((fp * fp + fq - 1) * m + (fp * fq + 1) * id));
  t.nonzero("metallic-not-plastic", matrix_cubic_residual(m, 1));

  const MetallicReport r = metallic_compat({fp, fq});
  t.expect("integer-reading", r.reading == "integer");
  t.expect("integer-first-branch-impossible", !r.plastic.coefficient_branch && !r.plastic.p_witness.is_zero(),
           "p^3 - p + 1 = " + r.plastic.p_witness.str());
  t.expect("integer-dual-first-branch-impossible", !r.dual.coefficient_branch && !r.dual.p_witness.is_zero());
  // p^2 + q - 1 >= 1 for positive integers, so the scalar branch always exists;
  // its value is rational and x^3 - x - 1 has no rational root.
  t.expect("scalar-branch-present", r.plastic.scalar.has_value() && r.dual.scalar.has_value());
  if (r.plastic.scalar) {
    const FieldElem c = *r.plastic.scalar;
    t.zero("scalar-formula", c * (fp * fp + fq - 1) - (FieldElem(1) - fp * fq));
    t.expect("scalar-not-plastic", !r.plastic.scalar_solves_cubic && !(c * c * c - c - 1).is_zero());
  }
  t.witness("integer");

  if (k == 0) {
    const MetallicReport golden = metallic_compat({1, 1});
    t.expect("golden-scalar-zero", golden.plastic.scalar && golden.plastic.scalar->is_zero());
    t.expect("golden-not-plastic", !golden.plastic.scalar_solves_cubic);
  }

  // Symbolic readings: p = rho (dual cubic) and p = -rho (plastic cubic) with
  // q = 1 - p^2 give companion matrices solving the respective cubic.
  const FieldElem rho = FieldElem::rho();
  for (int sign : {1, -1}) {
    const FieldElem ps = sign == 1 ? -rho : rho;
    const FieldElem qs = FieldElem(1) - ps * ps;
    const MetallicReport s = metallic_compat({ps, qs});
    const MetallicBranch& br = sign == 1 ? s.plastic : s.dual;
    t.expect("symbolic-reading", s.reading == "symbolic");
    t.expect(sign == 1 ? "symbolic-plastic-branch" : "symbolic-dual-branch", br.coefficient_branch && br.p_witness.is_zero());
    const Matrix2 ms = companion(ps, qs);
    t.zero(sign == 1 ? "symbolic-companion-plastic" : "symbolic-companion-dual", matrix_cubic_residual(ms, sign));
  }
  t.witness("symbolic");
}

// ---------------------------------------------------------------------------
// Generalized structures

void m10_cubic(Trial& t, long k) {
  InstanceSpec spec;
  spec.dim = t.dim;
  spec.tensors = 2;
  spec.polynomial = k % 3 == 2;
  const Instance inst = make(t, spec);
  const GenOperator j = build_diag_structure(inst.tensors[0], inst.tensors[1]);
  t.zero("cubic", gen_cubic_residual(j, 1));
  t.nonzero("dual-cubic-fails", gen_cubic_residual(j, -1));

  const std::size_t n = t.dim;
  const Tensor11 rho_i = FieldElem::rho() * FnMatrix::identity(n);
  const GenOperator trivial = build_diag_structure(rho_i, rho_i);
  const GenSection s = random_section(t.rng, n);
  t.zero("trivial-acts-as-rho", trivial.apply(s) - RationalFn::constant(n, FieldElem::rho()) * s);
}

void pairing_symmetry(Trial& t, long k) {
  const std::size_t n = t.dim;
  InstanceSpec one;
  one.dim = n;
  one.polynomial = k % 2 == 1;
  const Instance a = make(t, one);
  const GenOperator jm = GenOperator::diagonal(a.tensors[0], a.tensors[0]);

  InstanceSpec two;
  two.dim = n;
  two.tensors = 2;
  two.with_metric = true;
  two.g_symmetric = true;
  two.polynomial = k % 2 == 1;
  const Instance b = generate_instance(two, t.rng);
  t.instance = {{"indefinite", a.to_json()}, {"gcheck", b.to_json()}};
  const GenOperator jd = build_diag_structure(b.tensors[0], b.tensors[1]);
  for (int p = 0; p < 10; ++p) {
    const GenSection s = random_section(t.rng, n), u = random_section(t.rng, n);
    t.zero("indefinite-symmetric", pair_indefinite(jm.apply(s), u) - pair_indefinite(s, jm.apply(u)));
    t.zero("gcheck-symmetric", pair_gcheck(*b.metric, jd.apply(s), u) - pair_gcheck(*b.metric, s, jd.apply(u)));
  }
}

void hat_check_coincide(Trial& t, long k) {
  const std::size_t n = t.dim;
  Instance inst;
  switch (k % 4) {
    case 0: {
      InstanceSpec spec;
      spec.dim = n;
      spec.with_metric = true;
      spec.with_connection = true;
      spec.metric_parallel = true;
      inst = make(t, spec);
      break;
    }
    case 1: {
      // Levi-Civita connection of a non-constant metric.
      InstanceSpec spec;
      spec.dim = n;
      spec.with_metric = true;
      spec.polynomial = true;
      inst = generate_instance(spec, t.rng);
      inst.nabla = levi_civita(*inst.metric);
      t.instance = inst.to_json();
      break;
    }
    case 2: {
      FnMatrix g = FnMatrix::identity(n);
      g(0, 0) = RationalFn(Polynomial::variable(n, 0) + Polynomial::constant(n, 2));
      inst.dim = n;
      inst.tensors.push_back(FnMatrix::identity(n));
      inst.metric.emplace(g);
      inst.nabla = Connection(n);
      t.instance = inst.to_json();
      break;
    }
    default: {
      InstanceSpec spec;
      spec.dim = n;
      spec.with_metric = true;
      spec.with_connection = true;
      inst = make(t, spec);
      break;
    }
  }
  const Metric& g = *inst.metric;
  const bool parallel = is_metric_parallel(inst.nabla, g);
  bool coincide = true;
  for (std::size_t i = 0; i < n; ++i) {
    const GenOperator d = lift_difference(inst.nabla, g, VectorField::basis(n, i));
    if (!d.is_zero()) coincide = false;
  }
  for (int p = 0; p < 3; ++p) {
    const GenSection s = random_section(t.rng, n), u = random_section(t.rng, n);
    const GenSection diff = hat_nabla(inst.nabla, g, s, u) - check_nabla(inst.nabla, s, u);
    if (parallel) t.zero("sections-coincide", diff);
    if (!diff.is_zero()) coincide = false;
  }
  t.expect("coincide-iff-metric-parallel", coincide == parallel,
           "metric parallel " + bit(parallel) + ", lifts coincide " + bit(coincide));
  if (parallel) {
    t.witness("metric-parallel");
  } else {
    t.witness("metric-not-parallel");
    GenOperator total = GenOperator::zero(n);
    for (std::size_t i = 0; i < n; ++i) total = total + lift_difference(inst.nabla, g, VectorField::basis(n, i));
    if (!total.is_zero()) t.witness("nonzero-difference");
  }
}

// Hat and check formulas for the diagonal structure (valid for g-symmetric J2).
GenOperator m10_hat_formula(const Connection& nabla, const Metric& g, const Tensor11& j1, const Tensor11& j2,
                            const VectorField& x) {
  const Tensor11 d1 = cov_deriv_tensor11(nabla, x, j1), d2 = cov_deriv_tensor11(nabla, x, j2);
  return GenOperator::from_action(x.dim(), [&](const GenSection& s) {
    return GenSection(apply(d1, s.vec), metric_flat(g, apply(d2, metric_sharp(g, s.form))));
  });
}

GenOperator m10_check_formula(const Connection& nabla, const Tensor11& j1, const Tensor11& j2, const VectorField& x) {
  const Tensor11 d1 = cov_deriv_tensor11(nabla, x, j1), d2 = cov_deriv_tensor11(nabla, x, j2);
  return GenOperator::from_action(x.dim(), [&](const GenSection& s) {
    return GenSection(apply(d1, s.vec), dual_apply(d2, s.form));
  });
}

void m10_parallel_iff(Trial& t, long k) {
  const std::size_t n = t.dim;
  InstanceSpec spec;
  spec.dim = n;
  spec.tensors = 2;
  spec.with_metric = true;
  spec.g_symmetric = true;
  switch (k % 4) {
    case 0:
      spec.with_connection = true;
      spec.parallel_mask = 3;
      break;
    case 1:
      spec.with_connection = true;
      spec.parallel_mask = 3;
      spec.polynomial = true;
      break;
    case 2:
      spec.with_connection = true;
      break;
    default:
      spec.polynomial = true;
      break;
  }
  const Instance inst = make(t, spec);
  const Tensor11 &j1 = inst.tensors[0], &j2 = inst.tensors[1];
  const Metric& g = *inst.metric;
  const GenOperator j = build_diag_structure(j1, j2);
  const bool p1 = is_parallel(inst.nabla, j1), p2 = is_parallel(inst.nabla, j2);
  bool hat = true, check = true;
  for (std::size_t i = 0; i < n; ++i) {
    const VectorField x = VectorField::basis(n, i);
    const GenOperator dh = gen_cov_deriv(Lift::Hat, inst.nabla, &g, j, x);
    const GenOperator dc = gen_cov_deriv(Lift::Check, inst.nabla, nullptr, j, x);
    t.zero("hat-formula", dh - m10_hat_formula(inst.nabla, g, j1, j2, x));
    t.zero("check-formula", dc - m10_check_formula(inst.nabla, j1, j2, x));
    hat = hat && dh.is_zero();
    check = check && dc.is_zero();
  }
  const std::string state = "nabla J1 = 0: " + bit(p1) + ", nabla J2 = 0: " + bit(p2);
  t.expect("hat-iff", hat == (p1 && p2), state + ", hat parallel: " + bit(hat));
  t.expect("check-iff", check == (p1 && p2), state + ", check parallel: " + bit(check));
  t.witness(hat ? "hat-parallel" : "hat-not-parallel");
  t.witness(check ? "check-parallel" : "check-not-parallel");
}

// The m15 family: S solves the dual cubic (or the plastic one for the dual
// mode), g makes S self-adjoint, J1 + J2 = S.
struct M15 {
  Instance inst;
  Tensor11 j1, j2;
};

M15 make_m15(Trial& t, long k, int sum_sign, InstanceSpec spec) {
  const std::size_t n = t.dim;
  M15 out;
  if (n == 2 && k % 3 == 0 && !spec.polynomial && !spec.with_connection) {
    // Explicit family g22 = (1 - alpha^2) g11 - alpha g12 for the normal form.
    const FieldElem alpha = FieldElem::alpha();
    for (;;) {
      const FieldElem g11 = t.rng.nonzero_field_elem(false), g12 = t.rng.field_elem(false);
      const FieldElem g22 = (FieldElem(1) - alpha * alpha) * g11 - alpha * g12;
      if ((g11 * g22 - g12 * g12).is_zero()) continue;
      out.inst.dim = 2;
      out.inst.metric.emplace(FnMatrix::constant({{g11, g12}, {g12, g22}}));
      break;
    }
    Tensor11 s = dual_companion().to_tensor(2);
    if (sum_sign == -1) s = -s;
    out.inst.tensors.push_back(s);
  } else {
    spec.dim = n;
    spec.cubic_sign = sum_sign;
    spec.with_metric = true;
    spec.g_symmetric = true;
    out.inst = generate_instance(spec, t.rng);
  }
  auto [j1, j2] = split_tensor(t.rng, out.inst.tensors[0]);
  out.j1 = j1;
  out.j2 = j2;
  Json js = out.inst.to_json();
  js["tensors"] = {{"S", rows_json(out.inst.tensors[0])}, {"J1", rows_json(j1)}, {"J2", rows_json(j2)}};
  t.instance = js;
  return out;
}

void m15_cubic(Trial& t, long k) {
  InstanceSpec spec;
  spec.polynomial = k % 3 == 2;
  const M15 m = make_m15(t, k, -1, spec);
  const auto failures = two_tensor_conditions(*m.inst.metric, m.j1, m.j2);
  t.expect("conditions", failures.empty(), failures.empty() ? "" : failures[0].condition + ": " + failures[0].residual);
  const GenOperator j = build_two_tensor_structure(*m.inst.metric, m.j1, m.j2);
  t.zero("cubic", gen_cubic_residual(j, 1));
  if (k % 3 == 0 && t.dim == 2) t.witness("explicit-family");
}

void duality(Trial& t, long k) {
  InstanceSpec spec;
  spec.polynomial = k % 3 == 2;
  const M15 m = make_m15(t, k, 1, spec);
  const auto failures = two_tensor_conditions(*m.inst.metric, m.j1, m.j2, SumCubic::Plastic);
  t.expect("conditions", failures.empty(), failures.empty() ? "" : failures[0].condition + ": " + failures[0].residual);
  const GenOperator j = build_two_tensor_structure(*m.inst.metric, m.j1, m.j2, SumCubic::Plastic);
  t.zero("dual-cubic", gen_cubic_residual(j, -1));
  t.nonzero("plastic-cubic-fails", gen_cubic_residual(j, 1));

  // Matrix level: A plastic <=> -A dual, in both directions.
  const FieldMatrix d = random_block_plastic(t.rng, t.dim);
  const Tensor11 a = FnMatrix::constant(d);
  t.zero("negated-plastic-is-dual", matrix_cubic_residual(-a, -1));
  t.zero("negated-dual-is-plastic", matrix_cubic_residual(-FnMatrix::constant(negated(d)), 1));
  bool rejected = false;
  try {
    build_dual_structure(*m.inst.metric, m.inst.tensors[0]);
  } catch (const InvalidInput&) {
    rejected = true;
  }
  t.expect("plastic-rejected-by-dual-constructor", rejected);
}

GenOperator m15_hat_formula(const Connection& nabla, const Metric& g, const Tensor11& j1, const Tensor11& j2,
                            const VectorField& x) {
  const std::size_t n = x.dim();
  const Tensor11 k = FnMatrix::identity(n) - j1 * j2 - j1 * j1 - j2 * j2;
  const Tensor11 d1 = cov_deriv_tensor11(nabla, x, j1), d2 = cov_deriv_tensor11(nabla, x, j2);
  const Tensor11 dk = cov_deriv_tensor11(nabla, x, k);
  return GenOperator::from_action(n, [&](const GenSection& s) {
    const VectorField b = metric_sharp(g, s.form);
    return GenSection(apply(d1, s.vec) + apply(dk, b), metric_flat(g, apply(d2, b)));
  });
}

GenOperator m15_check_formula(const Connection& nabla, const Metric& g, const Tensor11& j1, const Tensor11& j2,
                              const VectorField& x) {
  const std::size_t n = x.dim();
  const FnMatrix kg = (FnMatrix::identity(n) - j1 * j2 - j1 * j1 - j2 * j2) * g.inverse_matrix();
  const Tensor11 d1 = cov_deriv_tensor11(nabla, x, j1), d2 = cov_deriv_tensor11(nabla, x, j2);
  const FnMatrix dg = cov_deriv_metric(nabla, x, g);
  // nabla_X of the forms-to-vectors map K g^-1: a (2,0) tensor A with
  // (nabla_X A)(i, j) = X(A(i, j)) + (Gamma_X A)(i, j) + (A Gamma_X^T)(i, j).
  FnMatrix dkg(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) dkg(a, b) = directional(x, kg(a, b));
  const FnMatrix gx = nabla.along(x);
  dkg = dkg + gx * kg + kg * gx.transpose();
  return GenOperator::from_action(n, [&](const GenSection& s) {
    return GenSection(apply(d1, s.vec) + raise_apply(dkg, s.form), lower_apply(dg.transpose(), s.vec) + dual_apply(d2, s.form));
  });
}

void m15_parallel_iff(Trial& t, long k) {
  const std::size_t n = t.dim;
  InstanceSpec spec;
  switch (k % 4) {
    case 0:
      spec.with_connection = true;
      spec.parallel_mask = 1;
      spec.metric_parallel = true;
      break;
    case 1:
      spec.with_connection = true;
      spec.parallel_mask = 1;
      break;
    case 2:
      spec.with_connection = true;
      break;
    default:
      spec.with_connection = true;
      spec.parallel_mask = 1;
      spec.metric_parallel = true;
      spec.polynomial = true;
      break;
  }
  const M15 m = make_m15(t, k, -1, spec);
  const Metric& g = *m.inst.metric;
  const Connection& nabla = m.inst.nabla;
  const GenOperator j = build_two_tensor_structure(g, m.j1, m.j2);
  const bool p1 = is_parallel(nabla, m.j1), p2 = is_parallel(nabla, m.j2), pg = is_metric_parallel(nabla, g);
  bool hat = true, check = true;
  for (std::size_t i = 0; i < n; ++i) {
    const VectorField x = VectorField::basis(n, i);
    const GenOperator dh = gen_cov_deriv(Lift::Hat, nabla, &g, j, x);
    const GenOperator dc = gen_cov_deriv(Lift::Check, nabla, nullptr, j, x);
    t.zero("hat-formula", dh - m15_hat_formula(nabla, g, m.j1, m.j2, x));
    t.zero("check-formula", dc - m15_check_formula(nabla, g, m.j1, m.j2, x));
    hat = hat && dh.is_zero();
    check = check && dc.is_zero();
  }
  const std::string state = "nabla J1 = 0: " + bit(p1) + ", nabla J2 = 0: " + bit(p2) + ", nabla g = 0: " + bit(pg);
  t.expect("hat-iff", hat == (p1 && p2), state + ", hat parallel: " + bit(hat));
  t.expect("check-iff", check == (p1 && p2 && pg), state + ", check parallel: " + bit(check));
  t.witness(hat ? "hat-parallel" : "hat-not-parallel");
  t.witness(check ? "check-parallel" : "check-not-parallel");
  if (p1 && p2 && !pg && !check) t.witness("check-fails-by-metric");
}

// ---------------------------------------------------------------------------
// Integrability

// nabla_{J1 X} J2 - J2 (nabla_X J2) (as written) and
// nabla_{J1 X} J2 - (nabla_X J2) J2 (the order produced by the expansion).
struct OrderConditions {
  bool written = true;
  bool composed = true;
};

OrderConditions order_conditions(const Connection& nabla, const Tensor11& j1, const Tensor11& j2) {
  const std::size_t n = j1.dim();
  OrderConditions c;
  for (std::size_t i = 0; i < n; ++i) {
    const VectorField x = VectorField::basis(n, i);
    const Tensor11 lhs = cov_deriv_tensor11(nabla, apply(j1, x), j2);
    const Tensor11 dx = cov_deriv_tensor11(nabla, x, j2);
    if (!(lhs - j2 * dx).is_zero()) c.written = false;
    if (!(lhs - dx * j2).is_zero()) c.composed = false;
  }
  return c;
}

// The expansion N(J1)(X, Y) + ((nabla_{J1X} J2*) - J2*(nabla_X J2*)) beta - (same in Y) eta.
GenSection diag_expansion(const Connection& nabla, const Tensor11& j1, const Tensor11& j2, const GenSection& s,
                          const GenSection& u) {
  auto dual_deriv = [&](const VectorField& x, const OneForm& b) {
    return cov_deriv_oneform(nabla, x, dual_apply(j2, b)) - dual_apply(j2, cov_deriv_oneform(nabla, x, b));
  };
  auto term = [&](const VectorField& x, const OneForm& b) {
    return dual_deriv(apply(j1, x), b) - dual_apply(j2, dual_deriv(x, b));
  };
  return {nijenhuis_tm(j1, s.vec, u.vec), term(s.vec, u.form) - term(u.vec, s.form)};
}

// Constant Christoffels solving the composed-order condition for constant
// J1, J2; `written` selects the as-written order instead.
std::vector<FieldVector> order_basis(const FieldMatrix& j1, const FieldMatrix& j2, std::size_t n, bool written) {
  FieldMatrix system = linear_map_matrix(n * n * n, [&](const FieldVector& x) {
    auto gam = [&](std::size_t i) {
      FieldMatrix m(n, FieldVector(n));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) m[k][j] = x[(k * n + i) * n + j];
      return m;
    };
    auto comm = [&](const FieldMatrix& a) {
      FieldMatrix l = matmul(a, j2), r = matmul(j2, a);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) l[p][q] -= r[p][q];
      return l;
    };
    FieldVector out;
    for (std::size_t a = 0; a < n; ++a) {
      FieldMatrix along(n, FieldVector(n));
      for (std::size_t i = 0; i < n; ++i) {
        const FieldMatrix gi = gam(i);
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) along[p][q] += j1[i][a] * gi[p][q];
      }
      const FieldMatrix lhs = comm(along);
      const FieldMatrix d = comm(gam(a));
      const FieldMatrix rhs = written ? matmul(j2, d) : matmul(d, j2);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) out.push_back(lhs[p][q] - rhs[p][q]);
    }
    return out;
  });
  return nullspace(system, n * n * n);
}

struct TruthTable {
  std::map<std::string, long> rows;
  long written_violations = 0;
  long composed_violations = 0;
};

TruthTable& diag_table() {
  static TruthTable table;
  return table;
}

void diag_integrability(Trial& t, long k) {
  const std::size_t n = t.dim;
  InstanceSpec spec;
  spec.dim = n;
  spec.tensors = 2;
  Instance inst;
  const long family = k % 8;
  switch (family) {
    case 0:
      inst = make(t, spec);
      break;
    case 1:
      spec.polynomial = true;
      inst = make(t, spec);
      break;
    case 2:
      spec.with_connection = true;
      inst = make(t, spec);
      break;
    case 3:
      inst = generate_instance(spec, t.rng);
      inst.nabla = scalar_connection(t.rng, n);
      t.instance = inst.to_json();
      break;
    case 4:
      spec.polynomial = true;
      spec.with_connection = true;
      spec.parallel_mask = 2;
      inst = make(t, spec);
      break;
    case 7: {
      // Non-constant J1 through a polynomial frame. In dimension 2 every
      // tensor with constant characteristic polynomial is integrable, so this
      // family moves to dimension 3 unless the dimension is pinned.
      const std::size_t m = t.pinned ? n : std::max<std::size_t>(n, 3);
      t.dim = m;
      spec.dim = m;
      spec.polynomial = true;
      spec.nonscalar = true;
      spec.degree_cap = 2;
      for (int attempt = 0; attempt < 16; ++attempt) {
        inst = generate_instance(spec, t.rng);
        if (!is_integrable(inst.tensors[0])) break;
      }
      t.instance = inst.to_json();
      break;
    }
    default: {
      // Connections built to separate the two composition orders.
      spec.nonscalar = true;
      inst = generate_instance(spec, t.rng);
      FieldMatrix c1(n, FieldVector(n)), c2(n, FieldVector(n));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          c1[a][b] = inst.tensors[0](a, b).constant_value();
          c2[a][b] = inst.tensors[1](a, b).constant_value();
        }
      const auto basis = order_basis(c1, c2, n, family == 6);
      inst.nabla = random_connection_from_basis(t.rng, n, basis, 1);
      t.instance = inst.to_json();
      break;
    }
  }
  const std::size_t m = inst.dim;
  const Tensor11 &j1 = inst.tensors[0], &j2 = inst.tensors[1];
  const GenOperator j = build_diag_structure(j1, j2);
  const Connection& nabla = inst.nabla;

  bool integrable = true;
  for (const auto& [s, u] : basis_pairs(m)) {
    const GenSection nv = gen_nijenhuis(nabla, j, s, u);
    t.zero("expansion", nv - diag_expansion(nabla, j1, j2, s, u));
    if (!nv.is_zero()) integrable = false;
  }
  for (int p = 0; p < 10; ++p) {
    const GenSection s = random_section(t.rng, m, 1), u = random_section(t.rng, m, 1);
    const GenSection nv = gen_nijenhuis(nabla, j, s, u);
    if (p < 2) t.zero("expansion-random", nv - diag_expansion(nabla, j1, j2, s, u));
    if (!nv.is_zero()) integrable = false;
  }
  const bool n0 = is_integrable(j1);
  const OrderConditions oc = order_conditions(nabla, j1, j2);
  TruthTable& tt = diag_table();
  ++tt.rows["N(J1)=0:" + bit(n0) + " written:" + bit(oc.written) + " composed:" + bit(oc.composed) +
            " integrable:" + bit(integrable)];
  if (integrable != (n0 && oc.written)) ++tt.written_violations;
  if (integrable != (n0 && oc.composed)) ++tt.composed_violations;
  t.expect("iff", integrable == (n0 && oc.composed),
           "N(J1) = 0: " + bit(n0) + ", condition: " + bit(oc.composed) + ", integrable: " + bit(integrable));
  if (!n0) t.expect("N(J1)-nonzero-forces-N-nonzero", !integrable);
  if (nabla.is_flat() && j1.is_constant() && j2.is_constant()) {
    t.expect("flat-constant-integrable", integrable);
    t.witness("flat-constant");
  }
  t.witness(integrable ? "integrable" : "not-integrable");
  if (!n0) t.witness("N(J1)-nonzero");
  if (n0 && !oc.composed) t.witness("condition-fails-alone");
  if (family >= 5 && oc.written != oc.composed) t.witness("orders-differ");
}

void finish_truth_table(Run& run, TruthTable& table) {
  Json rows = Json::object();
  for (const auto& [k, v] : table.rows) rows[k] = v;
  run.report.extra["truth_table"] = rows;
  run.report.extra["iff_violations"] = {{"as_written", table.written_violations},
                                       {"composed_order", table.composed_violations}};
  table = TruthTable{};
}

TruthTable& remark_table() {
  static TruthTable table;
  return table;
}

void j1_eq_j2_remark(Trial& t, long k) {
  const std::size_t n = t.dim;
  InstanceSpec spec;
  spec.dim = n;
  switch (k % 4) {
    case 0:
      break;
    case 1:
      spec.with_connection = true;
      spec.torsion_free = true;
      break;
    case 2:
      spec.polynomial = true;
      break;
    default:
      spec.with_connection = true;
      spec.torsion_free = true;
      spec.parallel_mask = 1;
      break;
  }
  const Instance inst = make(t, spec);
  const Tensor11& jj = inst.tensors[0];
  const Connection& nabla = inst.nabla;
  t.expect("torsion-free", nabla.is_symmetric());

  // N(J) + T-expression equals the covariant expansion, for any connection.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const VectorField x = VectorField::basis(n, a), y = VectorField::basis(n, b);
      const VectorField jx = apply(jj, x), jy = apply(jj, y);
      const VectorField texpr = torsion(nabla, jx, jy) - apply(jj, torsion(nabla, jx, y)) -
                                apply(jj, torsion(nabla, x, jy)) + apply(jj * jj, torsion(nabla, x, y));
      const VectorField expansion = apply(cov_deriv_tensor11(nabla, jx, jj), y) - apply(cov_deriv_tensor11(nabla, jy, jj), x) -
                                    apply(jj, apply(cov_deriv_tensor11(nabla, x, jj), y)) +
                                    apply(jj, apply(cov_deriv_tensor11(nabla, y, jj), x));
      t.zero("nijenhuis-expansion", nijenhuis_tm(jj, x, y) + texpr - expansion);
    }

  const GenOperator j = build_diag_structure(jj, jj);
  bool integrable = true;
  for (const auto& [s, u] : basis_pairs(n))
    if (!gen_nijenhuis(nabla, j, s, u).is_zero()) integrable = false;
  for (int p = 0; p < 10 && integrable; ++p)
    if (!gen_nijenhuis(nabla, j, random_section(t.rng, n, 1), random_section(t.rng, n, 1)).is_zero()) integrable = false;
  const OrderConditions oc = order_conditions(nabla, jj, jj);
  const bool n0 = is_integrable(jj);
  TruthTable& tt = remark_table();
  ++tt.rows["N(J)=0:" + bit(n0) + " written:" + bit(oc.written) + " composed:" + bit(oc.composed) +
            " integrable:" + bit(integrable)];
  if (integrable != oc.written) ++tt.written_violations;
  if (integrable != (n0 && oc.composed)) ++tt.composed_violations;
  t.expect("torsion-free-iff", integrable == (n0 && oc.composed),
           "N(J) = 0: " + bit(n0) + ", condition: " + bit(oc.composed) + ", integrable: " + bit(integrable));
  // Given the as-written condition, N(J) reduces to minus the torsion
  // expression, hence vanishes for a torsion-free connection.
  if (oc.written) t.expect("written-condition-forces-N(J)=0", n0);
  if (!n0) t.witness("N(J)-nonzero");
  t.witness(integrable ? "integrable" : "not-integrable");
}

struct GapCounter {
  long instances = 0;
  long nonzero = 0;
  long forced_symmetric = 0;
};

GapCounter& m45_gap() {
  static GapCounter c;
  return c;
}

InstanceSpec m45_spec(std::size_t n, long k, bool g_symmetric) {
  InstanceSpec spec;
  spec.dim = n;
  spec.cubic_sign = -1;
  spec.nonscalar = k % 2 == 0;
  spec.with_metric = true;
  spec.g_symmetric = g_symmetric;
  spec.with_connection = true;
  spec.parallel_mask = 1;
  spec.quasi_statistical = true;
  return spec;
}

// Asks for torsion first. With a non-scalar self-adjoint J in dimensions 2
// and 3 the constraints force a symmetric connection; those trials fall back
// to the unconstrained draw and are counted.
Instance make_m45(Trial& t, long k, long& forced_symmetric) {
  InstanceSpec spec = m45_spec(t.dim, k, true);
  spec.require_torsion = true;
  try {
    return make(t, spec);
  } catch (const Infeasible&) {
    ++forced_symmetric;
  }
  spec.require_torsion = false;
  return make(t, spec);
}

bool has_torsion(const Connection& nabla) { return !nabla.is_symmetric(); }

void m45_sufficiency(Trial& t, long k) {
  const std::size_t n = t.dim;
  const Instance inst = make_m45(t, k, m45_gap().forced_symmetric);
  const Metric& g = *inst.metric;
  const Tensor11& jj = inst.tensors[0];
  const Connection& nabla = inst.nabla;
  t.expect("hypothesis-integrable", is_integrable(jj));
  t.expect("hypothesis-parallel", is_parallel(nabla, jj));
  t.expect("hypothesis-quasi-statistical", quasi_statistical_check(g, nabla));
  t.expect("g-symmetric", gsym_check(g, jj));
  const GenOperator j = build_dual_structure(g, jj);
  for (const auto& [s, u] : basis_pairs(n)) t.zero("N-basis", gen_nijenhuis(nabla, j, s, u));
  const int random_pairs = n < 4 ? 10 : 3;
  for (int p = 0; p < random_pairs; ++p)
    t.zero("N-random", gen_nijenhuis(nabla, j, random_section(t.rng, n, 1), random_section(t.rng, n, 1)));
  if (has_torsion(nabla)) t.witness("nonzero-torsion");

  // Same hypotheses without g-symmetry of J: observed, not asserted.
  const Instance other = generate_instance(m45_spec(n, k, false), t.rng);
  if (!gsym_check(*other.metric, other.tensors[0])) {
    const GenOperator jo = build_dual_structure(*other.metric, other.tensors[0]);
    GapCounter& gap = m45_gap();
    ++gap.instances;
    bool zero = true;
    for (const auto& [s, u] : basis_pairs(n))
      if (!gen_nijenhuis(other.nabla, jo, s, u).is_zero()) {
        zero = false;
        break;
      }
    if (!zero) ++gap.nonzero;
  }
}

struct CrossStats {
  std::map<std::string, std::pair<long, long>> hypothesis;  // matched, mismatched
  std::map<std::string, std::pair<long, long>> general;
};

CrossStats& cross_stats() {
  static CrossStats s;
  return s;
}

void m45_formula_crosscheck(Trial& t, long k) {
  namespace f = dual_structure_formula;
  const std::size_t n = t.dim;
  CrossStats& stats = cross_stats();

  auto compare = [&](const Instance& inst, bool asserted, std::map<std::string, std::pair<long, long>>& tally) {
    const Metric& g = *inst.metric;
    const Tensor11& jj = inst.tensors[0];
    const GenOperator j = build_dual_structure(g, jj);
    std::vector<std::pair<VectorField, VectorField>> pairs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) pairs.emplace_back(VectorField::basis(n, a), VectorField::basis(n, b));
    for (int p = 0; p < 2; ++p) pairs.emplace_back(random_vector(t.rng, n, 1), random_vector(t.rng, n, 1));
    std::map<std::string, bool> match{{"on_vectors", true},
                                      {"on_vector_form", true},
                                      {"on_vector_form_regrouped", true},
                                      {"on_forms_as_written", true},
                                      {"on_forms_amended", true}};
    for (const auto& [x, y] : pairs) {
      const GenSection sx = GenSection::of_vector(x), sy = GenSection::of_vector(y);
      const GenSection fz = GenSection::of_form(metric_flat(g, y)), fx = GenSection::of_form(metric_flat(g, x));
      const GenSection n1 = gen_nijenhuis(inst.nabla, j, sx, sy);
      const GenSection n2 = gen_nijenhuis(inst.nabla, j, sx, fz);
      const GenSection n3 = gen_nijenhuis(inst.nabla, j, fx, fz);
      const GenSection d1 = n1 - f::on_vectors(inst.nabla, g, jj, x, y);
      const GenSection d2 = n2 - f::on_vector_form(inst.nabla, g, jj, x, y);
      const GenSection d2r = n2 - f::on_vector_form_regrouped(inst.nabla, g, jj, x, y);
      const GenSection d3 = n3 - f::on_forms(inst.nabla, g, jj, x, y, false);
      const GenSection d3a = n3 - f::on_forms(inst.nabla, g, jj, x, y, true);
      if (asserted) {
        t.zero("on_vectors", d1);
        t.zero("on_vector_form", d2);
        t.zero("on_vector_form_regrouped", d2r);
      }
      match["on_vectors"] = match["on_vectors"] && d1.is_zero();
      match["on_vector_form"] = match["on_vector_form"] && d2.is_zero();
      match["on_vector_form_regrouped"] = match["on_vector_form_regrouped"] && d2r.is_zero();
      match["on_forms_as_written"] = match["on_forms_as_written"] && d3.is_zero();
      match["on_forms_amended"] = match["on_forms_amended"] && d3a.is_zero();
    }
    for (const auto& [name, ok] : match) {
      auto& cell = tally[name];
      (ok ? cell.first : cell.second) += 1;
    }
  };

  long forced = 0;
  const Instance inst = make_m45(t, k, forced);
  compare(inst, true, stats.hypothesis);

  // Instances outside the hypotheses: random connection, metric not adapted
  // to J. Reported only.
  InstanceSpec general;
  general.dim = n;
  general.cubic_sign = -1;
  general.with_metric = true;
  general.with_connection = true;
  general.polynomial = k % 2 == 1;
  compare(generate_instance(general, t.rng), false, stats.general);
}

Json tally_json(const std::map<std::string, std::pair<long, long>>& tally) {
  Json j = Json::object();
  for (const auto& [name, cell] : tally) j[name] = {{"matched", cell.first}, {"mismatched", cell.second}};
  return j;
}

// ---------------------------------------------------------------------------
// Catalog

const std::vector<SuiteDef>& catalog() {
  static const std::vector<SuiteDef> defs = {
      {"m20-form", {2}, {"converse"}, m20_form, nullptr},
      {"m30-canonical", {2}, {"scalar", "conjugate"}, m30_canonical, nullptr},
      {"inverse-remark", {2, 3, 4}, {}, inverse_remark, nullptr},
      {"metallic-remark", {2}, {"integer", "symbolic"}, metallic_remark, nullptr},
      {"m10-cubic", {2, 3}, {}, m10_cubic, nullptr},
      {"pairing-symmetry", {2, 3}, {}, pairing_symmetry, nullptr},
      {"hat-check-coincide",
       {2, 3},
       {"metric-parallel", "metric-not-parallel", "nonzero-difference"},
       hat_check_coincide,
       nullptr},
      {"m10-parallel-iff",
       {2, 3},
       {"hat-parallel", "hat-not-parallel", "check-parallel", "check-not-parallel"},
       m10_parallel_iff,
       nullptr},
      {"m15-cubic", {2, 3}, {}, m15_cubic, nullptr},
      {"duality", {2, 3}, {}, duality, nullptr},
      {"m15-parallel-iff",
       {2, 3},
       {"hat-parallel", "hat-not-parallel", "check-parallel", "check-not-parallel", "check-fails-by-metric"},
       m15_parallel_iff,
       nullptr},
      {"diag-integrability",
       {2},
       {"integrable", "not-integrable", "flat-constant", "N(J1)-nonzero", "condition-fails-alone"},
       diag_integrability,
       [](Run& run) { finish_truth_table(run, diag_table()); }},
      {"j1-eq-j2-remark",
       {2, 3},
       {"integrable", "not-integrable"},
       j1_eq_j2_remark,
       [](Run& run) { finish_truth_table(run, remark_table()); }},
      {"m45-sufficiency",
       {2, 3, 4},
       {"nonzero-torsion"},
       m45_sufficiency,
       [](Run& run) {
         GapCounter& gap = m45_gap();
         run.report.extra["without_g_symmetry"] = {{"instances", gap.instances}, {"nonzero", gap.nonzero}};
         run.report.extra["nonzero_torsion_instances"] = run.witnesses["nonzero-torsion"];
         run.report.extra["torsion_forced_zero_instances"] = gap.forced_symmetric;
         gap = GapCounter{};
       }},
      {"m45-formula-crosscheck",
       {2},
       {},
       m45_formula_crosscheck,
       [](Run& run) {
         CrossStats& s = cross_stats();
         const auto& h = s.hypothesis;
         auto mismatched = [&](const char* name) {
           auto it = h.find(name);
           return it != h.end() && it->second.second > 0;
         };
         Json d = Json::object();
         d["hypothesis_instances"] = tally_json(h);
         d["general_instances"] = tally_json(s.general);
         if (mismatched("on_forms_as_written"))
           d["on_forms_as_written"] =
               "disagrees with the definitional bracket; replacing (nabla_W g) J^2 W by (nabla_W g) J^2 Z in the "
               "last group " +
               std::string(mismatched("on_forms_amended") ? "does not fix it" : "removes the disagreement");
         run.report.extra["discrepancy"] = d;
         s = CrossStats{};
       }},
  };
  return defs;
}

const SuiteDef* find_suite(const std::string& id) {
  for (const auto& d : catalog())
    if (d.id == id) return &d;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& d : catalog()) out.push_back(d.id);
    return out;
  }();
  return ids;
}

bool is_suite(const std::string& id) { return find_suite(id) != nullptr; }

SuiteReport run_suite(const std::string& id, const SuiteOptions& options) {
  const SuiteDef* def = find_suite(id);
  if (def == nullptr) throw InvalidInput("unknown suite '" + id + "'");
  if (options.dim && (*options.dim < 2 || *options.dim > 4)) throw InvalidInput("dimension must be in [2, 4]");
  const auto start = std::chrono::steady_clock::now();
  Run run;
  run.opt = options;
  run.report.suite = id;
  run.report.trials = options.trials;
  run.report.seed = options.seed;
  for (std::size_t k = 0; k < options.trials; ++k) {
    const std::uint64_t seed = trial_seed(options.seed, k);
    // Matrix suites live in dimension 2 regardless of a pinned dimension.
    const bool fixed = def->dims.size() == 1 && def->dims[0] == 2 && (id == "m20-form" || id == "m30-canonical" ||
                                                                     id == "metallic-remark");
    const std::size_t dim = (options.dim && !fixed) ? *options.dim : def->dims[k % def->dims.size()];
    // Families cycle independently of the dimension schedule.
    const long family = options.dim ? static_cast<long>(k) : static_cast<long>(k / def->dims.size());
    Trial trial(run, static_cast<long>(k), seed, dim);
    try {
      def->trial(trial, family);
    } catch (const Error& e) {
      run.report.failures.push_back({static_cast<long>(k), seed, trial.instance, "exception", e.what()});
    }
  }
  if (def->finish) def->finish(run);
  Json w = Json::object();
  for (const auto& [name, count] : run.witnesses) w[name] = count;
  if (!def->required_witnesses.empty() || !run.witnesses.empty()) run.report.extra["witnesses"] = w;
  for (const auto& name : def->required_witnesses) {
    if (id == "diag-integrability" && name == "N(J1)-nonzero" && options.dim == 2u) {
      run.report.extra["note"] = "dimension 2 admits no plastic tensor with N(J1) != 0";
      continue;
    }
    if (run.witnesses[name] == 0)
      run.report.failures.push_back({-1, options.seed, Json(), "witness:" + name, "no trial produced this case"});
  }
  if (options.float_crosscheck) run.report.float_max = run.float_max;
  run.report.ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run.report;
}

Json SuiteReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["trials"] = trials;
  j["seed"] = seed;
  j["verdict"] = pass() ? "pass" : "fail";
  Json fs = Json::array();
  for (const auto& f : failures) {
    Json e;
    e["trial"] = f.trial;
    e["seed"] = f.seed;
    e["check"] = f.check;
    e["instance"] = f.instance;
    e["residual"] = f.residual;
    fs.push_back(e);
  }
  j["failures"] = fs;
  for (const auto& [k, v] : extra.items()) j[k] = v;
  if (float_max) j["float_max"] = *float_max;
  j["ms"] = ms;
  return j;
}

}  // namespace gplastic
