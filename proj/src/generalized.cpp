#include "gplastic/generalized.hpp"

#include "gplastic/error.hpp"

namespace gplastic {

GenSection::GenSection(VectorField x, OneForm eta) : vec(std::move(x)), form(std::move(eta)) {
  if (vec.dim() != form.dim()) throw ArityMismatch("section parts on different charts");
}

GenOperator::GenOperator(FnMatrix tt, FnMatrix tf, FnMatrix ft, FnMatrix ff)
    : tt_(std::move(tt)), tf_(std::move(tf)), ft_(std::move(ft)), ff_(std::move(ff)) {
  const std::size_t n = tt_.dim();
  if (tf_.dim() != n || ft_.dim() != n || ff_.dim() != n) throw ArityMismatch("operator blocks on different charts");
}

GenOperator GenOperator::identity(std::size_t n) {
  return {FnMatrix::identity(n), FnMatrix::zero(n), FnMatrix::zero(n), FnMatrix::identity(n)};
}

GenOperator GenOperator::zero(std::size_t n) {
  return {FnMatrix::zero(n), FnMatrix::zero(n), FnMatrix::zero(n), FnMatrix::zero(n)};
}

GenOperator GenOperator::diagonal(const Tensor11& j1, const Tensor11& j2) {
  const std::size_t n = j1.dim();
  return {j1, FnMatrix::zero(n), FnMatrix::zero(n), j2};
}

GenOperator GenOperator::from_action(std::size_t n, const std::function<GenSection(const GenSection&)>& action) {
  FnMatrix tt(n), tf(n), ft(n), ff(n);
  for (std::size_t j = 0; j < n; ++j) {
    GenSection a = action(GenSection::of_vector(VectorField::basis(n, j)));
    GenSection b = action(GenSection::of_form(OneForm::basis(n, j)));
    for (std::size_t i = 0; i < n; ++i) {
      tt(i, j) = a.vec[i];
      ft(i, j) = a.form[i];
      tf(i, j) = b.vec[i];
      // (FF* dx^j)_i = FF(j, i)
      ff(j, i) = b.form[i];
    }
  }
  return {tt, tf, ft, ff};
}

GenSection GenOperator::apply(const GenSection& s) const {
  if (s.dim() != dim()) throw ArityMismatch("operator and section on different charts");
  return {gplastic::apply(tt_, s.vec) + raise_apply(tf_, s.form), lower_apply(ft_, s.vec) + dual_apply(ff_, s.form)};
}

GenOperator GenOperator::compose(const GenOperator& o) const {
  if (o.dim() != dim()) throw ArityMismatch("operators on different charts");
  // Work with the acting matrix FF^T of the form block, then transpose back.
  const FnMatrix a_ff = ff_.transpose();
  const FnMatrix b_ff = o.ff_.transpose();
  FnMatrix tt = tt_ * o.tt_ + tf_ * o.ft_;
  FnMatrix tf = tt_ * o.tf_ + tf_ * b_ff;
  FnMatrix ft = ft_ * o.tt_ + a_ff * o.ft_;
  FnMatrix ff_act = ft_ * o.tf_ + a_ff * b_ff;
  return {tt, tf, ft, ff_act.transpose()};
}

GenOperator GenOperator::pow(unsigned exponent) const {
  GenOperator result = identity(dim());
  GenOperator base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result.compose(base);
    exponent >>= 1U;
    if (exponent != 0) base = base.compose(base);
  }
  return result;
}

bool GenOperator::is_zero() const { return tt_.is_zero() && tf_.is_zero() && ft_.is_zero() && ff_.is_zero(); }

GenOperator operator+(const GenOperator& a, const GenOperator& b) {
  return {a.tt_ + b.tt_, a.tf_ + b.tf_, a.ft_ + b.ft_, a.ff_ + b.ff_};
}

GenOperator operator-(const GenOperator& a, const GenOperator& b) {
  return {a.tt_ - b.tt_, a.tf_ - b.tf_, a.ft_ - b.ft_, a.ff_ - b.ff_};
}

GenOperator operator*(const FieldElem& s, const GenOperator& a) { return {s * a.tt_, s * a.tf_, s * a.ft_, s * a.ff_}; }

bool operator==(const GenOperator& a, const GenOperator& b) {
  return a.tt_ == b.tt_ && a.tf_ == b.tf_ && a.ft_ == b.ft_ && a.ff_ == b.ff_;
}

GenSection gen_op_apply(const GenOperator& j, const GenSection& s) { return j.apply(s); }
GenOperator gen_op_compose(const GenOperator& a, const GenOperator& b) { return a.compose(b); }

GenOperator gen_cubic_residual(const GenOperator& j, int sign) {
  if (sign != 1 && sign != -1) throw InvalidInput("cubic residual sign must be +1 or -1");
  const std::size_t n = j.dim();
  GenOperator cube = j.compose(j).compose(j);
  return cube - j - FieldElem(sign) * GenOperator::identity(n);
}

RationalFn pair_indefinite(const GenSection& s, const GenSection& t) {
  const FieldElem half(Rational(-1, 2));
  return (contract(s.form, t.vec) + contract(t.form, s.vec)) * half;
}

RationalFn pair_symplectic(const GenSection& s, const GenSection& t) {
  const FieldElem half(Rational(-1, 2));
  return (contract(s.form, t.vec) - contract(t.form, s.vec)) * half;
}

RationalFn pair_gcheck(const Metric& g, const GenSection& s, const GenSection& t) {
  return bilinear(g.matrix(), s.vec, t.vec) +
         bilinear(g.matrix(), metric_sharp(g, s.form), metric_sharp(g, t.form));
}

GenSection hat_nabla(const Connection& nabla, const Metric& g, const GenSection& s, const GenSection& t) {
  return {cov_deriv_vector(nabla, s.vec, t.vec),
          metric_flat(g, cov_deriv_vector(nabla, s.vec, metric_sharp(g, t.form)))};
}

GenSection check_nabla(const Connection& nabla, const GenSection& s, const GenSection& t) {
  return {cov_deriv_vector(nabla, s.vec, t.vec), cov_deriv_oneform(nabla, s.vec, t.form)};
}

GenSection gen_bracket(const Connection& nabla, const GenSection& s, const GenSection& t) {
  return {lie_bracket(s.vec, t.vec), cov_deriv_oneform(nabla, s.vec, t.form) - cov_deriv_oneform(nabla, t.vec, s.form)};
}

namespace {

GenSection lifted(Lift lift, const Connection& nabla, const Metric* g, const GenSection& s, const GenSection& t) {
  if (lift == Lift::Check) return check_nabla(nabla, s, t);
  return hat_nabla(nabla, *g, s, t);
}

}  // namespace

GenOperator gen_cov_deriv(Lift lift, const Connection& nabla, const Metric* g, const GenOperator& j,
                          const VectorField& x) {
  if (lift == Lift::Hat && g == nullptr) throw InvalidInput("hat lift requires a metric");
  const GenSection dir = GenSection::of_vector(x);
  return GenOperator::from_action(j.dim(), [&](const GenSection& t) {
    return lifted(lift, nabla, g, dir, j.apply(t)) - j.apply(lifted(lift, nabla, g, dir, t));
  });
}

bool is_gen_parallel(Lift lift, const Connection& nabla, const Metric* g, const GenOperator& j) {
  const std::size_t n = j.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (!gen_cov_deriv(lift, nabla, g, j, VectorField::basis(n, i)).is_zero()) return false;
  return true;
}

GenOperator lift_difference(const Connection& nabla, const Metric& g, const VectorField& x) {
  const GenSection dir = GenSection::of_vector(x);
  return GenOperator::from_action(x.dim(), [&](const GenSection& t) {
    return hat_nabla(nabla, g, dir, t) - check_nabla(nabla, dir, t);
  });
}

GenSection gen_nijenhuis(const Connection& nabla, const GenOperator& j, const GenSection& s, const GenSection& t) {
  const GenSection js = j.apply(s);
  const GenSection jt = j.apply(t);
  return gen_bracket(nabla, js, jt) - j.apply(gen_bracket(nabla, js, t)) - j.apply(gen_bracket(nabla, s, jt)) +
         j.apply(j.apply(gen_bracket(nabla, s, t)));
}

bool is_nabla_integrable(const Connection& nabla, const GenOperator& j) {
  const std::size_t n = j.dim();
  auto vec = [n](std::size_t i) { return GenSection::of_vector(VectorField::basis(n, i)); };
  auto form = [n](std::size_t i) { return GenSection::of_form(OneForm::basis(n, i)); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a < b && !gen_nijenhuis(nabla, j, vec(a), vec(b)).is_zero()) return false;
      if (!gen_nijenhuis(nabla, j, vec(a), form(b)).is_zero()) return false;
      if (a < b && !gen_nijenhuis(nabla, j, form(a), form(b)).is_zero()) return false;
    }
  return true;
}

namespace dual_structure_formula {

namespace {

// The 1-form (nabla_X g)(Y, .).
OneForm dg(const Connection& nabla, const Metric& g, const VectorField& x, const VectorField& y) {
  return lower_apply(cov_deriv_metric(nabla, x, g).transpose(), y);
}

OneForm flat_torsion(const Connection& nabla, const Metric& g, const VectorField& x, const VectorField& y) {
  return metric_flat(g, torsion(nabla, x, y));
}

// (nabla_X g) Y - (nabla_Y g) X + g(T(X, Y)) as a 1-form.
OneForm qs_form(const Connection& nabla, const Metric& g, const VectorField& x, const VectorField& y) {
  return dg(nabla, g, x, y) - dg(nabla, g, y, x) + flat_torsion(nabla, g, x, y);
}

// (nabla_Y J*) eta = nabla_Y (J* eta) - J* (nabla_Y eta).
OneForm dual_deriv(const Connection& nabla, const Tensor11& j, const VectorField& y, const OneForm& eta) {
  return cov_deriv_oneform(nabla, y, dual_apply(j, eta)) - dual_apply(j, cov_deriv_oneform(nabla, y, eta));
}

}  // namespace

GenSection on_vectors(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& x,
                      const VectorField& y) {
  const std::size_t n = j.dim();
  const Tensor11 q = FnMatrix::identity(n) - j * j;
  const VectorField jx = apply(j, x), jy = apply(j, y);
  const OneForm core = qs_form(nabla, g, y, x);
  VectorField vec = nijenhuis_tm(j, x, y) + apply(q, metric_sharp(g, core));
  OneForm form = dg(nabla, g, jx, y) - dg(nabla, g, y, jx) + flat_torsion(nabla, g, jx, y) +
                 dg(nabla, g, x, jy) - dg(nabla, g, jy, x) + flat_torsion(nabla, g, x, jy) + core +
                 dual_deriv(nabla, j, y, metric_flat(g, x)) - dual_deriv(nabla, j, x, metric_flat(g, y)) +
                 dual_apply(j, core);
  return {vec, form};
}

GenSection on_vector_form(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& x,
                          const VectorField& z) {
  const std::size_t n = j.dim();
  const Tensor11 j2 = j * j;
  const Tensor11 q = FnMatrix::identity(n) - j2;
  const VectorField jx = apply(j, x), qz = apply(q, z), j2z = apply(j2, z);
  VectorField vec = -apply(cov_deriv_tensor11(nabla, jx, j2), z) - apply(cov_deriv_tensor11(nabla, qz, j), x) +
                    apply(j, apply(cov_deriv_tensor11(nabla, x, j2), z)) - torsion(nabla, jx, qz) +
                    apply(j, torsion(nabla, x, qz)) - apply(q, metric_sharp(g, dg(nabla, g, jx, z))) +
                    apply(j * q, metric_sharp(g, dg(nabla, g, x, z)));
  OneForm form = dg(nabla, g, x, z) - dg(nabla, g, z, x) + flat_torsion(nabla, g, x, z) -
                 dual_apply(j2, dg(nabla, g, x, z)) + dg(nabla, g, j2z, x) - flat_torsion(nabla, g, x, j2z);
  return {vec, form};
}

GenSection on_vector_form_regrouped(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& x,
                                    const VectorField& z) {
  const std::size_t n = j.dim();
  const Tensor11 j2 = j * j;
  const Tensor11 q = FnMatrix::identity(n) - j2;
  const VectorField jx = apply(j, x), qz = apply(q, z), j2z = apply(j2, z);
  VectorField vec = -metric_sharp(g, qs_form(nabla, g, jx, qz)) + apply(j, metric_sharp(g, qs_form(nabla, g, x, qz)));
  OneForm form = qs_form(nabla, g, x, z) - dg(nabla, g, x, j2z) + dg(nabla, g, j2z, x) -
                 flat_torsion(nabla, g, x, j2z);
  return {vec, form};
}

GenSection on_forms(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& z,
                    const VectorField& w, bool amended) {
  const Tensor11 j2 = j * j;
  const VectorField j2z = apply(j2, z), j2w = apply(j2, w);
  OneForm last = dg(nabla, g, j2z, w) - dg(nabla, g, w, amended ? j2z : j2w) + flat_torsion(nabla, g, j2z, w);
  OneForm total = qs_form(nabla, g, w, z) + qs_form(nabla, g, j2w, j2z) +
                  (dg(nabla, g, z, j2w) - dg(nabla, g, j2w, z) + flat_torsion(nabla, g, z, j2w)) + last;
  return {metric_sharp(g, total), OneForm(z.dim())};
}

}  // namespace dual_structure_formula

}  // namespace gplastic
