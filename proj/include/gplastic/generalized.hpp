#pragma once

// The generalized tangent bundle TM + T*M on a chart: sections X + eta, the
// natural pairings, the lifted connections, the bracket [.,.]_nabla and block
// operators with their Nijenhuis tensor.

#include <cstddef>
#include <functional>

#include "gplastic/chart.hpp"
#include "gplastic/connection.hpp"

namespace gplastic {

/// Section X + eta of TM + T*M.
struct GenSection {
  VectorField vec;
  OneForm form;

  GenSection() = default;
  GenSection(VectorField x, OneForm eta);
  static GenSection zero(std::size_t n) { return {VectorField(n), OneForm(n)}; }
  static GenSection of_vector(const VectorField& x) { return {x, OneForm(x.dim())}; }
  static GenSection of_form(const OneForm& eta) { return {VectorField(eta.dim()), eta}; }

  std::size_t dim() const { return vec.dim(); }
  bool is_zero() const { return vec.is_zero() && form.is_zero(); }

  friend GenSection operator+(const GenSection& a, const GenSection& b) { return {a.vec + b.vec, a.form + b.form}; }
  friend GenSection operator-(const GenSection& a, const GenSection& b) { return {a.vec - b.vec, a.form - b.form}; }
  GenSection operator-() const { return {-vec, -form}; }
  friend GenSection operator*(const RationalFn& f, const GenSection& s) { return {f * s.vec, f * s.form}; }
  friend bool operator==(const GenSection& a, const GenSection& b) { return a.vec == b.vec && a.form == b.form; }
};

/// Block endomorphism of TM + T*M:
///   J(X + eta) = (TT X + TF eta) + (FT X + FF* eta)
/// TT: vectors -> vectors, TF: forms -> vectors with (TF eta)^i = sum_j TF(i,j) eta_j,
/// FT: vectors -> forms with (FT X)_i = sum_j FT(i,j) X^j, and FF is the
/// underlying (1,1)-tensor whose dual acts on forms.
class GenOperator {
 public:
  GenOperator() = default;
  GenOperator(FnMatrix tt, FnMatrix tf, FnMatrix ft, FnMatrix ff);

  static GenOperator identity(std::size_t n);
  static GenOperator zero(std::size_t n);
  /// Block diagonal diag(j1, j2*).
  static GenOperator diagonal(const Tensor11& j1, const Tensor11& j2);
  /// Operator determined by its values on the coordinate basis d_i, dx^i.
  /// `action` must be function-linear.
  static GenOperator from_action(std::size_t n, const std::function<GenSection(const GenSection&)>& action);

  std::size_t dim() const { return tt_.dim(); }
  const FnMatrix& tt() const { return tt_; }
  const FnMatrix& tf() const { return tf_; }
  const FnMatrix& ft() const { return ft_; }
  const FnMatrix& ff() const { return ff_; }

  GenSection apply(const GenSection& s) const;
  /// (*this) o other.
  GenOperator compose(const GenOperator& other) const;
  GenOperator pow(unsigned exponent) const;
  bool is_zero() const;

  friend GenOperator operator+(const GenOperator& a, const GenOperator& b);
  friend GenOperator operator-(const GenOperator& a, const GenOperator& b);
  friend GenOperator operator*(const FieldElem& s, const GenOperator& a);
  friend bool operator==(const GenOperator& a, const GenOperator& b);

 private:
  FnMatrix tt_, tf_, ft_, ff_;
};

GenSection gen_op_apply(const GenOperator& j, const GenSection& s);
GenOperator gen_op_compose(const GenOperator& a, const GenOperator& b);

/// J^3 - J - sign * I; sign must be +1 or -1.
GenOperator gen_cubic_residual(const GenOperator& j, int sign);

/// <X+eta, Y+beta> = -1/2 (eta(Y) + beta(X)).
RationalFn pair_indefinite(const GenSection& s, const GenSection& t);
/// (X+eta, Y+beta) = -1/2 (eta(Y) - beta(X)).
RationalFn pair_symplectic(const GenSection& s, const GenSection& t);
/// g(X,Y) + g(g^-1 eta, g^-1 beta).
RationalFn pair_gcheck(const Metric& g, const GenSection& s, const GenSection& t);

/// nabla_X Y + flat(nabla_X sharp(beta)); independent of eta.
GenSection hat_nabla(const Connection& nabla, const Metric& g, const GenSection& s, const GenSection& t);
/// nabla_X Y + nabla_X beta.
GenSection check_nabla(const Connection& nabla, const GenSection& s, const GenSection& t);
/// [X,Y] + nabla_X beta - nabla_Y eta.
GenSection gen_bracket(const Connection& nabla, const GenSection& s, const GenSection& t);

enum class Lift { Hat, Check };

/// The operator tau -> lifted_nabla_X (J tau) - J (lifted_nabla_X tau). The hat
/// lift needs `g`; passing nullptr for it throws InvalidInput.
GenOperator gen_cov_deriv(Lift lift, const Connection& nabla, const Metric* g, const GenOperator& j,
                          const VectorField& x);
/// gen_cov_deriv vanishes along every coordinate direction.
bool is_gen_parallel(Lift lift, const Connection& nabla, const Metric* g, const GenOperator& j);

/// The operator tau -> hat_nabla_X tau - check_nabla_X tau.
GenOperator lift_difference(const Connection& nabla, const Metric& g, const VectorField& x);

/// N(s,t) = [Js,Jt] - J[Js,t] - J[s,Jt] + J^2[s,t] with [.,.] = [.,.]_nabla.
GenSection gen_nijenhuis(const Connection& nabla, const GenOperator& j, const GenSection& s, const GenSection& t);
/// N vanishes on all basis pairs (d_i, d_j), (d_i, dx^j), (dx^i, dx^j).
bool is_nabla_integrable(const Connection& nabla, const GenOperator& j);

/// Closed-form component expressions of N^nabla for the operator
///   [[J, (I - J^2) g^-1], [g, 0]]
/// evaluated on (X, Y), (X, flat Z) and (flat Z, flat W). These are
/// independent of gen_nijenhuis and exist to be compared against it.
namespace dual_structure_formula {

GenSection on_vectors(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& x,
                      const VectorField& y);
/// First written form: contains covariant derivatives of J.
GenSection on_vector_form(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& x,
                          const VectorField& z);
/// Regrouped form in terms of the quasi-statistical expression; drops the
/// nabla J terms.
GenSection on_vector_form_regrouped(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& x,
                                    const VectorField& z);
/// As written the last group contains (nabla_W g) J^2 W; `amended` replaces it
/// with (nabla_W g) J^2 Z.
GenSection on_forms(const Connection& nabla, const Metric& g, const Tensor11& j, const VectorField& z,
                    const VectorField& w, bool amended);

}  // namespace dual_structure_formula

}  // namespace gplastic
