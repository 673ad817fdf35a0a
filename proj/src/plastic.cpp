#include "gplastic/plastic.hpp"

#include <sstream>

#include "gplastic/error.hpp"

namespace gplastic {

namespace {

std::string matrix_str(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i != 0) os << "; ";
    for (std::size_t j = 0; j < rows[i].size(); ++j) os << (j != 0 ? ", " : "") << rows[i][j];
  }
  os << ']';
  return os.str();
}

std::string residual_str(const Tensor11& r) { return matrix_str(r.to_strings()); }

void require_sign(int sign) {
  if (sign != 1 && sign != -1) throw InvalidInput("cubic sign must be +1 or -1");
}

void require_cubic(const Tensor11& j, int sign, const std::string& what) {
  Tensor11 r = matrix_cubic_residual(j, sign);
  if (!r.is_zero())
    throw InvalidInput(what + (sign == 1 ? " does not satisfy J^3 - J - I = 0" : " does not satisfy J^3 - J + I = 0"),
                       residual_str(r));
}

}  // namespace

Matrix2 Matrix2::inverse() const {
  const FieldElem d = det();
  if (d.is_zero()) throw DivisionByZero("singular 2x2 matrix");
  const FieldElem inv = d.inverse();
  return {a_[3] * inv, -a_[1] * inv, -a_[2] * inv, a_[0] * inv};
}

bool Matrix2::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Tensor11 Matrix2::to_tensor(std::size_t dim) const {
  if (dim != 2) throw ArityMismatch("2x2 matrix used on a chart of dimension " + std::to_string(dim));
  return FnMatrix::constant({{a_[0], a_[1]}, {a_[2], a_[3]}});
}

std::vector<std::vector<std::string>> Matrix2::to_strings() const {
  return {{a_[0].str(), a_[1].str()}, {a_[2].str(), a_[3].str()}};
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
  return {a.a_[0] + b.a_[0], a.a_[1] + b.a_[1], a.a_[2] + b.a_[2], a.a_[3] + b.a_[3]};
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
  return {a.a_[0] - b.a_[0], a.a_[1] - b.a_[1], a.a_[2] - b.a_[2], a.a_[3] - b.a_[3]};
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  return {a.a_[0] * b.a_[0] + a.a_[1] * b.a_[2], a.a_[0] * b.a_[1] + a.a_[1] * b.a_[3],
          a.a_[2] * b.a_[0] + a.a_[3] * b.a_[2], a.a_[2] * b.a_[1] + a.a_[3] * b.a_[3]};
}

Matrix2 operator*(const FieldElem& s, const Matrix2& a) { return {s * a.a_[0], s * a.a_[1], s * a.a_[2], s * a.a_[3]}; }

Matrix2 matrix_cubic_residual(const Matrix2& a, int sign) {
  require_sign(sign);
  return a * a * a - a - Matrix2::scalar(sign);
}

Tensor11 matrix_cubic_residual(const Tensor11& a, int sign) {
  require_sign(sign);
  return a * a * a - a - FnMatrix::scalar(a.dim(), RationalFn::constant(a.dim(), sign));
}

Matrix2 make_plastic_2x2(const FieldElem& a11, const FieldElem& a21, const FieldElem& a22) {
  if (a21.is_zero()) throw InvalidInput("a21 must be nonzero");
  const FieldElem t = a11 + a22;
  const FieldElem trace_residual = t * t * t - t + 1;
  if (!trace_residual.is_zero())
    throw InvalidInput("trace " + t.str() + " does not solve t^3 - t + 1 = 0", trace_residual.str());
  const FieldElem a12 = (FieldElem(1) - a11 * a22 - a11 * a11 - a22 * a22) / a21;
  return {a11, a12, a21, a22};
}

Matrix2 make_plastic_2x2(const FieldElem& a11, const FieldElem& a21) {
  return make_plastic_2x2(a11, a21, -FieldElem::rho() - a11);
}

Matrix2 dual_companion() {
  const FieldElem alpha = FieldElem::alpha();
  return {alpha, FieldElem(1) - alpha * alpha, 1, 0};
}

CanonicalForm canonical_form(const Matrix2& a) {
  const Matrix2 r = matrix_cubic_residual(a, 1);
  if (!r.is_zero()) throw InvalidInput("matrix is not plastic", matrix_str(r.to_strings()));
  if (a == Matrix2::scalar(FieldElem::rho())) throw ScalarPlastic();
  // A plastic 2x2 matrix other than rho I has a21 != 0: a21 = 0 forces the
  // scalar branch.
  if (a(1, 0).is_zero()) throw InvalidInput("plastic matrix with a21 = 0 is not of conjugate type");
  CanonicalForm out{Matrix2(a(1, 0), a(1, 1), 0, 1), dual_companion()};
  if (!(out.c * a == out.b * out.c)) throw Error("conjugation identity C A = B C failed");
  return out;
}

Tensor11 block_plastic(std::size_t dim, const std::vector<PlasticBlock>& blocks) {
  std::vector<std::vector<FieldElem>> rows(dim, std::vector<FieldElem>(dim));
  std::size_t at = 0;
  for (const auto& b : blocks) {
    if (at + b.size() > dim) throw InvalidInput("plastic blocks exceed the dimension");
    if (b.matrix) {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) rows[at + i][at + j] = (*b.matrix)(i, j);
    } else {
      rows[at][at] = FieldElem::rho();
    }
    at += b.size();
  }
  if (at != dim) throw InvalidInput("plastic blocks do not fill the dimension");
  return FnMatrix::constant(rows);
}

GenOperator build_diag_structure(const Tensor11& j1, const Tensor11& j2) {
  if (j1.dim() != j2.dim()) throw ArityMismatch("J1 and J2 on different charts");
  require_cubic(j1, 1, "J1");
  require_cubic(j2, 1, "J2");
  return GenOperator::diagonal(j1, j2);
}

std::vector<ConditionFailure> two_tensor_conditions(const Metric& g, const Tensor11& j1, const Tensor11& j2,
                                                    SumCubic mode) {
  if (j1.dim() != j2.dim() || g.dim() != j1.dim()) throw ArityMismatch("metric and tensors on different charts");
  std::vector<ConditionFailure> out;
  Tensor11 comm = j1 * j2 - j2 * j1;
  if (!comm.is_zero()) out.push_back({"commute", residual_str(comm)});
  Tensor11 cubic = matrix_cubic_residual(j1 + j2, mode == SumCubic::Dual ? -1 : 1);
  if (!cubic.is_zero()) out.push_back({"sum-cubic", residual_str(cubic)});
  Tensor11 s1 = g.matrix() * j1 - j1.transpose() * g.matrix();
  if (!s1.is_zero()) out.push_back({"g-symmetric-J1", residual_str(s1)});
  Tensor11 s2 = g.matrix() * j2 - j2.transpose() * g.matrix();
  if (!s2.is_zero()) out.push_back({"g-symmetric-J2", residual_str(s2)});
  return out;
}

GenOperator build_two_tensor_structure(const Metric& g, const Tensor11& j1, const Tensor11& j2, SumCubic mode) {
  const auto failures = two_tensor_conditions(g, j1, j2, mode);
  if (!failures.empty()) {
    std::string msg = "two-tensor structure preconditions violated:";
    std::string residual;
    for (const auto& f : failures) {
      msg += " " + f.condition;
      residual += (residual.empty() ? "" : " | ") + f.condition + ": " + f.residual;
    }
    throw InvalidInput(msg, residual);
  }
  const std::size_t n = g.dim();
  Tensor11 k = FnMatrix::identity(n) - j1 * j2 - j1 * j1 - j2 * j2;
  return {j1, k * g.inverse_matrix(), g.matrix(), j2};
}

GenOperator build_dual_structure(const Metric& g, const Tensor11& j) {
  if (g.dim() != j.dim()) throw ArityMismatch("metric and tensor on different charts");
  require_cubic(j, -1, "J");
  const std::size_t n = g.dim();
  return {j, (FnMatrix::identity(n) - j * j) * g.inverse_matrix(), g.matrix(), FnMatrix::zero(n)};
}

bool MetallicParams::is_integer() const {
  auto positive_int = [](const FieldElem& x) {
    return x.is_rational() && x.coeff(0).is_integer() && x.coeff(0).sign() > 0;
  };
  return positive_int(p) && positive_int(q);
}

namespace {

MetallicBranch metallic_branch(const FieldElem& p, const FieldElem& q, int sign) {
  MetallicBranch b;
  b.sign = sign;
  const FieldElem lead = p * p + q - 1;
  const FieldElem tail = p * q - sign;
  b.coefficient_branch = lead.is_zero() && tail.is_zero();
  b.p_witness = p * p * p - p + sign;
  if (!lead.is_zero()) {
    const FieldElem c = -tail / lead;
    b.scalar = c;
    b.scalar_solves_cubic = (c * c * c - c - sign).is_zero();
    b.scalar_is_metallic = (c * c - p * c - q).is_zero();
  }
  return b;
}

}  // namespace

MetallicReport metallic_compat(const MetallicParams& params) {
  MetallicReport r;
  r.params = params;
  r.reading = params.is_integer() ? "integer" : "symbolic";
  r.plastic = metallic_branch(params.p, params.q, 1);
  r.dual = metallic_branch(params.p, params.q, -1);
  return r;
}

}  // namespace gplastic
