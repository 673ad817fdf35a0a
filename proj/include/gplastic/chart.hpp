#pragma once

// Tensor fields on a single coordinate chart R^n with coordinates x1..xn.
// Component conventions:
//   VectorField X = sum X^i d_i, OneForm eta = sum eta_i dx^i,
//   Tensor11 J acts by (JX)^i = sum_j J(i,j) X^j,
//   a (0,2)-tensor b is stored as b(i,j) = b(d_i, d_j).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gplastic/error.hpp"
#include "gplastic/rational_fn.hpp"

namespace gplastic {

class Chart {
 public:
  /// Throws InvalidInput for dim == 0 or dim > kMaxArity.
  explicit Chart(std::size_t dim, std::vector<std::string> coords = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& coords() const { return coords_; }

  RationalFn parse(std::string_view text) const { return RationalFn::parse(text, dim_, coords_); }
  RationalFn coordinate(std::size_t i) const { return RationalFn::variable(dim_, i); }
  RationalFn constant(const FieldElem& c) const { return RationalFn::constant(dim_, c); }

 private:
  std::size_t dim_;
  std::vector<std::string> coords_;
};

/// n components of RationalFn; Tag separates vector fields from 1-forms.
template <class Tag>
class FieldVec {
 public:
  FieldVec() = default;
  explicit FieldVec(std::size_t n) : c_(n, RationalFn(n)) {}
  explicit FieldVec(std::vector<RationalFn> components) : c_(std::move(components)) { check(); }

  static FieldVec zero(std::size_t n) { return FieldVec(n); }
  /// Coordinate basis element (d_i or dx^i).
  static FieldVec basis(std::size_t n, std::size_t i) {
    FieldVec v(n);
    v.c_.at(i) = RationalFn::constant(n, 1);
    return v;
  }

  std::size_t dim() const { return c_.size(); }
  const RationalFn& operator[](std::size_t i) const { return c_[i]; }
  RationalFn& operator[](std::size_t i) { return c_[i]; }
  const std::vector<RationalFn>& components() const { return c_; }

  bool is_zero() const {
    for (const auto& f : c_)
      if (!f.is_zero()) return false;
    return true;
  }

  FieldVec& operator+=(const FieldVec& o) {
    same_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  FieldVec& operator-=(const FieldVec& o) {
    same_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend FieldVec operator+(FieldVec a, const FieldVec& b) { return a += b; }
  friend FieldVec operator-(FieldVec a, const FieldVec& b) { return a -= b; }
  FieldVec operator-() const {
    FieldVec r = *this;
    for (auto& f : r.c_) f = -f;
    return r;
  }
  friend FieldVec operator*(const RationalFn& f, FieldVec v) {
    for (auto& x : v.c_) x = f * x;
    return v;
  }
  friend FieldVec operator*(const FieldElem& s, FieldVec v) {
    for (auto& x : v.c_) x = x * s;
    return v;
  }
  friend bool operator==(const FieldVec& a, const FieldVec& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

 private:
  void check() const {
    for (const auto& f : c_)
      if (f.arity() != c_.size()) throw ArityMismatch("component arity does not match dimension");
  }
  void same_dim(const FieldVec& o) const {
    if (o.dim() != dim()) throw ArityMismatch("field dimension mismatch");
  }

  std::vector<RationalFn> c_;
};

using VectorField = FieldVec<struct VectorTag>;
using OneForm = FieldVec<struct FormTag>;

/// Square n x n matrix of RationalFn, row-major.
class FnMatrix {
 public:
  FnMatrix() = default;
  explicit FnMatrix(std::size_t n) : n_(n), a_(n * n, RationalFn(n)) {}

  static FnMatrix zero(std::size_t n) { return FnMatrix(n); }
  static FnMatrix identity(std::size_t n);
  static FnMatrix scalar(std::size_t n, const RationalFn& s);
  /// Constant matrix from rows of field elements.
  static FnMatrix constant(const std::vector<std::vector<FieldElem>>& rows);
  /// Matrix from rows of polynomial strings on the chart.
  static FnMatrix parse(const Chart& chart, const std::vector<std::vector<std::string>>& rows);

  std::size_t dim() const { return n_; }
  const RationalFn& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  RationalFn& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  FnMatrix transpose() const;
  FnMatrix pow(unsigned exponent) const;
  FnMatrix partial(std::size_t index) const;
  bool is_zero() const;
  bool is_constant() const;
  std::vector<std::vector<std::string>> to_strings(std::span<const std::string> names = {}) const;

  FnMatrix& operator+=(const FnMatrix& o);
  FnMatrix& operator-=(const FnMatrix& o);
  friend FnMatrix operator+(FnMatrix a, const FnMatrix& b) { return a += b; }
  friend FnMatrix operator-(FnMatrix a, const FnMatrix& b) { return a -= b; }
  FnMatrix operator-() const;
  friend FnMatrix operator*(const FnMatrix& a, const FnMatrix& b);
  friend FnMatrix operator*(const RationalFn& s, FnMatrix m);
  friend FnMatrix operator*(const FieldElem& s, FnMatrix m);
  friend bool operator==(const FnMatrix& a, const FnMatrix& b);

 private:
  void same_dim(const FnMatrix& o) const;

  std::size_t n_ = 0;
  std::vector<RationalFn> a_;
};

/// (1,1)-tensor field.
using Tensor11 = FnMatrix;
/// Covariant 2-tensor field b(i,j) = b(d_i, d_j).
using CovTensor2 = FnMatrix;

RationalFn determinant(const FnMatrix& m);
FnMatrix adjugate(const FnMatrix& m);
/// Throws DivisionByZero when the determinant is the zero function.
FnMatrix inverse(const FnMatrix& m);

/// Non-degenerate symmetric (0,2)-tensor; any signature. The inverse is
/// computed eagerly on construction.
class Metric {
 public:
  /// Validates symmetry and a nonzero determinant; throws InvalidInput.
  explicit Metric(FnMatrix g);

  std::size_t dim() const { return g_.dim(); }
  const FnMatrix& matrix() const { return g_; }
  const FnMatrix& inverse_matrix() const { return inv_; }
  const RationalFn& det() const { return det_; }
  const RationalFn& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }

 private:
  FnMatrix g_;
  FnMatrix inv_;
  RationalFn det_;
};

/// X(f) = sum X^i d_i f.
RationalFn directional(const VectorField& x, const RationalFn& f);
/// eta(X) = sum eta_i X^i.
RationalFn contract(const OneForm& eta, const VectorField& x);

VectorField apply(const Tensor11& j, const VectorField& x);
/// Dual action (J*eta)(X) = eta(JX), i.e. (J*eta)_j = sum_i eta_i J(i,j).
OneForm dual_apply(const Tensor11& j, const OneForm& eta);
/// Action of a matrix sending vectors to forms: (B X)_i = sum_j B(i,j) X^j.
OneForm lower_apply(const FnMatrix& b, const VectorField& x);
/// Action of a matrix sending forms to vectors: (A eta)^i = sum_j A(i,j) eta_j.
VectorField raise_apply(const FnMatrix& a, const OneForm& eta);

/// b(X, Y) for a (0,2)-tensor.
RationalFn bilinear(const CovTensor2& b, const VectorField& x, const VectorField& y);

/// (flat X)_j = sum_i g(i,j) X^i.
OneForm metric_flat(const Metric& g, const VectorField& x);
/// Inverse of metric_flat through the cached inverse.
VectorField metric_sharp(const Metric& g, const OneForm& eta);

/// g(JX, Y) == g(X, JY) for all X, Y, checked as g J == J^T g.
bool gsym_check(const Metric& g, const Tensor11& j);

/// sum_k coeffs[k] J^k.
Tensor11 tensor_poly(const Tensor11& j, std::span<const FieldElem> coeffs);

}  // namespace gplastic
