#include "gplastic/chart.hpp"

#include "gplastic/error.hpp"

namespace gplastic {

Chart::Chart(std::size_t dim, std::vector<std::string> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw InvalidInput("chart dimension must be at least 1");
  if (dim > kMaxArity) throw InvalidInput("chart dimension exceeds " + std::to_string(kMaxArity));
  if (coords_.empty()) coords_ = default_coordinate_names(dim);
  if (coords_.size() != dim) throw InvalidInput("coordinate name count does not match chart dimension");
  for (std::size_t i = 0; i < dim; ++i) {
    if (coords_[i].empty() || coords_[i] == "rho") throw InvalidInput("invalid coordinate name '" + coords_[i] + "'");
    for (std::size_t k = 0; k < i; ++k)
      if (coords_[k] == coords_[i]) throw InvalidInput("duplicate coordinate name '" + coords_[i] + "'");
  }
}

FnMatrix FnMatrix::identity(std::size_t n) { return scalar(n, RationalFn::constant(n, 1)); }

FnMatrix FnMatrix::scalar(std::size_t n, const RationalFn& s) {
  FnMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

FnMatrix FnMatrix::constant(const std::vector<std::vector<FieldElem>>& rows) {
  const std::size_t n = rows.size();
  FnMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InvalidInput("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = RationalFn::constant(n, rows[i][j]);
  }
  return m;
}

FnMatrix FnMatrix::parse(const Chart& chart, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t n = chart.dim();
  if (rows.size() != n) throw InvalidInput("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
  FnMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw InvalidInput("matrix row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = chart.parse(rows[i][j]);
  }
  return m;
}

void FnMatrix::same_dim(const FnMatrix& o) const {
  if (o.n_ != n_) throw ArityMismatch("matrix dimension mismatch");
}

FnMatrix FnMatrix::transpose() const {
  FnMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

FnMatrix FnMatrix::pow(unsigned exponent) const {
  FnMatrix result = identity(n_);
  FnMatrix base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

FnMatrix FnMatrix::partial(std::size_t index) const {
  FnMatrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].partial(index);
  return r;
}

bool FnMatrix::is_zero() const {
  for (const auto& f : a_)
    if (!f.is_zero()) return false;
  return true;
}

bool FnMatrix::is_constant() const {
  for (const auto& f : a_)
    if (!f.is_constant()) return false;
  return true;
}

std::vector<std::vector<std::string>> FnMatrix::to_strings(std::span<const std::string> names) const {
  std::vector<std::vector<std::string>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i].push_back((*this)(i, j).str(names));
  return rows;
}

FnMatrix& FnMatrix::operator+=(const FnMatrix& o) {
  same_dim(o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

FnMatrix& FnMatrix::operator-=(const FnMatrix& o) {
  same_dim(o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

FnMatrix FnMatrix::operator-() const {
  FnMatrix r = *this;
  for (auto& f : r.a_) f = -f;
  return r;
}

FnMatrix operator*(const FnMatrix& a, const FnMatrix& b) {
  a.same_dim(b);
  const std::size_t n = a.n_;
  FnMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const RationalFn& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const RationalFn& bkj = b(k, j);
        if (!bkj.is_zero()) r(i, j) += aik * bkj;
      }
    }
  return r;
}

FnMatrix operator*(const RationalFn& s, FnMatrix m) {
  for (auto& f : m.a_) f = s * f;
  return m;
}

FnMatrix operator*(const FieldElem& s, FnMatrix m) {
  for (auto& f : m.a_) f = f * s;
  return m;
}

bool operator==(const FnMatrix& a, const FnMatrix& b) {
  if (a.n_ != b.n_) return false;
  for (std::size_t k = 0; k < a.a_.size(); ++k)
    if (!(a.a_[k] == b.a_[k])) return false;
  return true;
}

namespace {

FnMatrix minor_matrix(const FnMatrix& m, std::size_t row, std::size_t col) {
  const std::size_t n = m.dim();
  // Entries keep the ambient arity; only the matrix shape shrinks.
  FnMatrix r(n - 1);
  for (std::size_t i = 0, ri = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, rj = 0; j < n; ++j) {
      if (j == col) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

RationalFn det_recursive(const FnMatrix& m, std::size_t arity) {
  const std::size_t n = m.dim();
  if (n == 0) return RationalFn::constant(arity, 1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  RationalFn acc(arity);
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    RationalFn term = m(0, j) * det_recursive(minor_matrix(m, 0, j), arity);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

RationalFn determinant(const FnMatrix& m) { return det_recursive(m, m.dim()); }

FnMatrix adjugate(const FnMatrix& m) {
  const std::size_t n = m.dim();
  FnMatrix adj(n);
  if (n == 1) {
    adj(0, 0) = RationalFn::constant(n, 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RationalFn c = det_recursive(minor_matrix(m, j, i), n);
      adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

FnMatrix inverse(const FnMatrix& m) {
  RationalFn d = determinant(m);
  if (d.is_zero()) throw DivisionByZero("matrix determinant is the zero function");
  RationalFn inv_d = RationalFn::constant(m.dim(), 1) / d;
  return inv_d * adjugate(m);
}

Metric::Metric(FnMatrix g) : g_(std::move(g)) {
  const std::size_t n = g_.dim();
  if (n == 0) throw InvalidInput("metric on a zero-dimensional chart");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(g_(i, j) == g_(j, i)))
        throw InvalidInput("metric is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                           (g_(i, j) - g_(j, i)).str());
  det_ = determinant(g_);
  if (det_.is_zero()) throw InvalidInput("metric is degenerate: determinant is the zero function", "0");
  inv_ = (RationalFn::constant(n, 1) / det_) * adjugate(g_);
}

RationalFn directional(const VectorField& x, const RationalFn& f) {
  if (f.arity() != x.dim()) throw ArityMismatch("function and vector field on different charts");
  RationalFn acc(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (!x[i].is_zero()) acc += x[i] * f.partial(i);
  return acc;
}

RationalFn contract(const OneForm& eta, const VectorField& x) {
  if (eta.dim() != x.dim()) throw ArityMismatch("form and vector field on different charts");
  RationalFn acc(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (!eta[i].is_zero() && !x[i].is_zero()) acc += eta[i] * x[i];
  return acc;
}

VectorField apply(const Tensor11& j, const VectorField& x) {
  if (j.dim() != x.dim()) throw ArityMismatch("tensor and vector field on different charts");
  const std::size_t n = x.dim();
  VectorField r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!j(i, k).is_zero() && !x[k].is_zero()) r[i] += j(i, k) * x[k];
  return r;
}

OneForm dual_apply(const Tensor11& j, const OneForm& eta) {
  if (j.dim() != eta.dim()) throw ArityMismatch("tensor and form on different charts");
  const std::size_t n = eta.dim();
  OneForm r(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i)
      if (!j(i, c).is_zero() && !eta[i].is_zero()) r[c] += eta[i] * j(i, c);
  return r;
}

OneForm lower_apply(const FnMatrix& b, const VectorField& x) {
  if (b.dim() != x.dim()) throw ArityMismatch("matrix and vector field on different charts");
  const std::size_t n = x.dim();
  OneForm r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!b(i, k).is_zero() && !x[k].is_zero()) r[i] += b(i, k) * x[k];
  return r;
}

VectorField raise_apply(const FnMatrix& a, const OneForm& eta) {
  if (a.dim() != eta.dim()) throw ArityMismatch("matrix and form on different charts");
  const std::size_t n = eta.dim();
  VectorField r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!a(i, k).is_zero() && !eta[k].is_zero()) r[i] += a(i, k) * eta[k];
  return r;
}

RationalFn bilinear(const CovTensor2& b, const VectorField& x, const VectorField& y) {
  if (b.dim() != x.dim() || b.dim() != y.dim()) throw ArityMismatch("bilinear form arguments on different charts");
  const std::size_t n = x.dim();
  RationalFn acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!b(i, j).is_zero() && !y[j].is_zero()) acc += x[i] * b(i, j) * y[j];
  }
  return acc;
}

OneForm metric_flat(const Metric& g, const VectorField& x) {
  return lower_apply(g.matrix().transpose(), x);
}

VectorField metric_sharp(const Metric& g, const OneForm& eta) { return raise_apply(g.inverse_matrix(), eta); }

bool gsym_check(const Metric& g, const Tensor11& j) {
  if (g.dim() != j.dim()) throw ArityMismatch("metric and tensor on different charts");
  return g.matrix() * j == j.transpose() * g.matrix();
}

Tensor11 tensor_poly(const Tensor11& j, std::span<const FieldElem> coeffs) {
  const std::size_t n = j.dim();
  Tensor11 acc = FnMatrix::zero(n);
  // Horner evaluation from the top coefficient down.
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * j;
    if (!it->is_zero()) acc += FnMatrix::scalar(n, RationalFn::constant(n, *it));
  }
  return acc;
}

}  // namespace gplastic
