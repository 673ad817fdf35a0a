#include "gplastic/connection.hpp"

#include "gplastic/error.hpp"

namespace gplastic {

Connection::Connection(std::size_t dim) : n_(dim), g_(dim * dim * dim, RationalFn(dim)) {
  if (dim == 0) throw InvalidInput("connection on a zero-dimensional chart");
}

Connection::Connection(const std::vector<std::vector<std::vector<RationalFn>>>& gamma) : Connection(gamma.size()) {
  for (std::size_t k = 0; k < n_; ++k) {
    if (gamma[k].size() != n_) throw InvalidInput("christoffel array has wrong shape at index " + std::to_string(k));
    for (std::size_t i = 0; i < n_; ++i) {
      if (gamma[k][i].size() != n_)
        throw InvalidInput("christoffel array has wrong shape at index " + std::to_string(k) + "," + std::to_string(i));
      for (std::size_t j = 0; j < n_; ++j) {
        if (gamma[k][i][j].arity() != n_) throw ArityMismatch("christoffel symbol arity does not match dimension");
        this->gamma(k, i, j) = gamma[k][i][j];
      }
    }
  }
}

FnMatrix Connection::direction_matrix(std::size_t i) const {
  FnMatrix m(n_);
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t j = 0; j < n_; ++j) m(k, j) = gamma(k, i, j);
  return m;
}

FnMatrix Connection::along(const VectorField& x) const {
  if (x.dim() != n_) throw ArityMismatch("vector field and connection on different charts");
  FnMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t j = 0; j < n_; ++j)
        if (!gamma(k, i, j).is_zero()) m(k, j) += x[i] * gamma(k, i, j);
  }
  return m;
}

bool Connection::is_flat() const {
  for (const auto& f : g_)
    if (!f.is_zero()) return false;
  return true;
}

bool Connection::is_symmetric() const {
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!(gamma(k, i, j) == gamma(k, j, i))) return false;
  return true;
}

std::vector<std::vector<std::vector<std::string>>> Connection::to_strings(std::span<const std::string> names) const {
  std::vector<std::vector<std::vector<std::string>>> out(n_, std::vector<std::vector<std::string>>(n_));
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[k][i].push_back(gamma(k, i, j).str(names));
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim()) throw ArityMismatch("vector fields on different charts");
  const std::size_t n = x.dim();
  VectorField r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = directional(x, y[k]) - directional(y, x[k]);
  return r;
}

VectorField cov_deriv_vector(const Connection& nabla, const VectorField& x, const VectorField& y) {
  const std::size_t n = nabla.dim();
  if (x.dim() != n || y.dim() != n) throw ArityMismatch("covariant derivative arguments on different charts");
  VectorField r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = directional(x, y[k]);
  return r + apply(nabla.along(x), y);
}

OneForm cov_deriv_oneform(const Connection& nabla, const VectorField& x, const OneForm& beta) {
  const std::size_t n = nabla.dim();
  if (x.dim() != n || beta.dim() != n) throw ArityMismatch("covariant derivative arguments on different charts");
  OneForm r(n);
  for (std::size_t j = 0; j < n; ++j) r[j] = directional(x, beta[j]);
  // (Gamma_X^T beta)_j = sum_k Gamma_X(k, j) beta_k
  return r - dual_apply(nabla.along(x), beta);
}

Tensor11 cov_deriv_tensor11(const Connection& nabla, const VectorField& x, const Tensor11& j) {
  const std::size_t n = nabla.dim();
  if (x.dim() != n || j.dim() != n) throw ArityMismatch("covariant derivative arguments on different charts");
  Tensor11 r(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) r(a, b) = directional(x, j(a, b));
  FnMatrix gx = nabla.along(x);
  return r + gx * j - j * gx;
}

CovTensor2 cov_deriv_metric(const Connection& nabla, const VectorField& x, const CovTensor2& b) {
  const std::size_t n = nabla.dim();
  if (x.dim() != n || b.dim() != n) throw ArityMismatch("covariant derivative arguments on different charts");
  CovTensor2 r(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) r(p, q) = directional(x, b(p, q));
  FnMatrix gx = nabla.along(x);
  return r - gx.transpose() * b - b * gx;
}

VectorField torsion(const Connection& nabla, const VectorField& x, const VectorField& y) {
  return cov_deriv_vector(nabla, x, y) - cov_deriv_vector(nabla, y, x) - lie_bracket(x, y);
}

VectorField nijenhuis_tm(const Tensor11& j, const VectorField& x, const VectorField& y) {
  VectorField jx = apply(j, x);
  VectorField jy = apply(j, y);
  return lie_bracket(jx, jy) - apply(j, lie_bracket(jx, y)) - apply(j, lie_bracket(x, jy)) +
         apply(j * j, lie_bracket(x, y));
}

bool is_integrable(const Tensor11& j) {
  const std::size_t n = j.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!nijenhuis_tm(j, VectorField::basis(n, a), VectorField::basis(n, b)).is_zero()) return false;
  return true;
}

bool is_parallel(const Connection& nabla, const Tensor11& j) {
  const std::size_t n = nabla.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (!cov_deriv_tensor11(nabla, VectorField::basis(n, i), j).is_zero()) return false;
  return true;
}

bool is_metric_parallel(const Connection& nabla, const Metric& g) {
  const std::size_t n = nabla.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (!cov_deriv_metric(nabla, VectorField::basis(n, i), g).is_zero()) return false;
  return true;
}

RationalFn quasi_statistical_residual(const Metric& g, const Connection& nabla, std::size_t i, std::size_t j,
                                      std::size_t k) {
  const std::size_t n = nabla.dim();
  if (g.dim() != n) throw ArityMismatch("metric and connection on different charts");
  VectorField ei = VectorField::basis(n, i), ej = VectorField::basis(n, j), ek = VectorField::basis(n, k);
  return bilinear(cov_deriv_metric(nabla, ei, g), ej, ek) - bilinear(cov_deriv_metric(nabla, ej, g), ei, ek) +
         bilinear(g.matrix(), torsion(nabla, ei, ej), ek);
}

bool quasi_statistical_check(const Metric& g, const Connection& nabla) {
  const std::size_t n = nabla.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!quasi_statistical_residual(g, nabla, i, j, k).is_zero()) return false;
  return true;
}

}  // namespace gplastic
