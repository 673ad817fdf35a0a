#pragma once

// Affine connections on a chart. Christoffel convention:
//   (nabla_{d_i} d_j)^k = Gamma^k_{ij},  stored as gamma(k, i, j).
// No symmetry in (i, j) is assumed, so torsion is allowed.

#include <cstddef>
#include <vector>

#include "gplastic/chart.hpp"

namespace gplastic {

class Connection {
 public:
  /// The flat connection (all Christoffel symbols zero).
  explicit Connection(std::size_t dim);
  /// Christoffels in the order gamma[k][i][j] = Gamma^k_{ij}.
  explicit Connection(const std::vector<std::vector<std::vector<RationalFn>>>& gamma);

  std::size_t dim() const { return n_; }
  const RationalFn& gamma(std::size_t k, std::size_t i, std::size_t j) const { return g_[(k * n_ + i) * n_ + j]; }
  RationalFn& gamma(std::size_t k, std::size_t i, std::size_t j) { return g_[(k * n_ + i) * n_ + j]; }
  /// Matrix (Gamma_i)(k, j) = Gamma^k_{ij}, so nabla_{d_i} Y = d_i Y + Gamma_i Y.
  FnMatrix direction_matrix(std::size_t i) const;
  /// Matrix Gamma_X = sum_i X^i Gamma_i.
  FnMatrix along(const VectorField& x) const;
  bool is_flat() const;
  bool is_symmetric() const;

  std::vector<std::vector<std::vector<std::string>>> to_strings(std::span<const std::string> names = {}) const;

 private:
  std::size_t n_;
  std::vector<RationalFn> g_;
};

VectorField lie_bracket(const VectorField& x, const VectorField& y);

VectorField cov_deriv_vector(const Connection& nabla, const VectorField& x, const VectorField& y);
/// (nabla_X beta)(Y) = X(beta(Y)) - beta(nabla_X Y).
OneForm cov_deriv_oneform(const Connection& nabla, const VectorField& x, const OneForm& beta);
/// (nabla_X J) Y = nabla_X (JY) - J nabla_X Y.
Tensor11 cov_deriv_tensor11(const Connection& nabla, const VectorField& x, const Tensor11& j);
/// (nabla_X b)(Y, Z) = X(b(Y,Z)) - b(nabla_X Y, Z) - b(Y, nabla_X Z).
CovTensor2 cov_deriv_metric(const Connection& nabla, const VectorField& x, const CovTensor2& b);
inline CovTensor2 cov_deriv_metric(const Connection& nabla, const VectorField& x, const Metric& g) {
  return cov_deriv_metric(nabla, x, g.matrix());
}

/// T(X,Y) = nabla_X Y - nabla_Y X - [X,Y].
VectorField torsion(const Connection& nabla, const VectorField& x, const VectorField& y);

/// N(J)(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] + J^2[X,Y].
VectorField nijenhuis_tm(const Tensor11& j, const VectorField& x, const VectorField& y);
/// N(J)(d_i, d_j) = 0 for all i < j.
bool is_integrable(const Tensor11& j);

/// nabla_{d_i} J = 0 for all i.
bool is_parallel(const Connection& nabla, const Tensor11& j);
/// nabla_{d_i} g = 0 for all i.
bool is_metric_parallel(const Connection& nabla, const Metric& g);

/// Q(X,Y,Z) = (nabla_X g)(Y,Z) - (nabla_Y g)(X,Z) + g(T(X,Y), Z) on the coordinate
/// triple (d_i, d_j, d_k).
RationalFn quasi_statistical_residual(const Metric& g, const Connection& nabla, std::size_t i, std::size_t j,
                                      std::size_t k);
/// Q vanishes on every coordinate triple with i < j.
bool quasi_statistical_check(const Metric& g, const Connection& nabla);

}  // namespace gplastic
