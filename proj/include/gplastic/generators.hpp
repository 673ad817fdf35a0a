#pragma once

// Seeded random objects for the verification suites. Everything here is
// deterministic for a fixed Rng state.
//
// PRNG: std::mt19937_64 seeded with splitmix64(seed ^ f(trial)); bounded
// integers by rejection sampling on the raw 64-bit output, so no standard
// distribution (whose output is implementation-defined) is involved.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gplastic/connection.hpp"
#include "gplastic/linsolve.hpp"
#include "gplastic/plastic.hpp"

namespace gplastic {

/// Per-trial seed derived from the run seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  long range(long lo, long hi);
  bool coin() { return below(2) == 1; }

  /// n/d with n in [-5, 5], d in [1, 4].
  Rational rational();
  Rational nonzero_rational();
  /// Rational coefficients on 1, rho, rho^2; each nonzero with probability 1/2
  /// when `with_rho`, otherwise rational only.
  FieldElem field_elem(bool with_rho = true);
  FieldElem nonzero_field_elem(bool with_rho = true);
  /// Up to `max_terms` distinct monomials of total degree <= `max_degree`.
  Polynomial polynomial(std::size_t arity, unsigned max_degree = 2, std::size_t max_terms = 3);

 private:
  std::mt19937_64 engine_;
};

/// Constant square matrices as row lists.
FieldMatrix identity_matrix(std::size_t n);
FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix transpose(const FieldMatrix& a);

/// Random 2x2 plastic matrix from make_plastic_2x2 with random a11 and a21 != 0.
Matrix2 random_plastic_2x2(Rng& rng);

/// Random block-diagonal plastic matrix. With `allow_scalar` false every
/// block is 2x2 when dim is even (odd dims keep one rho block).
FieldMatrix random_block_plastic(Rng& rng, std::size_t dim, bool allow_scalar = true);

/// Random invertible rational matrix P together with P^-1.
struct Conjugator {
  FieldMatrix p;
  FieldMatrix p_inv;
};
Conjugator random_conjugator(Rng& rng, std::size_t dim);

/// P^-1 D P.
FieldMatrix conjugate(const FieldMatrix& d, const Conjugator& c);

/// Polynomial frame change P(x) = I + f(x) E_{ab} with a != b and deg f <= 1,
/// so that P^-1 = I - f E_{ab} is polynomial too.
struct PolyFrame {
  FnMatrix p;
  FnMatrix p_inv;
};
PolyFrame random_poly_frame(Rng& rng, std::size_t dim);

/// Symmetric constant g0 with g0 D = D^T g0 for every D in `selfadjoint`,
/// non-degenerate, chosen as a random combination of the solution space.
/// Returns nullopt if no non-degenerate solution is found.
std::optional<FieldMatrix> random_selfadjoint_metric(Rng& rng, std::size_t dim,
                                                     const std::vector<FieldMatrix>& selfadjoint);

/// Whether a symmetric constant matrix is positive definite (exact, via
/// leading principal minors and real_sign).
bool is_positive_definite(const FieldMatrix& g);

/// Linear constraints on constant Christoffel symbols gamma[k][i][j], flattened
/// as index (k * n + i) * n + j.
struct ConnectionConstraints {
  std::vector<FieldMatrix> commute_with;  // Gamma_i D = D Gamma_i
  bool torsion_free = false;
  std::optional<FieldMatrix> metric_parallel;    // constant g with nabla g = 0
  std::optional<FieldMatrix> quasi_statistical;  // constant g with (g, nabla) quasi-statistical
};

/// Basis of constant Christoffel arrays satisfying all constraints.
std::vector<FieldVector> connection_basis(std::size_t dim, const ConnectionConstraints& c);

/// Connection sum_b f_b(x) B_b with random polynomial coefficients. Every
/// constraint above is pointwise-algebraic, so it survives the combination.
Connection random_connection_from_basis(Rng& rng, std::size_t dim, const std::vector<FieldVector>& basis,
                                        unsigned max_degree = 1);

/// Christoffel symbols with random polynomial entries (no constraints).
Connection random_connection(Rng& rng, std::size_t dim, unsigned max_degree = 1, bool symmetric = false);

/// Gamma'_i = P^-1 Gamma_i P + P^-1 d_i P, the connection expressed in the
/// frame P. It satisfies nabla'(P^-1 J P) = P^-1 (nabla J) P and
/// nabla'(P^T g P) = P^T (nabla g) P.
Connection frame_change(const Connection& nabla, const PolyFrame& frame);

/// Levi-Civita connection of g.
Connection levi_civita(const Metric& g);

}  // namespace gplastic
