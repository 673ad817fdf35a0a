#pragma once

// Plastic matrices (A^3 - A - I = 0) over Q(rho), their 2x2 normal form, and
// the constructors of generalized structures on TM + T*M built from plastic
// and dual-plastic tensors.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gplastic/chart.hpp"
#include "gplastic/generalized.hpp"
#include "gplastic/numberfield.hpp"

namespace gplastic {

/// 2x2 matrix over Q(rho).
class Matrix2 {
 public:
  Matrix2() = default;
  Matrix2(FieldElem a11, FieldElem a12, FieldElem a21, FieldElem a22) : a_{a11, a12, a21, a22} {}

  static Matrix2 identity() { return {1, 0, 0, 1}; }
  static Matrix2 scalar(const FieldElem& s) { return {s, 0, 0, s}; }

  /// Zero-based indices.
  const FieldElem& operator()(std::size_t i, std::size_t j) const { return a_[2 * i + j]; }
  FieldElem& operator()(std::size_t i, std::size_t j) { return a_[2 * i + j]; }

  FieldElem trace() const { return a_[0] + a_[3]; }
  FieldElem det() const { return a_[0] * a_[3] - a_[1] * a_[2]; }
  /// Throws DivisionByZero when singular.
  Matrix2 inverse() const;
  bool is_zero() const;
  Tensor11 to_tensor(std::size_t dim) const;
  std::vector<std::vector<std::string>> to_strings() const;

  friend Matrix2 operator+(const Matrix2& a, const Matrix2& b);
  friend Matrix2 operator-(const Matrix2& a, const Matrix2& b);
  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
  friend Matrix2 operator*(const FieldElem& s, const Matrix2& a);
  friend bool operator==(const Matrix2& a, const Matrix2& b) { return a.a_ == b.a_; }

 private:
  std::array<FieldElem, 4> a_;
};

/// A^3 - A - sign * I; sign must be +1 or -1.
Matrix2 matrix_cubic_residual(const Matrix2& a, int sign);
Tensor11 matrix_cubic_residual(const Tensor11& a, int sign);

/// The plastic matrix with free entries a11, a21, a22 and
///   a12 = (1 - a11 a22 - a11^2 - a22^2) / a21.
/// Requires a21 != 0 and (a11 + a22)^3 - (a11 + a22) + 1 = 0; throws
/// InvalidInput otherwise.
Matrix2 make_plastic_2x2(const FieldElem& a11, const FieldElem& a21, const FieldElem& a22);
/// Same with a22 = -rho - a11, the only trace available in Q(rho).
Matrix2 make_plastic_2x2(const FieldElem& a11, const FieldElem& a21);

/// Raised by canonical_form for the scalar plastic matrix rho I.
class ScalarPlastic : public Error {
 public:
  ScalarPlastic() : Error("plastic matrix is the scalar rho I; no conjugator exists") {}
};

/// A = C^-1 B C with B = [[alpha, 1 - alpha^2], [1, 0]], alpha = -rho.
struct CanonicalForm {
  Matrix2 c;
  Matrix2 b;
};

/// The companion form B above.
Matrix2 dual_companion();

/// Throws ScalarPlastic for rho I and InvalidInput for non-plastic A. The
/// identity C A = B C is verified before returning.
CanonicalForm canonical_form(const Matrix2& a);

/// One diagonal block of a block plastic tensor: either the scalar rho or a
/// 2x2 plastic matrix.
struct PlasticBlock {
  std::optional<Matrix2> matrix;  // empty means the 1x1 block rho

  std::size_t size() const { return matrix ? 2 : 1; }
};

/// Constant block-diagonal tensor of the given blocks; the block sizes must
/// add up to dim.
Tensor11 block_plastic(std::size_t dim, const std::vector<PlasticBlock>& blocks);

/// diag(J1, J2*). Requires both to be plastic.
GenOperator build_diag_structure(const Tensor11& j1, const Tensor11& j2);

/// Which cubic J1 + J2 is required to satisfy.
enum class SumCubic {
  /// (J1 + J2)^3 - (J1 + J2) + I = 0; the result satisfies J^3 - J - I = 0.
  Dual,
  /// (J1 + J2)^3 - (J1 + J2) - I = 0; the result satisfies J^3 - J + I = 0.
  Plastic,
};

/// One failed precondition of build_two_tensor_structure.
struct ConditionFailure {
  std::string condition;  // "commute", "sum-cubic", "g-symmetric-J1", "g-symmetric-J2"
  std::string residual;
};

std::vector<ConditionFailure> two_tensor_conditions(const Metric& g, const Tensor11& j1, const Tensor11& j2,
                                                    SumCubic mode = SumCubic::Dual);

/// [[J1, (I - J1 J2 - J1^2 - J2^2) g^-1], [g, J2*]]. Throws InvalidInput
/// listing every violated condition.
GenOperator build_two_tensor_structure(const Metric& g, const Tensor11& j1, const Tensor11& j2,
                                       SumCubic mode = SumCubic::Dual);

/// [[J, (I - J^2) g^-1], [g, 0]] for J with J^3 - J + I = 0.
GenOperator build_dual_structure(const Metric& g, const Tensor11& j);

struct MetallicParams {
  FieldElem p;
  FieldElem q;

  /// Both are positive integers, as the metallic definition asks.
  bool is_integer() const;
};

/// Compatibility of J^2 = pJ + qI with the plastic cubic (sign +1) or the
/// dual cubic (sign -1). Uses J^3 - J - sign I = (p^2 + q - 1) J + (pq - sign) I.
struct MetallicBranch {
  int sign = 1;
  /// First branch: p^2 + q - 1 = 0 and pq - sign = 0.
  bool coefficient_branch = false;
  /// Value of p^3 - p + sign, zero exactly when p solves the branch.
  FieldElem p_witness;
  /// Second branch, present when p^2 + q - 1 != 0: the forced scalar J = c I.
  std::optional<FieldElem> scalar;
  /// Whether c satisfies c^3 - c - sign = 0.
  bool scalar_solves_cubic = false;
  /// Whether c satisfies c^2 - pc - q = 0, i.e. cI is itself metallic.
  bool scalar_is_metallic = false;
};

struct MetallicReport {
  MetallicParams params;
  std::string reading;  // "integer" or "symbolic"
  MetallicBranch plastic;
  MetallicBranch dual;
};

MetallicReport metallic_compat(const MetallicParams& params);

}  // namespace gplastic
