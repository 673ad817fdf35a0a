#pragma once

// Seeded instance generation and the property suites. Every suite is exact:
// a check passes only when its residual is the zero rational function.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gplastic/connection.hpp"
#include "gplastic/generators.hpp"

namespace gplastic {

using Json = nlohmann::ordered_json;

/// What generate_instance should produce.
struct InstanceSpec {
  std::size_t dim = 2;  // 2..4
  unsigned degree_cap = 1;  // <= 2; degree of random polynomial coefficients
  std::size_t tensors = 1;
  /// Tensors satisfy J^3 - J - sign I = 0.
  int cubic_sign = 1;
  /// Every 2x2 block non-scalar; odd dims keep one rho block.
  bool nonscalar = false;
  /// Non-constant tensors through a polynomial frame change.
  bool polynomial = false;
  bool with_metric = false;
  /// Metric makes every tensor self-adjoint. Tensors then share one algebra.
  bool g_symmetric = false;
  bool positive_definite = false;
  bool with_connection = false;
  bool torsion_free = false;
  /// Bit k set: nabla J_k = 0.
  unsigned parallel_mask = 0;
  bool metric_parallel = false;
  bool quasi_statistical = false;
  /// Redraw the connection until its torsion is nonzero; Infeasible when the
  /// constraints force a symmetric connection.
  bool require_torsion = false;
};

/// Raised when the requested constraints cannot be met.
class Infeasible : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct Instance {
  std::size_t dim = 0;
  std::vector<Tensor11> tensors;
  std::optional<Metric> metric;
  Connection nabla{1};

  Json to_json() const;
};

/// Deterministic for a fixed (spec, seed).
Instance generate_instance(const InstanceSpec& spec, std::uint64_t seed);
Instance generate_instance(const InstanceSpec& spec, Rng& rng);

/// Max |value| of the components embedded in the reals, over `points` random
/// rational points in [-2, 2]^n. Points where a denominator vanishes exactly
/// are resampled, up to 100 times per point; then PoleError is thrown.
double float_crosscheck(std::span<const RationalFn> components, std::size_t dim, std::size_t points,
                        std::uint64_t seed);

struct SuiteOptions {
  std::size_t trials = 25;
  std::uint64_t seed = 0;
  /// Pins every trial to this dimension; otherwise each suite cycles through
  /// its own schedule.
  std::optional<std::size_t> dim;
  bool float_crosscheck = false;
};

struct SuiteFailure {
  long trial = -1;  // -1 for run-level failures such as a missing witness
  std::uint64_t seed = 0;
  Json instance;
  std::string check;
  std::string residual;
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteFailure> failures;
  double ms = 0;
  /// Suite-specific fields: witnesses, truth tables, discrepancies.
  Json extra = Json::object();
  std::optional<double> float_max;

  bool pass() const { return failures.empty(); }
  Json to_json() const;
};

const std::vector<std::string>& suite_ids();
bool is_suite(const std::string& id);

/// Throws InvalidInput for an unknown id.
SuiteReport run_suite(const std::string& id, const SuiteOptions& options);

}  // namespace gplastic
