#include <cmath>

#include "gplastic/error.hpp"
#include "gplastic/verifier.hpp"

namespace gplastic {

namespace {

FieldMatrix scaled(const FieldMatrix& m, const FieldElem& s) {
  FieldMatrix r = m;
  for (auto& row : r)
    for (auto& x : row) x *= s;
  return r;
}

// A plastic tensor in the algebra generated by `base`: per 2x2 block either
// the block S itself or its conjugate -rho I - S; rho blocks stay rho.
FieldMatrix sibling_plastic(Rng& rng, const FieldMatrix& base) {
  const std::size_t n = base.size();
  FieldMatrix d = base;
  for (std::size_t at = 0; at < n;) {
    const bool two = at + 1 < n && !(base[at][at + 1].is_zero() && base[at + 1][at].is_zero());
    if (!two) {
      ++at;
      continue;
    }
    if (rng.coin())
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          d[at + i][at + j] = (i == j ? -FieldElem::rho() : FieldElem(0)) - base[at + i][at + j];
    at += 2;
  }
  return d;
}

bool has_two_block(const FieldMatrix& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!d[i][i + 1].is_zero() || !d[i + 1][i].is_zero()) return true;
  return false;
}

// Exact certificate, in dimension 2, that the self-adjoint metrics of a
// non-scalar plastic J are all indefinite: det restricted to the solution
// space is a negative definite binary form.
std::string indefiniteness_certificate(const FieldMatrix& j) {
  FieldMatrix system = linear_map_matrix(3, [&](const FieldVector& x) {
    FieldMatrix g{{x[0], x[1]}, {x[1], x[2]}};
    FieldMatrix l = matmul(g, j), r = matmul(transpose(j), g);
    return FieldVector{l[0][0] - r[0][0], l[0][1] - r[0][1], l[1][0] - r[1][0], l[1][1] - r[1][1]};
  });
  const auto basis = nullspace(system, 3);
  if (basis.size() != 2) return {};
  auto det = [](const FieldVector& x) { return x[0] * x[2] - x[1] * x[1]; };
  FieldVector sum(3);
  for (std::size_t i = 0; i < 3; ++i) sum[i] = basis[0][i] + basis[1][i];
  const FieldElem a = det(basis[0]), c = det(basis[1]);
  const FieldElem b = det(sum) - a - c;
  const FieldElem disc = b * b - FieldElem(4) * a * c;
  if (real_sign(a) < 0 && real_sign(disc) < 0)
    return "det on the self-adjoint space is " + a.str() + " u^2 + (" + b.str() + ") uv + (" + c.str() +
           ") v^2, negative definite (discriminant " + disc.str() + ")";
  return {};
}

Json rows_json(const FnMatrix& m) { return Json(m.to_strings()); }

}  // namespace

Json Instance::to_json() const {
  Json j;
  j["chart"] = {{"dim", dim}};
  if (metric) j["metric"] = rows_json(metric->matrix());
  if (!nabla.is_flat()) j["christoffels"] = nabla.to_strings();
  Json t = Json::object();
  if (tensors.size() == 1) {
    t["J"] = rows_json(tensors[0]);
  } else {
    for (std::size_t k = 0; k < tensors.size(); ++k) t["J" + std::to_string(k + 1)] = rows_json(tensors[k]);
  }
  j["tensors"] = t;
  return j;
}

Instance generate_instance(const InstanceSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return generate_instance(spec, rng);
}

Instance generate_instance(const InstanceSpec& spec, Rng& rng) {
  const std::size_t n = spec.dim;
  if (n < 2 || n > 4) throw InvalidInput("instance dimension must be in [2, 4]");
  if (spec.degree_cap > 2) throw InvalidInput("degree cap must be at most 2");
  if (spec.cubic_sign != 1 && spec.cubic_sign != -1) throw InvalidInput("cubic sign must be +1 or -1");
  if ((spec.g_symmetric || spec.positive_definite || spec.metric_parallel || spec.quasi_statistical) &&
      !spec.with_metric)
    throw InvalidInput("metric constraints require with_metric");
  const bool frame_connection = spec.polynomial && (spec.parallel_mask != 0 || spec.metric_parallel);
  if (spec.require_torsion && (spec.torsion_free || !spec.with_connection))
    throw InvalidInput("require_torsion needs a connection that may have torsion");
  if (frame_connection && (spec.torsion_free || spec.quasi_statistical))
    throw Infeasible("torsion constraints are not preserved by the polynomial frame change");
  if (spec.polynomial && spec.quasi_statistical)
    throw Infeasible("quasi-statistical generation needs a constant metric");

  // Constant block tensors D_k and one shared constant conjugator.
  std::vector<FieldMatrix> blocks;
  blocks.push_back(random_block_plastic(rng, n, !spec.nonscalar));
  for (std::size_t k = 1; k < spec.tensors; ++k)
    blocks.push_back(spec.g_symmetric ? sibling_plastic(rng, blocks[0])
                                      : random_block_plastic(rng, n, !spec.nonscalar));
  const Conjugator conj = random_conjugator(rng, n);
  std::vector<FieldMatrix> constant;
  for (const auto& d : blocks) constant.push_back(conjugate(scaled(d, spec.cubic_sign), conj));

  std::optional<FieldMatrix> g0;
  if (spec.with_metric) {
    if (spec.positive_definite && spec.g_symmetric) {
      for (const auto& d : blocks)
        if (has_two_block(d)) {
          std::string cert = n == 2 ? indefiniteness_certificate(constant[0]) : std::string();
          throw Infeasible(
              "no positive-definite metric makes a non-scalar plastic tensor self-adjoint: its eigenvalues are "
              "not all real",
              cert);
        }
    }
    std::vector<FieldMatrix> selfadjoint;
    if (spec.g_symmetric) selfadjoint = constant;
    for (int attempt = 0; attempt < 64 && !g0; ++attempt) {
      auto g = random_selfadjoint_metric(rng, n, selfadjoint);
      if (g && (!spec.positive_definite || is_positive_definite(*g))) g0 = g;
    }
    if (!g0) throw Infeasible("no admissible metric found");
  }

  Instance inst;
  inst.dim = n;
  std::optional<PolyFrame> frame;
  if (spec.polynomial) frame = random_poly_frame(rng, n);
  for (const auto& c : constant) {
    Tensor11 t = FnMatrix::constant(c);
    if (frame) t = frame->p_inv * t * frame->p;
    inst.tensors.push_back(t);
  }
  if (g0) {
    FnMatrix g = FnMatrix::constant(*g0);
    if (frame) g = frame->p.transpose() * g * frame->p;
    inst.metric.emplace(g);
  }

  inst.nabla = Connection(n);
  if (spec.with_connection) {
    ConnectionConstraints cc;
    for (std::size_t k = 0; k < constant.size(); ++k)
      if (spec.parallel_mask & (1U << k)) cc.commute_with.push_back(constant[k]);
    cc.torsion_free = spec.torsion_free;
    if (spec.metric_parallel) cc.metric_parallel = g0;
    if (spec.quasi_statistical) cc.quasi_statistical = g0;
    const auto basis = connection_basis(n, cc);
    Connection nabla = random_connection_from_basis(rng, n, basis, spec.degree_cap);
    if (spec.require_torsion) {
      bool asymmetric = false;
      for (const auto& b : basis)
        for (std::size_t k = 0; k < n && !asymmetric; ++k)
          for (std::size_t i = 0; i < n && !asymmetric; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
              if (!(b[(k * n + i) * n + j] - b[(k * n + j) * n + i]).is_zero()) {
                asymmetric = true;
                break;
              }
      if (!asymmetric) throw Infeasible("the connection constraints force zero torsion");
      while (nabla.is_symmetric()) nabla = random_connection_from_basis(rng, n, basis, spec.degree_cap);
    }
    inst.nabla = frame_connection ? frame_change(nabla, *frame) : nabla;
  }
  return inst;
}

namespace {

double eval_poly(const Polynomial& p, const std::vector<double>& x) {
  double s = 0;
  for (const auto& [m, c] : p.terms()) {
    double v = c.embed();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (unsigned e = m.exponent(i); e > 0; --e) v *= x[i];
    s += v;
  }
  return s;
}

}  // namespace

double float_crosscheck(std::span<const RationalFn> components, std::size_t dim, std::size_t points,
                        std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0;
  for (std::size_t p = 0; p < points; ++p) {
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      std::vector<FieldElem> exact;
      std::vector<double> approx;
      for (std::size_t i = 0; i < dim; ++i) {
        const long den = rng.range(1, 8);
        const Rational r(rng.range(-2 * den, 2 * den), den);
        exact.emplace_back(r);
        approx.push_back(r.to_double());
      }
      bool pole = false;
      for (const auto& f : components)
        if (f.den().evaluate(exact).is_zero()) {
          pole = true;
          break;
        }
      if (pole) continue;
      placed = true;
      for (const auto& f : components) {
        const double v = eval_poly(f.num(), approx) / eval_poly(f.den(), approx);
        worst = std::max(worst, std::fabs(v));
      }
    }
    if (!placed) throw PoleError("no pole-free sample point found after 100 attempts");
  }
  return worst;
}

}  // namespace gplastic
