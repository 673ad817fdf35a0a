#include "gplastic/generators.hpp"

#include <algorithm>

#include "gplastic/error.hpp"

namespace gplastic {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial + 0x632BE59BD9B4E019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

long Rng::range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

Rational Rng::rational() {
  const long num = range(-5, 5);
  const long den = range(1, 4);
  return {num, den};
}

Rational Rng::nonzero_rational() {
  long num = range(-5, 4);
  if (num >= 0) ++num;
  return {num, range(1, 4)};
}

FieldElem Rng::field_elem(bool with_rho) {
  Rational c0 = rational();
  if (!with_rho) return c0;
  Rational c1 = coin() ? rational() : Rational();
  Rational c2 = coin() ? rational() : Rational();
  return {c0, c1, c2};
}

FieldElem Rng::nonzero_field_elem(bool with_rho) {
  for (;;) {
    FieldElem e = field_elem(with_rho);
    if (!e.is_zero()) return e;
  }
}

Polynomial Rng::polynomial(std::size_t arity, unsigned max_degree, std::size_t max_terms) {
  Polynomial p(arity);
  const std::size_t terms = 1 + below(max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(arity, 0);
    const unsigned degree = static_cast<unsigned>(below(max_degree + 1));
    for (unsigned d = 0; d < degree; ++d) ++exps[below(arity)];
    p += Polynomial::term(arity, Monomial::from_exponents(exps), nonzero_field_elem(false));
  }
  return p;
}

FieldMatrix identity_matrix(std::size_t n) {
  FieldMatrix m(n, FieldVector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  FieldMatrix c(n, FieldVector(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

FieldMatrix transpose(const FieldMatrix& a) {
  const std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  FieldMatrix t(m, FieldVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

Matrix2 random_plastic_2x2(Rng& rng) {
  FieldElem a11 = rng.coin() ? FieldElem(rng.rational()) : rng.field_elem();
  return make_plastic_2x2(a11, rng.nonzero_rational());
}

FieldMatrix random_block_plastic(Rng& rng, std::size_t dim, bool allow_scalar) {
  std::vector<PlasticBlock> blocks;
  std::size_t left = dim;
  while (left > 0) {
    const bool two = left >= 2 && (!allow_scalar || rng.coin());
    if (two) {
      blocks.push_back({random_plastic_2x2(rng)});
      left -= 2;
    } else {
      blocks.push_back({});
      left -= 1;
    }
  }
  FieldMatrix d(dim, FieldVector(dim));
  std::size_t at = 0;
  for (const auto& b : blocks) {
    if (b.matrix) {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) d[at + i][at + j] = (*b.matrix)(i, j);
    } else {
      d[at][at] = FieldElem::rho();
    }
    at += b.size();
  }
  return d;
}

Conjugator random_conjugator(Rng& rng, std::size_t dim) {
  // Product of elementary shears and a diagonal scaling; the inverse is
  // accumulated in reverse.
  Conjugator c{identity_matrix(dim), identity_matrix(dim)};
  const std::size_t shears = dim + 1;
  for (std::size_t s = 0; s < shears; ++s) {
    const std::size_t a = rng.below(dim);
    std::size_t b = rng.below(dim - 1);
    if (b >= a) ++b;
    const Rational t = rng.nonzero_rational();
    FieldMatrix e = identity_matrix(dim), e_inv = identity_matrix(dim);
    e[a][b] = t;
    e_inv[a][b] = -t;
    c.p = matmul(e, c.p);
    c.p_inv = matmul(c.p_inv, e_inv);
  }
  FieldMatrix s = identity_matrix(dim), s_inv = identity_matrix(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const Rational v = rng.nonzero_rational();
    s[i][i] = v;
    s_inv[i][i] = v.inverse();
  }
  c.p = matmul(s, c.p);
  c.p_inv = matmul(c.p_inv, s_inv);
  return c;
}

FieldMatrix conjugate(const FieldMatrix& d, const Conjugator& c) { return matmul(matmul(c.p_inv, d), c.p); }

PolyFrame random_poly_frame(Rng& rng, std::size_t dim) {
  const std::size_t a = rng.below(dim);
  std::size_t b = rng.below(dim - 1);
  if (b >= a) ++b;
  Polynomial f = rng.polynomial(dim, 1, 2);
  if (f.is_constant()) f += Polynomial::variable(dim, rng.below(dim));
  PolyFrame fr{FnMatrix::identity(dim), FnMatrix::identity(dim)};
  fr.p(a, b) = RationalFn(f);
  fr.p_inv(a, b) = RationalFn(-f);
  return fr;
}

std::optional<FieldMatrix> random_selfadjoint_metric(Rng& rng, std::size_t dim,
                                                     const std::vector<FieldMatrix>& selfadjoint) {
  // Unknowns: upper triangle of g0.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) slots.emplace_back(i, j);
  auto assemble = [&](const FieldVector& x) {
    FieldMatrix g(dim, FieldVector(dim));
    for (std::size_t s = 0; s < slots.size(); ++s) {
      g[slots[s].first][slots[s].second] = x[s];
      g[slots[s].second][slots[s].first] = x[s];
    }
    return g;
  };
  FieldMatrix system = linear_map_matrix(slots.size(), [&](const FieldVector& x) {
    const FieldMatrix g = assemble(x);
    FieldVector out;
    for (const auto& d : selfadjoint) {
      const FieldMatrix l = matmul(g, d), r = matmul(transpose(d), g);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) out.push_back(l[i][j] - r[i][j]);
    }
    if (out.empty()) out.push_back(0);
    return out;
  });
  const std::vector<FieldVector> basis = nullspace(system, slots.size());
  if (basis.empty()) return std::nullopt;
  for (int attempt = 0; attempt < 16; ++attempt) {
    FieldVector x(slots.size());
    for (const auto& b : basis) {
      const FieldElem c = rng.field_elem(false);
      for (std::size_t s = 0; s < x.size(); ++s) x[s] += c * b[s];
    }
    FieldMatrix g = assemble(x);
    if (!determinant(g).is_zero()) return g;
  }
  return std::nullopt;
}

bool is_positive_definite(const FieldMatrix& g) {
  for (std::size_t k = 1; k <= g.size(); ++k) {
    FieldMatrix minor(k, FieldVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = g[i][j];
    if (real_sign(determinant(minor)) <= 0) return false;
  }
  return true;
}

namespace {

struct GammaView {
  std::size_t n;
  const FieldVector& x;
  const FieldElem& operator()(std::size_t k, std::size_t i, std::size_t j) const { return x[(k * n + i) * n + j]; }
};

}  // namespace

std::vector<FieldVector> connection_basis(std::size_t n, const ConnectionConstraints& c) {
  const std::size_t unknowns = n * n * n;
  FieldMatrix system = linear_map_matrix(unknowns, [&](const FieldVector& x) {
    GammaView gm{n, x};
    FieldVector out;
    for (const auto& d : c.commute_with) {
      // (Gamma_i D - D Gamma_i)(k, j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j) {
            FieldElem v;
            for (std::size_t l = 0; l < n; ++l) v += gm(k, i, l) * d[l][j] - d[k][l] * gm(l, i, j);
            out.push_back(v);
          }
    }
    if (c.torsion_free)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) out.push_back(gm(k, i, j) - gm(k, j, i));
    // With constant g: (nabla_i g)(j, k) = -sum_l (Gamma^l_ij g_lk + Gamma^l_ik g_jl).
    auto dg = [&](const FieldMatrix& g, std::size_t i, std::size_t j, std::size_t k) {
      FieldElem v;
      for (std::size_t l = 0; l < n; ++l) v -= gm(l, i, j) * g[l][k] + gm(l, i, k) * g[j][l];
      return v;
    };
    if (c.metric_parallel)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = j; k < n; ++k) out.push_back(dg(*c.metric_parallel, i, j, k));
    if (c.quasi_statistical) {
      const FieldMatrix& g = *c.quasi_statistical;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            FieldElem v = dg(g, i, j, k) - dg(g, j, i, k);
            for (std::size_t l = 0; l < n; ++l) v += (gm(l, i, j) - gm(l, j, i)) * g[l][k];
            out.push_back(v);
          }
    }
    if (out.empty()) out.push_back(0);
    return out;
  });
  return nullspace(system, unknowns);
}

Connection random_connection_from_basis(Rng& rng, std::size_t n, const std::vector<FieldVector>& basis,
                                        unsigned max_degree) {
  std::vector<std::vector<std::vector<RationalFn>>> gamma(
      n, std::vector<std::vector<RationalFn>>(n, std::vector<RationalFn>(n, RationalFn(n))));
  for (const auto& b : basis) {
    if (rng.below(4) == 0) continue;
    const RationalFn f(rng.polynomial(n, max_degree, 2));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const FieldElem& c = b[(k * n + i) * n + j];
          if (!c.is_zero()) gamma[k][i][j] += f * c;
        }
  }
  return Connection(gamma);
}

Connection random_connection(Rng& rng, std::size_t n, unsigned max_degree, bool symmetric) {
  std::vector<std::vector<std::vector<RationalFn>>> gamma(
      n, std::vector<std::vector<RationalFn>>(n, std::vector<RationalFn>(n, RationalFn(n))));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
        if (rng.below(3) == 0) continue;
        gamma[k][i][j] = RationalFn(rng.polynomial(n, max_degree, 2));
        if (symmetric) gamma[k][j][i] = gamma[k][i][j];
      }
  return Connection(gamma);
}

Connection frame_change(const Connection& nabla, const PolyFrame& frame) {
  const std::size_t n = nabla.dim();
  std::vector<std::vector<std::vector<RationalFn>>> gamma(
      n, std::vector<std::vector<RationalFn>>(n, std::vector<RationalFn>(n, RationalFn(n))));
  for (std::size_t i = 0; i < n; ++i) {
    FnMatrix m = frame.p_inv * nabla.direction_matrix(i) * frame.p + frame.p_inv * frame.p.partial(i);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) gamma[k][i][j] = m(k, j);
  }
  return Connection(gamma);
}

Connection levi_civita(const Metric& g) {
  const std::size_t n = g.dim();
  const FnMatrix& gm = g.matrix();
  const FnMatrix& inv = g.inverse_matrix();
  std::vector<FnMatrix> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(gm.partial(i));
  const FieldElem half(Rational(1, 2));
  std::vector<std::vector<std::vector<RationalFn>>> gamma(
      n, std::vector<std::vector<RationalFn>>(n, std::vector<RationalFn>(n, RationalFn(n))));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        RationalFn s(n);
        for (std::size_t l = 0; l < n; ++l) {
          if (inv(k, l).is_zero()) continue;
          s += inv(k, l) * (d[i](j, l) + d[j](i, l) - d[l](i, j));
        }
        gamma[k][i][j] = s * half;
      }
  return Connection(gamma);
}

}  // namespace gplastic
