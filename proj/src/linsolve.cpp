#include "gplastic/linsolve.hpp"

#include "gplastic/error.hpp"

namespace gplastic {

std::vector<std::size_t> rref(FieldMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    const FieldElem inv = m[row][col].inverse();
    for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const FieldElem f = m[r][col];
      for (std::size_t c = col; c < cols; ++c)
        if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<FieldVector> nullspace(FieldMatrix m, std::size_t cols) {
  for (const auto& r : m)
    if (r.size() != cols) throw ArityMismatch("ragged matrix in nullspace");
  const std::vector<std::size_t> pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<FieldVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    FieldVector v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FieldVector> solve(FieldMatrix m, const FieldVector& b) {
  if (m.size() != b.size()) throw ArityMismatch("right-hand side length differs from row count");
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t r = 0; r < m.size(); ++r) m[r].push_back(b[r]);
  const std::vector<std::size_t> pivots = rref(m, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  FieldVector x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

FieldMatrix linear_map_matrix(std::size_t unknowns, const std::function<FieldVector(const FieldVector&)>& map) {
  FieldMatrix out;
  for (std::size_t u = 0; u < unknowns; ++u) {
    FieldVector e(unknowns);
    e[u] = 1;
    FieldVector image = map(e);
    if (out.empty()) out.assign(image.size(), FieldVector(unknowns));
    if (image.size() != out.size()) throw ArityMismatch("linear map changed output length");
    for (std::size_t r = 0; r < image.size(); ++r) out[r][u] = image[r];
  }
  return out;
}

FieldElem determinant(FieldMatrix m) {
  const std::size_t n = m.size();
  FieldElem det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col].is_zero()) ++p;
    if (p == n) return 0;
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const FieldElem inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const FieldElem f = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace gplastic
