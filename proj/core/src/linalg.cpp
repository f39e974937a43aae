#include "virmart/linalg.hpp"

namespace virmart {

std::vector<size_t> rref(KMat& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    // Prefer a structurally simple pivot: lowest numerator degree first.
    size_t best = rows;
    for (size_t r = row; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      if (best == rows ||
          m[r][col].num().degree() + m[r][col].den().degree() <
              m[best][col].num().degree() + m[best][col].den().degree())
        best = r;
    }
    if (best == rows) continue;
    std::swap(m[row], m[best]);
    KRat inv = m[row][col].inverse();
    for (size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      KRat f = m[r][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<KVec> null_space(KMat m, size_t ncols) {
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(ncols, false);
  for (size_t p : pivots) is_pivot[p] = true;

  std::vector<KVec> basis;
  for (size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    KVec v(ncols, KRat(0));
    v[free] = KRat(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      if (!m[r][free].is_zero()) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<KVec> solve(KMat m, KVec rhs) {
  const size_t ncols = m.empty() ? 0 : m[0].size();
  for (size_t r = 0; r < m.size(); ++r) m[r].push_back(rhs[r]);
  std::vector<size_t> pivots = rref(m);
  if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
  KVec x(ncols, KRat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][ncols];
  return x;
}

size_t rank(KMat m) {
  return rref(m).size();
}

std::optional<KVec> in_span(const std::vector<KVec>& span, const KVec& v) {
  if (span.empty()) {
    for (const KRat& x : v)
      if (!x.is_zero()) return std::nullopt;
    return KVec{};
  }
  // Columns are the spanning vectors; solve for the coordinates.
  const size_t dim = v.size();
  KMat m(dim, KVec(span.size(), KRat(0)));
  for (size_t j = 0; j < span.size(); ++j)
    for (size_t i = 0; i < dim; ++i) m[i][j] = span[j][i];
  return solve(std::move(m), v);
}

}  // namespace virmart
