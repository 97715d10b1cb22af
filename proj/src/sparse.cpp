#include "fracfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fracfem {

ComplexSparseMatrix combine(std::complex<double> scale_a, const SparseMatrix& a,
                            const SparseMatrix& b) {
  if (!a.same_pattern(b))
    throw std::invalid_argument("combine: matrices must share a pattern");
  ComplexSparseMatrix c;
  c.n = a.n;
  c.row_ptr = a.row_ptr;
  c.col = a.col;
  c.symmetric = a.symmetric && b.symmetric;
  c.val.resize(a.val.size());
  for (std::size_t p = 0; p < a.val.size(); ++p) c.val[p] = scale_a * a.val[p] + b.val[p];
  return c;
}

SparseMatrix identity_matrix(int n) {
  SparseMatrix m;
  m.n = n;
  m.row_ptr.resize(n + 1);
  std::iota(m.row_ptr.begin(), m.row_ptr.end(), 0);
  m.col.resize(n);
  std::iota(m.col.begin(), m.col.end(), 0);
  m.val.assign(n, 1.0);
  return m;
}

SparseMatrix from_triplets(int n, const std::vector<int>& rows,
                           const std::vector<int>& cols,
                           const std::vector<double>& vals) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return rows[x] != rows[y] ? rows[x] < rows[y] : cols[x] < cols[y];
  });
  SparseMatrix m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  int last_r = -1, last_c = -1;
  for (std::size_t k : order) {
    if (rows[k] == last_r && cols[k] == last_c) {
      m.val.back() += vals[k];
      continue;
    }
    m.col.push_back(cols[k]);
    m.val.push_back(vals[k]);
    ++m.row_ptr[rows[k] + 1];
    last_r = rows[k];
    last_c = cols[k];
  }
  for (int i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  m.symmetric = false;
  return m;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double norm2(std::span<const std::complex<double>> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

double energy_norm(const SparseMatrix& a, std::span<const double> x) {
  const auto ax = multiply(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * ax[i];
  return std::sqrt(std::max(s, 0.0));
}

}  // namespace fracfem
