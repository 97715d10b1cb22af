#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracfem {

/// Compressed sparse row matrix with sorted column indices in every row.
template <class Scalar>
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr{0};
  std::vector<int> col;
  std::vector<Scalar> val;
  bool symmetric = true;

  std::size_t nnz() const { return col.size(); }

  /// Position of (i, j) in val, or -1 if outside the pattern.
  long find(int i, int j) const;
  Scalar coeff(int i, int j) const {
    const long p = find(i, j);
    return p < 0 ? Scalar{} : val[static_cast<std::size_t>(p)];
  }

  template <class Other>
  bool same_pattern(const CsrMatrix<Other>& other) const {
    return n == other.n && row_ptr == other.row_ptr && col == other.col;
  }
};

using SparseMatrix = CsrMatrix<double>;
using ComplexSparseMatrix = CsrMatrix<std::complex<double>>;

template <class Scalar>
long CsrMatrix<Scalar>::find(int i, int j) const {
  int lo = row_ptr[i], hi = row_ptr[i + 1];
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (col[mid] < j) lo = mid + 1;
    else hi = mid;
  }
  return (lo < row_ptr[i + 1] && col[lo] == j) ? lo : -1;
}

/// y = A x for any combination of real/complex matrix and vector.
template <class MatScalar, class VecScalar>
auto multiply(const CsrMatrix<MatScalar>& a, std::span<const VecScalar> x) {
  using Out = decltype(MatScalar{} * VecScalar{});
  if (x.size() != static_cast<std::size_t>(a.n))
    throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<Out> y(a.n);
  for (int i = 0; i < a.n; ++i) {
    Out s{};
    for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) s += a.val[p] * x[a.col[p]];
    y[i] = s;
  }
  return y;
}

/// Returns scale_a * A + B for matrices with identical patterns.
ComplexSparseMatrix combine(std::complex<double> scale_a, const SparseMatrix& a,
                            const SparseMatrix& b);

/// Dense identity in CSR form.
SparseMatrix identity_matrix(int n);

/// Builds a CSR matrix from (row, col, value) triplets; duplicates are summed.
SparseMatrix from_triplets(int n, const std::vector<int>& rows,
                           const std::vector<int>& cols,
                           const std::vector<double>& vals);

double norm2(std::span<const double> x);
double norm2(std::span<const std::complex<double>> x);

/// sqrt(x^T A x) for symmetric positive definite A.
double energy_norm(const SparseMatrix& a, std::span<const double> x);

}  // namespace fracfem
