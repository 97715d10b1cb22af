#include "fracfem/ldlt.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <limits>
#include <numeric>

namespace fracfem {

namespace {

std::vector<int> amd_ordering(int n, std::span<const int> row_ptr,
                              std::span<const int> col) {
  std::vector<Eigen::Triplet<double, int>> entries;
  entries.reserve(col.size());
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      entries.emplace_back(i, col[p], 1.0);
  Eigen::SparseMatrix<double, Eigen::ColMajor, int> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::AMDOrdering<int> amd;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> p;
  amd(a, p);
  return {p.indices().data(), p.indices().data() + n};
}

}  // namespace

SymbolicLdlt::SymbolicLdlt(int n, std::span<const int> row_ptr,
                           std::span<const int> col, Ordering ordering)
    : n_(n) {
  if (ordering == Ordering::amd && n > 0) {
    perm_ = amd_ordering(n, row_ptr, col);
  } else {
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), 0);
  }
  pinv_.resize(n);
  for (int k = 0; k < n; ++k) pinv_[perm_[k]] = k;

  // Elimination tree and column counts of L (Davis, LDL).
  parent_.assign(n, -1);
  std::vector<int> flag(n), lnz(n, 0);
  for (int k = 0; k < n; ++k) {
    flag[k] = k;
    const int row = perm_[k];
    for (int p = row_ptr[row]; p < row_ptr[row + 1]; ++p) {
      int i = pinv_[col[p]];
      if (i >= k) continue;
      for (; flag[i] != k; i = parent_[i]) {
        if (parent_[i] == -1) parent_[i] = k;
        ++lnz[i];
        flag[i] = k;
      }
    }
  }
  col_ptr_.assign(n + 1, 0);
  for (int k = 0; k < n; ++k) col_ptr_[k + 1] = col_ptr_[k] + lnz[k];
}

template <class Scalar>
LdltFactor<Scalar>::LdltFactor(std::shared_ptr<const SymbolicLdlt> symbolic,
                               const CsrMatrix<Scalar>& a)
    : symbolic_(std::move(symbolic)) {
  const int n = symbolic_->size();
  if (a.n != n) throw std::invalid_argument("LdltFactor: dimension mismatch");
  const auto& perm = symbolic_->perm();
  const auto& pinv = symbolic_->inverse_perm();
  const auto& parent = symbolic_->parent();
  const auto& lp = symbolic_->col_ptr();

  row_idx_.resize(symbolic_->factor_nnz());
  lx_.resize(symbolic_->factor_nnz());
  d_.resize(n);
  std::vector<Scalar> y(n, Scalar{});
  std::vector<int> pattern(n), flag(n), lnz(n, 0);

  for (int k = 0; k < n; ++k) {
    int top = n;
    flag[k] = k;
    const int row = perm[k];
    for (int p = a.row_ptr[row]; p < a.row_ptr[row + 1]; ++p) {
      int i = pinv[a.col[p]];
      if (i > k) continue;
      y[i] += a.val[p];
      int len = 0;
      for (; flag[i] != k; i = parent[i]) {
        pattern[len++] = i;
        flag[i] = k;
      }
      while (len > 0) pattern[--top] = pattern[--len];
    }
    d_[k] = y[k];
    y[k] = Scalar{};
    for (; top < n; ++top) {
      const int i = pattern[top];
      const Scalar yi = y[i];
      y[i] = Scalar{};
      const int p2 = lp[i] + lnz[i];
      for (int p = lp[i]; p < p2; ++p) y[row_idx_[p]] -= lx_[p] * yi;
      const Scalar l_ki = yi / d_[i];
      d_[k] -= l_ki * yi;
      row_idx_[p2] = k;
      lx_[p2] = l_ki;
      ++lnz[i];
    }
    if (d_[k] == Scalar{})
      throw SolverError("LdltFactor: zero pivot at step " + std::to_string(k),
                        std::numeric_limits<double>::infinity());
  }
}

template <class Scalar>
void LdltFactor<Scalar>::solve_in_place(std::span<Scalar> x) const {
  const int n = symbolic_->size();
  if (x.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("LdltFactor::solve: dimension mismatch");
  const auto& perm = symbolic_->perm();
  const auto& lp = symbolic_->col_ptr();
  std::vector<Scalar> w(n);
  for (int k = 0; k < n; ++k) w[k] = x[perm[k]];
  for (int j = 0; j < n; ++j) {
    const Scalar wj = w[j];
    for (int p = lp[j]; p < lp[j + 1]; ++p) w[row_idx_[p]] -= lx_[p] * wj;
  }
  for (int j = 0; j < n; ++j) w[j] /= d_[j];
  for (int j = n - 1; j >= 0; --j) {
    Scalar s = w[j];
    for (int p = lp[j]; p < lp[j + 1]; ++p) s -= lx_[p] * w[row_idx_[p]];
    w[j] = s;
  }
  for (int k = 0; k < n; ++k) x[perm[k]] = w[k];
}

template <class Scalar>
std::vector<Scalar> LdltFactor<Scalar>::solve(std::span<const Scalar> b) const {
  std::vector<Scalar> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

template class LdltFactor<double>;
template class LdltFactor<std::complex<double>>;

}  // namespace fracfem
