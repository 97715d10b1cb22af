#pragma once

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracfem/sparse.hpp"

namespace fracfem {

/// Raised when a linear solve breaks down or misses its residual target.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

enum class Ordering { natural, amd };

/// Fill-reducing permutation, elimination tree and column counts of the
/// factor L in A = L D L^T. Depends only on the sparsity pattern, so one
/// analysis serves every matrix sharing that pattern.
class SymbolicLdlt {
 public:
  template <class Scalar>
  explicit SymbolicLdlt(const CsrMatrix<Scalar>& pattern,
                        Ordering ordering = Ordering::amd)
      : SymbolicLdlt(pattern.n, pattern.row_ptr, pattern.col, ordering) {}

  SymbolicLdlt(int n, std::span<const int> row_ptr, std::span<const int> col,
               Ordering ordering);

  int size() const { return n_; }
  std::size_t factor_nnz() const { return static_cast<std::size_t>(col_ptr_.back()); }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<int>& inverse_perm() const { return pinv_; }
  const std::vector<int>& parent() const { return parent_; }
  const std::vector<int>& col_ptr() const { return col_ptr_; }

 private:
  int n_ = 0;
  std::vector<int> perm_;  // new -> old
  std::vector<int> pinv_;  // old -> new
  std::vector<int> parent_;
  std::vector<int> col_ptr_;
};

/// Numeric L D L^T factorization without pivoting and without conjugation.
/// For complex Scalar this factors complex symmetric (not Hermitian)
/// matrices, e.g. w M + S with |arg w| < pi.
template <class Scalar>
class LdltFactor {
 public:
  LdltFactor(std::shared_ptr<const SymbolicLdlt> symbolic,
             const CsrMatrix<Scalar>& a);

  void solve_in_place(std::span<Scalar> x) const;
  std::vector<Scalar> solve(std::span<const Scalar> b) const;
  int size() const { return symbolic_->size(); }

 private:
  std::shared_ptr<const SymbolicLdlt> symbolic_;
  std::vector<int> row_idx_;
  std::vector<Scalar> lx_;
  std::vector<Scalar> d_;
};

extern template class LdltFactor<double>;
extern template class LdltFactor<std::complex<double>>;

}  // namespace fracfem
