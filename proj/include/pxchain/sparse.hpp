#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pxchain/types.hpp"

namespace pxchain {

/// Anything that can act on a dense complex vector.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t dim() const = 0;
  virtual void apply_to(std::span<const cplx> in, std::span<cplx> out) const = 0;
};

/// Hermitian operator in compressed sparse row form. Immutable after
/// construction; shared read-only between threads.
class SparseOperator : public LinearOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t dim, std::vector<std::uint64_t> row_ptr,
                 std::vector<std::uint32_t> cols, std::vector<cplx> vals);

  /// Build from unsorted coordinate triplets; duplicates are summed,
  /// entries below drop_tol are discarded.
  static SparseOperator from_coo(std::size_t dim,
                                 std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> coo,
                                 double drop_tol = 0.0);

  static SparseOperator identity(std::size_t dim);

  std::size_t dim() const override { return dim_; }
  std::size_t nnz() const { return vals_.size(); }

  const std::vector<std::uint64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& cols() const { return cols_; }
  const std::vector<cplx>& vals() const { return vals_; }

  void apply_to(std::span<const cplx> in, std::span<cplx> out) const override;

  SparseOperator adjoint() const;
  SparseOperator scaled(cplx c) const;

  /// Largest |entry| of the matrix.
  double max_abs() const;

  /// max |(O - O^dagger)_{ij}|.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() < tol; }

  Eigen::MatrixXcd to_dense(std::size_t max_dim = 1u << 14) const;

  cplx coeff(std::uint32_t row, std::uint32_t col) const;

  friend SparseOperator add(const SparseOperator& a, const SparseOperator& b, cplx ca, cplx cb);
  friend SparseOperator matmul(const SparseOperator& a, const SparseOperator& b);

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<cplx> vals_;
};

SparseOperator add(const SparseOperator& a, const SparseOperator& b, cplx ca = 1.0, cplx cb = 1.0);
SparseOperator matmul(const SparseOperator& a, const SparseOperator& b);

/// max |(AB - BA)_{ij}|
double commutator_max(const SparseOperator& a, const SparseOperator& b);
/// max |(AB + BA)_{ij}|
double anticommutator_max(const SparseOperator& a, const SparseOperator& b);

/// Exact sparse matrix-vector product; the input is not modified.
StateVector apply(const LinearOperator& op, const StateVector& v);

/// One local term of a spin Hamiltonian: coeff * (projectors onto |0> on
/// `zeros_mask` sites) * (projectors onto |1> on `ones_mask` sites) * (X on
/// `flip_mask` sites). Projector and flip site sets are disjoint, so the
/// matrix element condition can be tested on either side of the flip.
struct ProjFlipTerm {
  double coeff = 0.0;
  std::uint64_t zeros_mask = 0;
  std::uint64_t ones_mask = 0;
  std::uint64_t flip_mask = 0;
};

/// Hamiltonian as a list of local terms plus the chain length. Supports
/// matrix-free application, which is what makes L ~ 24 dynamics affordable.
class TermOperator : public LinearOperator {
 public:
  TermOperator() = default;
  TermOperator(int L, std::vector<ProjFlipTerm> terms);

  int sites() const { return L_; }
  std::size_t dim() const override { return std::size_t{1} << L_; }
  const std::vector<ProjFlipTerm>& terms() const { return terms_; }

  void apply_to(std::span<const cplx> in, std::span<cplx> out) const override;

  /// Materialize as CSR. Guarded: refuses above max_dim.
  SparseOperator to_sparse(std::size_t max_dim = 1u << 22) const;

 private:
  int L_ = 0;
  std::vector<ProjFlipTerm> terms_;
  std::vector<ProjFlipTerm> offdiag_;
  std::vector<double> diag_;  // accumulated diagonal, empty if none
};

}  // namespace pxchain
