#include "pxchain/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pxchain {

SparseOperator::SparseOperator(std::size_t dim, std::vector<std::uint64_t> row_ptr,
                               std::vector<std::uint32_t> cols, std::vector<cplx> vals)
    : dim_(dim), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), vals_(std::move(vals)) {
  if (row_ptr_.size() != dim_ + 1 || cols_.size() != vals_.size() || row_ptr_.back() != vals_.size())
    throw std::invalid_argument("SparseOperator: inconsistent CSR arrays");
}

SparseOperator SparseOperator::from_coo(
    std::size_t dim, std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> coo,
    double drop_tol) {
  std::sort(coo.begin(), coo.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                            : std::get<1>(a) < std::get<1>(b);
  });
  std::vector<std::uint64_t> rp(dim + 1, 0);
  std::vector<std::uint32_t> cols;
  std::vector<cplx> vals;
  cols.reserve(coo.size());
  vals.reserve(coo.size());
  std::size_t i = 0;
  while (i < coo.size()) {
    auto [r, c, v] = coo[i];
    cplx acc = v;
    std::size_t j = i + 1;
    while (j < coo.size() && std::get<0>(coo[j]) == r && std::get<1>(coo[j]) == c)
      acc += std::get<2>(coo[j++]);
    if (r >= dim || c >= dim) throw std::out_of_range("from_coo: entry outside matrix");
    if (std::abs(acc) > drop_tol) {
      cols.push_back(c);
      vals.push_back(acc);
      ++rp[r + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < dim; ++r) rp[r + 1] += rp[r];
  return SparseOperator(dim, std::move(rp), std::move(cols), std::move(vals));
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  std::vector<std::uint64_t> rp(dim + 1);
  std::vector<std::uint32_t> cols(dim);
  std::vector<cplx> vals(dim, cplx{1.0, 0.0});
  for (std::size_t i = 0; i <= dim; ++i) rp[i] = i;
  for (std::size_t i = 0; i < dim; ++i) cols[i] = static_cast<std::uint32_t>(i);
  return SparseOperator(dim, std::move(rp), std::move(cols), std::move(vals));
}

void SparseOperator::apply_to(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != dim_ || out.size() != dim_)
    throw std::invalid_argument("SparseOperator::apply_to: dimension mismatch");
  for (std::size_t r = 0; r < dim_; ++r) {
    cplx acc{0.0, 0.0};
    for (std::uint64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += vals_[k] * in[cols_[k]];
    out[r] = acc;
  }
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> coo;
  coo.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::uint64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      coo.emplace_back(cols_[k], static_cast<std::uint32_t>(r), std::conj(vals_[k]));
  return from_coo(dim_, std::move(coo));
}

SparseOperator SparseOperator::scaled(cplx c) const {
  SparseOperator out = *this;
  for (auto& v : out.vals_) v *= c;
  return out;
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& v : vals_) m = std::max(m, std::abs(v));
  return m;
}

double SparseOperator::hermiticity_defect() const { return add(*this, this->adjoint(), 1.0, -1.0).max_abs(); }

Eigen::MatrixXcd SparseOperator::to_dense(std::size_t max_dim) const {
  if (dim_ > max_dim) throw std::length_error("SparseOperator::to_dense: dimension guard exceeded");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::uint64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) += vals_[k];
  return m;
}

cplx SparseOperator::coeff(std::uint32_t row, std::uint32_t col) const {
  for (std::uint64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
    if (cols_[k] == col) return vals_[k];
  return cplx{0.0, 0.0};
}

SparseOperator add(const SparseOperator& a, const SparseOperator& b, cplx ca, cplx cb) {
  if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
  std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> coo;
  coo.reserve(a.nnz() + b.nnz());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::uint64_t k = a.row_ptr_[r]; k < a.row_ptr_[r + 1]; ++k)
      coo.emplace_back(static_cast<std::uint32_t>(r), a.cols_[k], ca * a.vals_[k]);
  for (std::size_t r = 0; r < b.dim(); ++r)
    for (std::uint64_t k = b.row_ptr_[r]; k < b.row_ptr_[r + 1]; ++k)
      coo.emplace_back(static_cast<std::uint32_t>(r), b.cols_[k], cb * b.vals_[k]);
  return SparseOperator::from_coo(a.dim(), std::move(coo));
}

SparseOperator matmul(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matmul: dimension mismatch");
  std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> coo;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    std::map<std::uint32_t, cplx> row;
    for (std::uint64_t k = a.row_ptr_[r]; k < a.row_ptr_[r + 1]; ++k) {
      const std::uint32_t m = a.cols_[k];
      const cplx av = a.vals_[k];
      for (std::uint64_t j = b.row_ptr_[m]; j < b.row_ptr_[m + 1]; ++j) row[b.cols_[j]] += av * b.vals_[j];
    }
    for (const auto& [c, v] : row) coo.emplace_back(static_cast<std::uint32_t>(r), c, v);
  }
  return SparseOperator::from_coo(a.dim(), std::move(coo));
}

double commutator_max(const SparseOperator& a, const SparseOperator& b) {
  return add(matmul(a, b), matmul(b, a), 1.0, -1.0).max_abs();
}

double anticommutator_max(const SparseOperator& a, const SparseOperator& b) {
  return add(matmul(a, b), matmul(b, a), 1.0, 1.0).max_abs();
}

StateVector apply(const LinearOperator& op, const StateVector& v) {
  if (op.dim() != v.dim()) throw std::invalid_argument("apply: dimension mismatch");
  StateVector out(v.L);
  op.apply_to(v.amp, out.amp);
  return out;
}

TermOperator::TermOperator(int L, std::vector<ProjFlipTerm> terms) : L_(L), terms_(std::move(terms)) {
  const std::uint64_t full = (std::uint64_t{1} << L_) - 1;
  bool any_diag = false;
  for (const auto& t : terms_) {
    if ((t.zeros_mask | t.ones_mask | t.flip_mask) & ~full)
      throw std::invalid_argument("TermOperator: term mask outside chain");
    if ((t.zeros_mask & t.ones_mask) || (t.flip_mask & (t.zeros_mask | t.ones_mask)))
      throw std::invalid_argument("TermOperator: overlapping site masks");
    if (t.flip_mask == 0) any_diag = true;
  }
  if (any_diag) {
    diag_.assign(dim(), 0.0);
    for (const auto& t : terms_) {
      if (t.flip_mask != 0) continue;
      for (std::uint64_t s = 0; s < dim(); ++s)
        if ((s & t.zeros_mask) == 0 && (s & t.ones_mask) == t.ones_mask) diag_[s] += t.coeff;
    }
  }
  for (const auto& t : terms_)
    if (t.flip_mask != 0) offdiag_.push_back(t);
}

void TermOperator::apply_to(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != dim() || out.size() != dim())
    throw std::invalid_argument("TermOperator::apply_to: dimension mismatch");
  const std::size_t n = dim();
  if (diag_.empty())
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
  else
    for (std::size_t i = 0; i < n; ++i) out[i] = diag_[i] * in[i];
  // Projector sites are disjoint from flip sites, so the conditions can be
  // tested on the output index directly.
  for (const auto& t : offdiag_) {
    const std::uint64_t z = t.zeros_mask, o = t.ones_mask, f = t.flip_mask;
    const double c = t.coeff;
    for (std::size_t i = 0; i < n; ++i) {
      if ((i & z) == 0 && (i & o) == o) out[i] += c * in[i ^ f];
    }
  }
}

SparseOperator TermOperator::to_sparse(std::size_t max_dim) const {
  if (dim() > max_dim) throw std::length_error("TermOperator::to_sparse: dimension guard exceeded");
  const std::size_t n = dim();
  std::vector<std::uint64_t> rp(n + 1, 0);
  std::vector<std::uint32_t> cols;
  std::vector<cplx> vals;
  std::vector<std::pair<std::uint32_t, double>> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    if (!diag_.empty() && diag_[i] != 0.0) row.emplace_back(static_cast<std::uint32_t>(i), diag_[i]);
    for (const auto& t : offdiag_)
      if ((i & t.zeros_mask) == 0 && (i & t.ones_mask) == t.ones_mask)
        row.emplace_back(static_cast<std::uint32_t>(i ^ t.flip_mask), t.coeff);
    std::sort(row.begin(), row.end());
    std::size_t w = 0;
    for (std::size_t k = 0; k < row.size();) {
      std::uint32_t c = row[k].first;
      double acc = 0.0;
      while (k < row.size() && row[k].first == c) acc += row[k++].second;
      if (acc != 0.0) {
        row[w++] = {c, acc};
      }
    }
    row.resize(w);
    for (const auto& [c, v] : row) {
      cols.push_back(c);
      vals.emplace_back(v, 0.0);
    }
    rp[i + 1] = rp[i] + row.size();
  }
  return SparseOperator(n, std::move(rp), std::move(cols), std::move(vals));
}

}  // namespace pxchain
