#include "pxchain/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <unordered_map>

#include "pxchain/fixtures.hpp"
#include "pxchain/tb_subspace.hpp"

namespace pxchain {
namespace spectral {

namespace {
constexpr double pi = std::numbers::pi;

std::uint64_t rotate_label(std::uint64_t x, int L) {
  const std::uint64_t full = (std::uint64_t{1} << L) - 1;
  return ((x >> 1) | (x << (L - 1))) & full;
}

std::uint64_t reverse_label(std::uint64_t x, int L) {
  std::uint64_t rev = 0;
  for (int b = 0; b < L; ++b)
    if (x & (std::uint64_t{1} << b)) rev |= std::uint64_t{1} << (L - 1 - b);
  return rev;
}

double sign_of(std::uint64_t x) { return (std::popcount(x) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

void walsh_hadamard(std::vector<cplx>& amp) {
  const std::size_t n = amp.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("walsh_hadamard: length must be 2^L");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = amp[j], b = amp[j + h];
        amp[j] = (a + b) * inv_sqrt2;
        amp[j + h] = (a - b) * inv_sqrt2;
      }
    }
  }
}

int staggered_p_of_label(std::uint64_t x, int L) {
  // sigma_i = +1 for label bit 0; staggered sum of bond products
  int p = 0;
  for (int i = 1; i <= L; ++i) {
    const int bi = static_cast<int>((x >> (L - i)) & 1u);
    const int j = (i % L) + 1;
    const int bj = static_cast<int>((x >> (L - j)) & 1u);
    const int bond = (bi == bj) ? 1 : -1;
    p += (i % 2 == 0) ? bond : -bond;
  }
  return p;
}

std::vector<std::pair<int, std::size_t>> staggered_p_spectrum(int L) {
  if (L % 2 != 0) throw std::invalid_argument("staggered_p_spectrum: even L required");
  std::map<int, std::size_t> counts;
  const std::size_t n = std::size_t{1} << L;
  for (std::uint64_t x = 0; x < n; ++x) ++counts[staggered_p_of_label(x, L)];
  return {counts.begin(), counts.end()};
}

SparseOperator xbasis_csr(const TermOperator& h) {
  const std::size_t n = h.dim();
  if (n > (std::size_t{1} << 20)) throw std::length_error("xbasis_csr: dimension guard exceeded");
  std::vector<std::uint64_t> rp(n + 1, 0);
  std::vector<std::uint32_t> cols;
  std::vector<cplx> vals;
  std::vector<std::pair<std::uint32_t, double>> row;
  for (std::uint64_t r = 0; r < n; ++r) {
    row.clear();
    for (const auto& t : h.terms()) {
      const std::uint64_t proj = t.zeros_mask | t.ones_mask;
      const double denom = 1.0 / static_cast<double>(std::uint64_t{1} << std::popcount(proj));
      const double sigma = sign_of(r & t.flip_mask);
      // expand the projector string over all label-flip subsets
      std::uint64_t s = 0;
      for (;;) {
        const double sgn = sign_of(s & t.ones_mask);
        row.emplace_back(static_cast<std::uint32_t>(r ^ s), t.coeff * sgn * denom * sigma);
        if (s == proj) break;
        s = (s - proj) & proj;
      }
    }
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size();) {
      const std::uint32_t c = row[k].first;
      double acc = 0.0;
      while (k < row.size() && row[k].first == c) acc += row[k++].second;
      if (acc != 0.0) {
        cols.push_back(c);
        vals.emplace_back(acc, 0.0);
      }
    }
    rp[r + 1] = cols.size();
  }
  return SparseOperator(n, std::move(rp), std::move(cols), std::move(vals));
}

std::size_t momentum_sector_dimension(int L, int k) {
  cplx acc{0.0, 0.0};
  for (int j = 0; j < L; ++j)
    acc += std::polar(static_cast<double>(std::uint64_t{1} << std::gcd(j, L)), -2.0 * pi * k * j / L);
  const double d = acc.real() / L;
  return static_cast<std::size_t>(std::llround(d));
}

namespace {

struct LabelLookup {
  std::vector<std::int32_t> col;  // -1 if absent
  std::vector<cplx> coeff;
};

LabelLookup build_lookup(const SymmetrizedBasis& basis) {
  LabelLookup lk;
  lk.col.assign(std::size_t{1} << basis.L, -1);
  lk.coeff.assign(std::size_t{1} << basis.L, cplx{0.0, 0.0});
  for (std::size_t a = 0; a < basis.columns.size(); ++a)
    for (const auto& [l, c] : basis.columns[a]) {
      lk.col[l] = static_cast<std::int32_t>(a);
      lk.coeff[l] = c;
    }
  return lk;
}

// Momentum-symmetrized columns over the labels selected by `active`
// (nullptr = all labels).
SymmetrizedBasis momentum_basis(int L, int k, bool x_labels, const std::vector<std::uint8_t>* active) {
  const std::size_t n = std::size_t{1} << L;
  SymmetrizedBasis basis;
  basis.L = L;
  basis.x_labels = x_labels;
  std::vector<std::uint8_t> seen(n, 0);
  for (std::uint64_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    if (active && !(*active)[x]) continue;
    // walk the orbit; x is the representative since labels ascend
    std::uint64_t y = x;
    int period = 0;
    bool rep_ok = true;
    do {
      seen[y] = 1;
      if (y < x) rep_ok = false;
      y = rotate_label(y, L);
      ++period;
    } while (y != x);
    if (!rep_ok) continue;  // cannot happen with ascending scan, kept for clarity
    if ((static_cast<long long>(k) * period) % L != 0) continue;
    std::vector<std::pair<std::uint64_t, cplx>> col;
    col.reserve(static_cast<std::size_t>(period));
    const double norm = 1.0 / std::sqrt(static_cast<double>(period));
    y = x;
    for (int j = 0; j < period; ++j) {
      col.emplace_back(y, std::polar(norm, -2.0 * pi * k * j / L));
      y = rotate_label(y, L);
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.columns.push_back(std::move(col));
  }
  return basis;
}

// Plain label columns (identity symmetrization).
SymmetrizedBasis label_basis(int L, bool x_labels, const std::vector<std::uint8_t>* active) {
  const std::size_t n = std::size_t{1} << L;
  SymmetrizedBasis basis;
  basis.L = L;
  basis.x_labels = x_labels;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (active && !(*active)[x]) continue;
    basis.columns.push_back({{x, cplx{1.0, 0.0}}});
  }
  return basis;
}

// Split a basis into the +-1 inversion eigenspaces and keep the requested one.
SymmetrizedBasis inversion_filter(const SymmetrizedBasis& in, int target) {
  if (target != 1 && target != -1) throw std::invalid_argument("inversion sector must be +-1");
  const int L = in.L;
  LabelLookup lk = build_lookup(in);
  SymmetrizedBasis out;
  out.L = L;
  out.x_labels = in.x_labels;
  std::vector<std::uint8_t> used(in.columns.size(), 0);
  for (std::size_t a = 0; a < in.columns.size(); ++a) {
    if (used[a]) continue;
    // image column under inversion
    const auto& col = in.columns[a];
    const std::uint64_t l0 = col[0].first;
    const std::uint64_t img = reverse_label(l0, L);
    const std::int32_t a2 = lk.col[img];
    if (a2 < 0) throw std::logic_error("inversion_filter: sector not inversion closed");
    // phase eta with I|a> = eta |a2>
    const cplx eta = col[0].second / lk.coeff[img];
    used[a] = 1;
    if (static_cast<std::size_t>(a2) == a) {
      if (std::abs(eta.imag()) > 1e-12 || std::abs(std::abs(eta.real()) - 1.0) > 1e-12)
        throw std::logic_error("inversion_filter: self-paired phase not +-1");
      if ((eta.real() > 0 ? 1 : -1) == target) out.columns.push_back(col);
      continue;
    }
    used[static_cast<std::size_t>(a2)] = 1;
    // v = (|a> + target * I|a>)/sqrt(2), and I|a> = eta |a2>
    std::vector<std::pair<std::uint64_t, cplx>> merged;
    merged.reserve(col.size() * 2);
    const double s = 1.0 / std::sqrt(2.0);
    for (const auto& [l, c] : col) merged.emplace_back(l, s * c);
    for (const auto& [l, c] : in.columns[static_cast<std::size_t>(a2)])
      merged.emplace_back(l, s * static_cast<double>(target) * eta * c);
    std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.columns.push_back(std::move(merged));
  }
  return out;
}

Eigen::MatrixXcd assemble_block(const SparseOperator& hl, const SymmetrizedBasis& basis) {
  const std::size_t d = basis.dim();
  LabelLookup lk = build_lookup(basis);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::unordered_map<std::uint64_t, cplx> y;
  for (std::size_t a = 0; a < d; ++a) {
    y.clear();
    for (const auto& [l, c] : basis.columns[a]) {
      // column l of the Hermitian matrix from row l
      for (std::uint64_t k = hl.row_ptr()[l]; k < hl.row_ptr()[l + 1]; ++k)
        y[hl.cols()[k]] += std::conj(hl.vals()[k]) * c;
    }
    for (const auto& [r, v] : y) {
      const std::int32_t b = lk.col[r];
      if (b < 0) {
        if (std::abs(v) > 1e-9)
          throw std::logic_error("assemble_block: Hamiltonian leaves the sector");
        continue;
      }
      m(b, static_cast<Eigen::Index>(a)) += std::conj(lk.coeff[r]) * v;
    }
  }
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw std::logic_error("assemble_block: block not Hermitian");
  m = 0.5 * (m + m.adjoint()).eval();
  return m;
}

void verify_commutes(const TermOperator& h, const char* name,
                     const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& sym) {
  const std::size_t n = h.dim();
  std::mt19937_64 rng(0x5eed5u);
  std::vector<cplx> v(n), hv(n), shv(n), sv(n), hsv(n);
  for (auto& a : v)
    a = cplx{static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
             static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5};
  h.apply_to(v, hv);
  sym(hv, shv);
  sym(v, sv);
  h.apply_to(sv, hsv);
  double diff = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    diff = std::max(diff, std::abs(hsv[i] - shv[i]));
    scale = std::max(scale, std::abs(hv[i]));
  }
  if (diff > 1e-9 * scale)
    throw std::invalid_argument(std::string("sector_project: Hamiltonian does not commute with ") +
                                name);
}

}  // namespace

SectorBlock sector_project(const TermOperator& h, const SectorSpec& spec, std::size_t max_block_dim) {
  const int L = h.sites();
  const std::size_t n = h.dim();

  if (spec.momentum && (*spec.momentum < 0 || *spec.momentum >= L))
    throw std::invalid_argument("sector_project: momentum index outside 0..L-1");
  if (spec.inversion && *spec.inversion != 1 && *spec.inversion != -1)
    throw std::invalid_argument("sector_project: inversion must be +-1");
  if (spec.momentum && spec.inversion && *spec.momentum != 0 && 2 * *spec.momentum != L)
    throw std::invalid_argument(
        "sector_project: inversion resolves only the k = 0 and k = L/2 momentum sectors");
  if (spec.p_value && spec.momentum && *spec.p_value != 0)
    throw std::invalid_argument(
        "sector_project: translation connects p and -p; momentum resolution needs p = 0");

  // numeric symmetry verification on the full space
  if (spec.momentum)
    verify_commutes(h, "translation", [L, n](const std::vector<cplx>& in, std::vector<cplx>& out) {
      out.resize(n);
      for (std::uint64_t z = 0; z < n; ++z) out[rotate_label(z, L)] = in[z];
    });
  if (spec.inversion)
    verify_commutes(h, "inversion", [L, n](const std::vector<cplx>& in, std::vector<cplx>& out) {
      out.resize(n);
      for (std::uint64_t z = 0; z < n; ++z) out[reverse_label(z, L)] = in[z];
    });
  TermOperator p_op;
  if (spec.p_value) {
    if (L % 2 != 0)
      throw std::invalid_argument("sector_project: staggered-P sectors need even L");
    p_op = staggered_p_terms(ChainGeometry(L, Boundary::periodic));
    verify_commutes(h, "staggered P", [&p_op](const std::vector<cplx>& in, std::vector<cplx>& out) {
      out.resize(in.size());
      p_op.apply_to(in, out);
    });
  }

  SymmetrizedBasis basis;
  SparseOperator hl;
  if (spec.p_value) {
    // X-product labels diagonalize P exactly; the sector is their subset.
    std::vector<std::uint8_t> active(n, 0);
    std::size_t count = 0;
    for (std::uint64_t x = 0; x < n; ++x)
      if (staggered_p_of_label(x, L) == *spec.p_value) {
        active[x] = 1;
        ++count;
      }
    if (count == 0) throw std::invalid_argument("sector_project: empty staggered-P sector");
    if (spec.momentum)
      basis = momentum_basis(L, *spec.momentum, true, &active);
    else
      basis = label_basis(L, true, &active);
    if (spec.inversion) basis = inversion_filter(basis, *spec.inversion);
    hl = xbasis_csr(h);
  } else if (spec.momentum) {
    basis = momentum_basis(L, *spec.momentum, false, nullptr);
    if (spec.inversion) basis = inversion_filter(basis, *spec.inversion);
    hl = h.to_sparse();
  } else if (spec.inversion) {
    basis = inversion_filter(label_basis(L, false, nullptr), *spec.inversion);
    hl = h.to_sparse();
  } else {
    basis = label_basis(L, false, nullptr);
    hl = h.to_sparse();
  }

  if (basis.dim() > max_block_dim)
    throw std::length_error("sector_project: block dimension " + std::to_string(basis.dim()) +
                            " exceeds the dense guard");
  SectorBlock block;
  block.h = assemble_block(hl, basis);
  block.basis = std::move(basis);
  block.label = spec;
  return block;
}

StateVector embed_in_full_space(const SymmetrizedBasis& basis, const Eigen::VectorXcd& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != basis.dim())
    throw std::invalid_argument("embed_in_full_space: coefficient length mismatch");
  StateVector v(basis.L);
  for (std::size_t a = 0; a < basis.dim(); ++a)
    for (const auto& [l, c] : basis.columns[a]) v.amp[l] += coeffs[static_cast<Eigen::Index>(a)] * c;
  if (basis.x_labels) walsh_hadamard(v.amp);
  return v;
}

RStats r_statistics(std::vector<double> eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  std::vector<double> levels;
  for (double e : eigenvalues) {
    if (levels.empty() || e - levels.back() > 1e-10) levels.push_back(e);
  }
  if (levels.size() < 10) throw std::invalid_argument("r_statistics: need at least 10 distinct levels");
  RStats out;
  double acc = 0.0;
  for (std::size_t j = 1; j + 1 < levels.size(); ++j) {
    const double s0 = levels[j] - levels[j - 1];
    const double s1 = levels[j + 1] - levels[j];
    const double r = std::min(s0, s1) / std::max(s0, s1);
    out.r.push_back(r);
    acc += r;
  }
  out.mean = acc / static_cast<double>(out.r.size());
  return out;
}

UnfoldResult unfold_and_histogram(std::vector<double> eigenvalues, int poly_degree, int bins) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  const std::size_t n = eigenvalues.size();
  if (n < 100) throw std::invalid_argument("unfold_and_histogram: need at least 100 levels");
  const std::size_t edge = n / 20;  // 5% per edge
  const double lo = eigenvalues.front(), hi = eigenvalues.back();
  if (hi - lo < 1e-12) throw std::invalid_argument("unfold_and_histogram: degenerate spectrum");

  // polynomial fit of the integrated density on standardized energies
  const int d = poly_degree;
  Eigen::MatrixXd vander(n, d + 1);
  Eigen::VectorXd staircase(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.0 * (eigenvalues[i] - lo) / (hi - lo) - 1.0;
    double px = 1.0;
    for (int j = 0; j <= d; ++j) {
      vander(static_cast<Eigen::Index>(i), j) = px;
      px *= x;
    }
    staircase(static_cast<Eigen::Index>(i)) = static_cast<double>(i) + 0.5;
  }
  Eigen::VectorXd coef = vander.colPivHouseholderQr().solve(staircase);

  UnfoldResult out;
  std::vector<double> unfolded;
  for (std::size_t i = edge; i < n - edge; ++i) {
    const double x = 2.0 * (eigenvalues[i] - lo) / (hi - lo) - 1.0;
    double px = 1.0, val = 0.0;
    for (int j = 0; j <= d; ++j) {
      val += coef(j) * px;
      px *= x;
    }
    unfolded.push_back(val);
  }
  for (std::size_t i = 1; i < unfolded.size(); ++i) out.spacings.push_back(unfolded[i] - unfolded[i - 1]);
  if (out.spacings.empty()) throw std::invalid_argument("unfold_and_histogram: too few interior levels");
  out.mean_spacing = std::accumulate(out.spacings.begin(), out.spacings.end(), 0.0) /
                     static_cast<double>(out.spacings.size());

  const double smax = 4.0;
  out.bin_centers.resize(static_cast<std::size_t>(bins));
  out.density.assign(static_cast<std::size_t>(bins), 0.0);
  const double width = smax / bins;
  for (int b = 0; b < bins; ++b) out.bin_centers[static_cast<std::size_t>(b)] = (b + 0.5) * width;
  std::size_t inside = 0;
  for (double s : out.spacings) {
    const int b = static_cast<int>(s / width);
    if (b >= 0 && b < bins) {
      out.density[static_cast<std::size_t>(b)] += 1.0;
      ++inside;
    }
  }
  if (inside > 0)
    for (auto& v : out.density) v /= static_cast<double>(out.spacings.size()) * width;
  return out;
}

double ks_distance_to_wigner(std::vector<double> spacings) {
  if (spacings.empty()) throw std::invalid_argument("ks_distance_to_wigner: empty sample");
  std::sort(spacings.begin(), spacings.end());
  const double n = static_cast<double>(spacings.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    const double s = spacings[i];
    const double cdf = 1.0 - std::exp(-pi * s * s / 4.0);
    dist = std::max(dist, std::abs((i + 1) / n - cdf));
    dist = std::max(dist, std::abs(i / n - cdf));
  }
  return dist;
}

std::vector<std::pair<double, double>> eigen_entropy_scatter(const SparseOperator& h, int L,
                                                             const SiteRegion& cut,
                                                             std::size_t max_dim) {
  if (h.dim() > max_dim) throw std::length_error("eigen_entropy_scatter: memory guard exceeded");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(max_dim));
  std::vector<std::pair<double, double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    StateVector v(L);
    for (std::size_t z = 0; z < v.dim(); ++z) v.amp[z] = es.eigenvectors()(static_cast<Eigen::Index>(z), i);
    out.emplace_back(es.eigenvalues()[i], entanglement_entropy(v, cut));
  }
  return out;
}

std::vector<std::pair<double, double>> eigen_entropy_scatter(const SectorBlock& block,
                                                             const SiteRegion& cut) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block.h);
  std::vector<std::pair<double, double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    StateVector v = embed_in_full_space(block.basis, es.eigenvectors().col(i));
    const double nrm = v.norm();
    v *= 1.0 / nrm;
    out.emplace_back(es.eigenvalues()[i], entanglement_entropy(v, cut));
  }
  return out;
}

std::vector<std::pair<double, double>> overlap_spectrum(const StateVector& state,
                                                        const SparseOperator& h,
                                                        std::size_t max_dim) {
  if (h.dim() > max_dim) throw std::length_error("overlap_spectrum: memory guard exceeded");
  if (h.dim() != state.dim()) throw std::invalid_argument("overlap_spectrum: dimension mismatch");
  if (std::abs(state.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("overlap_spectrum: state not normalized");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(max_dim));
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(state.dim()));
  for (std::size_t z = 0; z < state.dim(); ++z) psi[static_cast<Eigen::Index>(z)] = state.amp[z];
  Eigen::VectorXcd ov = es.eigenvectors().adjoint() * psi;
  // Within a degenerate cluster the eigenbasis is arbitrary; align it with
  // the probe state so the reported per-level weights are basis independent
  // (the cluster weight lands on a single representative).
  const Eigen::Index n = es.eigenvalues().size();
  std::vector<std::pair<double, double>> out;
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && es.eigenvalues()[j] - es.eigenvalues()[j - 1] < 1e-9) ++j;
    double cluster = 0.0;
    for (Eigen::Index k = i; k < j; ++k) cluster += std::norm(ov[k]);
    out.emplace_back(es.eigenvalues()[i], cluster);
    for (Eigen::Index k = i + 1; k < j; ++k) out.emplace_back(es.eigenvalues()[k], 0.0);
    i = j;
  }
  return out;
}

ZeroModeCensus zero_mode_census(const SparseOperator& h, int L, double tol, std::size_t max_dim) {
  if (h.dim() > max_dim) throw std::length_error("zero_mode_census: memory guard exceeded");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(max_dim));
  ZeroModeCensus out;
  std::vector<Eigen::Index> zero_cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i]) < tol) zero_cols.push_back(i);
  out.kernel_dim = static_cast<int>(zero_cols.size());
  out.kernel.resize(static_cast<Eigen::Index>(h.dim()), static_cast<Eigen::Index>(zero_cols.size()));
  for (std::size_t j = 0; j < zero_cols.size(); ++j)
    out.kernel.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(zero_cols[j]);

  std::vector<StateVector> candidates;
  candidates.push_back(vacuum_state(L));
  if (L % 2 == 0) {
    tb::TBRing ring(L);
    candidates.push_back(tb::momentum_state(ring, L / 2));
    candidates.push_back(tb::momentum_state(ring, -L / 2));
  }
  if (L % 4 == 0)
    for (auto& s : fixtures::period4_zero_modes(L)) candidates.push_back(std::move(s));
  for (const auto& c : candidates) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(c.dim()));
    for (std::size_t z = 0; z < c.dim(); ++z) v[static_cast<Eigen::Index>(z)] = c.amp[z];
    const Eigen::VectorXcd res = v - out.kernel * (out.kernel.adjoint() * v);
    out.candidate_defects.push_back(res.norm());
  }
  return out;
}

double weighted_mean_r(const std::vector<std::pair<double, std::size_t>>& sector_means) {
  double num = 0.0, den = 0.0;
  for (const auto& [mean, size] : sector_means) {
    num += mean * static_cast<double>(size);
    den += static_cast<double>(size);
  }
  if (den == 0.0) throw std::invalid_argument("weighted_mean_r: empty input");
  return num / den;
}

}  // namespace spectral
}  // namespace pxchain
